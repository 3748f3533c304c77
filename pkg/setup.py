import os

from setuptools import Extension, setup

# The compiled kernel is optional: without Cython (or with BFAMILY_NO_EXT=1)
# the package installs pure and falls back to the scipy-backed solver.
ext_modules = []
if not os.environ.get("BFAMILY_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "bfamily._core",
                    ["src/bfamily/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
