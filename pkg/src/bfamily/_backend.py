"""Select the tridiagonal solver backend at import time.

The compiled extension is preferred when built; the scipy-backed pure-Python
module is the fallback.  ``BFAMILY_BACKEND=python`` or ``=cython`` forces a
choice (forcing ``cython`` raises if the extension was not built).
"""

import os

_forced = os.environ.get("BFAMILY_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _core_py as _impl
elif _forced == "cython":
    from . import _core as _impl  # type: ignore[no-redef]
elif _forced:
    raise ImportError(f"BFAMILY_BACKEND must be 'python' or 'cython', got {_forced!r}")
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _core_py as _impl  # type: ignore[no-redef]

spd_solve = _impl.spd_solve
BACKEND = _impl.NAME


def backend_name() -> str:
    """Name of the active solver backend ('cython' or 'python')."""
    return BACKEND
