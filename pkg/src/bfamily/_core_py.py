"""Pure-Python solver backend (LAPACK via scipy).

Same contract as the compiled ``bfamily._core`` extension; selected by
``bfamily._backend`` when the extension is unavailable or when
``BFAMILY_BACKEND=python`` is set.
"""

import numpy as np
from scipy.linalg import solveh_banded

NAME = "python"


def spd_solve(diag, off, rhs):
    """Solve the symmetric positive-definite tridiagonal system.

    ``diag`` (n,) is the main diagonal, ``off`` (n-1,) the first off-diagonal,
    ``rhs`` (n,) the right-hand side.  Raises ``numpy.linalg.LinAlgError``
    when the matrix is not positive definite.
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off = np.ascontiguousarray(off, dtype=np.float64)
    rhs = np.ascontiguousarray(rhs, dtype=np.float64)
    n = diag.shape[0]
    if off.shape[0] != max(n - 1, 0) or rhs.shape[0] != n:
        raise ValueError("inconsistent system dimensions")
    if n == 1:
        if not diag[0] > 0.0:
            raise np.linalg.LinAlgError("leading minor 1 not positive definite")
        return rhs / diag
    ab = np.zeros((2, n))
    ab[0, 1:] = off
    ab[1, :] = diag
    try:
        return solveh_banded(ab, rhs, lower=False, check_finite=False)
    except np.linalg.LinAlgError:
        raise
    except ValueError as exc:  # scipy wraps some LAPACK failures in ValueError
        raise np.linalg.LinAlgError(str(exc)) from exc
