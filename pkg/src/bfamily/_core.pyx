# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled solver backend.

Hot kernel of the threshold computation: every J(b, beta) evaluation reduces
to one or two symmetric positive-definite tridiagonal solves, and a single
threshold sweep performs tens of thousands of them.
"""

import numpy as np

from numpy.linalg import LinAlgError

NAME = "cython"


def spd_solve(double[::1] diag, double[::1] off, double[::1] rhs):
    """Solve the SPD tridiagonal system via LDL^T factorization.

    ``diag`` (n,) main diagonal, ``off`` (n-1,) off-diagonal, ``rhs`` (n,).
    Raises ``numpy.linalg.LinAlgError`` on a non-positive pivot, which for a
    symmetric tridiagonal matrix is equivalent to not being positive definite.
    """
    cdef Py_ssize_t n = diag.shape[0]
    if off.shape[0] != (n - 1 if n > 0 else 0) or rhs.shape[0] != n:
        raise ValueError("inconsistent system dimensions")
    if n == 0:
        return np.empty(0)

    x_arr = np.empty(n)
    piv_arr = np.empty(n)
    l_arr = np.empty(n - 1 if n > 1 else 0)
    cdef double[::1] x = x_arr
    cdef double[::1] piv = piv_arr
    cdef double[::1] l = l_arr
    cdef Py_ssize_t i
    cdef double d

    d = diag[0]
    if not d > 0.0:
        raise LinAlgError("leading minor 1 not positive definite")
    piv[0] = d
    for i in range(1, n):
        l[i - 1] = off[i - 1] / piv[i - 1]
        d = diag[i] - off[i - 1] * l[i - 1]
        if not d > 0.0:
            raise LinAlgError("leading minor %d not positive definite" % (i + 1))
        piv[i] = d

    # L z = rhs, then D y = z, then L^T x = y (z and y stored in x).
    x[0] = rhs[0]
    for i in range(1, n):
        x[i] = rhs[i] - l[i - 1] * x[i - 1]
    for i in range(n):
        x[i] = x[i] / piv[i]
    for i in range(n - 2, -1, -1):
        x[i] = x[i] - l[i] * x[i + 1]
    return x_arr
