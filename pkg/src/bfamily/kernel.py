"""Fundamental solution of 1 - d^2/dx^2 on the unit torus and its weights.

The kernel is p(x) = cosh(x - [x] - 1/2) / (2 sinh(1/2)); the weighted
variants w = p + beta*p' stay nonnegative exactly for |beta| <= (e+1)/(e-1).
Convolutions with p and p' are done spectrally: on the period-1 torus the
Fourier multipliers are 1/(1+(2*pi*k)^2) and 2*pi*i*k/(1+(2*pi*k)^2).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BetaOutOfRange, GridTooSmall

#: Largest |beta| for which p + beta*p' is nonnegative on the torus.
BETA_MAX = (math.e + 1.0) / (math.e - 1.0)

_TWO_SINH_HALF = 2.0 * math.sinh(0.5)
_BETA_TOL = 1e-12


def eval_p(x):
    """Kernel p at torus coordinate(s) x (reduced mod 1)."""
    x = np.asarray(x, dtype=np.float64)
    y = x - np.floor(x) - 0.5
    return np.cosh(y) / _TWO_SINH_HALF


def eval_dp(x):
    """Classical derivative p' at x, taking the branch on (0, 1).

    p' jumps at integer points; this returns the right-sided branch there
    (the value of the derivative extended continuously from (0, 1)).
    """
    x = np.asarray(x, dtype=np.float64)
    y = x - np.floor(x) - 0.5
    return np.sinh(y) / _TWO_SINH_HALF


def _check_beta(beta: float) -> None:
    if not abs(beta) <= BETA_MAX + _BETA_TOL:
        raise BetaOutOfRange(
            f"|beta| = {abs(beta)} exceeds (e+1)/(e-1) = {BETA_MAX}; "
            "the weight p + beta*p' would be negative somewhere"
        )


def eval_w(beta: float, x):
    """Weight w = p + beta*p' at torus coordinate(s) x in (0, 1)."""
    _check_beta(beta)
    x = np.asarray(x, dtype=np.float64)
    y = x - np.floor(x) - 0.5
    return (np.cosh(y) + beta * np.sinh(y)) / _TWO_SINH_HALF


@dataclass(frozen=True)
class WeightProfile:
    """The weight w = p + beta*p' on (0, 1), with |beta| <= (e+1)/(e-1).

    The profile integrates to 1 regardless of beta, and degenerates (vanishes
    at one endpoint) exactly at beta = +-(e+1)/(e-1).
    """

    beta: float

    def __post_init__(self):
        _check_beta(self.beta)

    def __call__(self, x):
        return eval_w(self.beta, x)

    def on_unit_interval(self, x):
        """w on [0, 1] as the continuous extension from the open interval.

        Unlike the mod-1 evaluation this distinguishes w(1-) from w(0+),
        which is what boundary-value solvers on (0, 1) need.
        """
        y = np.asarray(x, dtype=np.float64) - 0.5
        return (np.cosh(y) + self.beta * np.sinh(y)) / _TWO_SINH_HALF

    @property
    def degenerate(self) -> bool:
        """True when the weight vanishes at an endpoint (|beta| at the limit)."""
        return abs(abs(self.beta) - BETA_MAX) <= 1e-9


@dataclass(frozen=True)
class SpectralMultiplier:
    """Fourier symbol of convolution with p (and with p') at wavenumber k.

    ``m_p`` multiplies the k-th coefficient for p*f; the multiplier for
    (p')*f is purely imaginary with imaginary part ``m_dp``.
    """

    k: int
    m_p: float
    m_dp: float

    @classmethod
    def for_mode(cls, k: int) -> "SpectralMultiplier":
        denom = 1.0 + (2.0 * math.pi * k) ** 2
        return cls(k=k, m_p=1.0 / denom, m_dp=2.0 * math.pi * k / denom)


def p_multiplier(n: int) -> np.ndarray:
    """rfft-ordered multiplier array for convolution with p on an n-grid."""
    k = np.arange(n // 2 + 1, dtype=np.float64)
    return 1.0 / (1.0 + (2.0 * np.pi * k) ** 2)


def dp_multiplier(n: int) -> np.ndarray:
    """rfft-ordered (complex) multiplier array for convolution with p'."""
    k = np.arange(n // 2 + 1, dtype=np.float64)
    return 2.0j * np.pi * k / (1.0 + (2.0 * np.pi * k) ** 2)


def _check_grid(f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=np.float64)
    if f.ndim != 1 or f.shape[0] < 8:
        raise GridTooSmall("need a 1-d grid field with at least 8 samples")
    return f


def convolve_p(f):
    """Periodic convolution p*f of a field sampled on a uniform grid."""
    f = _check_grid(f)
    n = f.shape[0]
    return np.fft.irfft(np.fft.rfft(f) * p_multiplier(n), n)


def convolve_dp(f):
    """Periodic convolution (p')*f of a field sampled on a uniform grid."""
    f = _check_grid(f)
    n = f.shape[0]
    return np.fft.irfft(np.fft.rfft(f) * dp_multiplier(n), n)
