"""The local-in-space blow-up threshold beta_b.

beta_b is the infimum of beta > 0 with

    F(b, beta) = beta^2 + (2/(b-1)) * (J(b, beta) - b/2)  >=  0.

For |beta| beyond the weight bracket (e+1)/(e-1), J = -infinity and F with
it, so no such beta can enter the infimum set: the search bracket
[0, (e+1)/(e-1)] is exhaustive.

The infimum set is not assumed to be an interval.  The scan locates the
first sign change, bisection certifies it to the requested width, and the
remaining scan values are checked for a later sign reversal, which is
reported as a warning rather than silently ignored.  Near b = 1 the factor
2/(b-1) amplifies the numerical error of J; that error is propagated into an
F error band and a crossing that cannot be certified against the band is
returned as UNDETERMINED instead of being rounded to a verdict.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BOutOfRange
from .estimates import EstimateResult, estimate1, estimate2, estimate3
from .kernel import BETA_MAX
from .variational import compute_j

_DEFAULT_TOL = 1e-4
_DEFAULT_SCAN = 256
_DEFAULT_N = 4096

STATUS_FINITE = "FINITE"
STATUS_INFINITE = "INFINITE_IN_BRACKET"
STATUS_UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class BetaBResult:
    """Outcome of the threshold search at one b.

    When FINITE, ``beta_b`` is the left edge of the certified nonnegative
    region (an upper enclosure of the infimum) and the true threshold lies in
    [beta_b - uncertainty, beta_b].  ``sign_reversal_above`` records whether
    F turned negative again later in the bracket.
    """

    b: float
    status: str
    beta_b: Optional[float] = None
    uncertainty: Optional[float] = None
    bracket: tuple = (0.0, BETA_MAX)
    sign_reversal_above: bool = False


def f_discriminant(b: float, beta: float, n: int = _DEFAULT_N) -> float:
    """F(b, beta) = beta^2 + (2/(b-1)) (J(b, beta) - b/2)."""
    return _f_with_band(b, beta, n)[0]


def _f_with_band(b: float, beta: float, n: int) -> tuple[float, float]:
    res = compute_j(b, beta, n)
    amp = 2.0 / (b - 1.0)
    return beta * beta + amp * (res.value - 0.5 * b), amp * res.error_estimate


def compute_beta_b(
    b: float,
    tol: float = _DEFAULT_TOL,
    scan_points: int = _DEFAULT_SCAN,
    n: int = _DEFAULT_N,
) -> BetaBResult:
    """Locate beta_b by a uniform scan of F over the bracket plus bisection.

    ``tol`` is the certified width of the crossing (>= 1e-6); ``scan_points``
    the number of scan values (>= 64).
    """
    if not 1.0 < b <= 3.0:
        raise BOutOfRange(f"threshold is computed for b in (1, 3] (got b = {b})")
    if tol < 1e-6:
        raise ValueError(f"tol must be >= 1e-6 (got {tol})")
    if scan_points < 64:
        raise ValueError(f"scan_points must be >= 64 (got {scan_points})")

    betas = np.linspace(0.0, BETA_MAX, scan_points)
    fvals = np.empty(scan_points)
    bands = np.empty(scan_points)
    for i, beta in enumerate(betas):
        fvals[i], bands[i] = _f_with_band(b, float(beta), n)

    nonneg = np.flatnonzero(fvals >= 0.0)
    if nonneg.size == 0:
        return BetaBResult(b=b, status=STATUS_INFINITE)

    i = int(nonneg[0])
    reversal = bool(np.any(fvals[i:] < 0.0))

    if i == 0:
        # F(b, 0) < 0 holds analytically; reaching this means J's error
        # swamped the sign, so no verdict is possible.
        return BetaBResult(b=b, status=STATUS_UNDETERMINED, sign_reversal_above=reversal)

    lo, hi = float(betas[i - 1]), float(betas[i])
    f_hi, band_hi = fvals[i], bands[i]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid, band_mid = _f_with_band(b, mid, n)
        if f_mid >= 0.0:
            hi, f_hi, band_hi = mid, f_mid, band_mid
        else:
            lo = mid

    if f_hi < band_hi:
        # The certifying value is inside the propagated J error band.
        return BetaBResult(b=b, status=STATUS_UNDETERMINED, sign_reversal_above=reversal)

    return BetaBResult(
        b=b,
        status=STATUS_FINITE,
        beta_b=hi,
        uncertainty=hi - lo,
        sign_reversal_above=reversal,
    )


@dataclass(frozen=True)
class SweepRow:
    """One b of a sweep: the threshold result plus the analytic bounds."""

    b: float
    result: Optional[BetaBResult]
    est1: Optional[EstimateResult] = None
    est2: Optional[EstimateResult] = None
    est3: Optional[EstimateResult] = None
    error: Optional[str] = None


def sweep(
    b_min: float,
    b_max: float,
    steps: int,
    tol: float = _DEFAULT_TOL,
    scan_points: int = _DEFAULT_SCAN,
    n: int = _DEFAULT_N,
) -> list[SweepRow]:
    """Independent compute_beta_b per b on an inclusive grid, ordered by b.

    Individual failures are recorded on their row and the sweep continues.
    """
    if not (1.0 < b_min <= b_max <= 3.0):
        raise BOutOfRange(
            f"sweep range must satisfy 1 < b_min <= b_max <= 3 (got [{b_min}, {b_max}])"
        )
    if steps < 1:
        raise ValueError("steps must be >= 1")

    bs = np.linspace(b_min, b_max, steps) if steps > 1 else np.array([b_min])
    rows = []
    for b in bs:
        b = float(b)
        try:
            result = compute_beta_b(b, tol=tol, scan_points=scan_points, n=n)
            rows.append(
                SweepRow(
                    b=b, result=result,
                    est1=estimate1(b), est2=estimate2(b), est3=estimate3(b),
                )
            )
        except Exception as exc:  # record and continue
            rows.append(SweepRow(b=b, result=None, error=f"{type(exc).__name__}: {exc}"))
    return rows
