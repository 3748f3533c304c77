"""Pseudo-spectral solver for the periodic b-family in weak form.

The evolution is  u_t + u u_x + (p') * [ b/2 u^2 + (3-b)/2 u_x^2 ] = 0  on
the unit torus: only first derivatives and a smoothing convolution appear,
both exact in Fourier space.  Products are formed pointwise on the grid with
two-thirds-rule dealiasing, time stepping is classical RK4 with a CFL-scaled
step.

Blow-up here means wave breaking: the solution stays bounded while
inf_x u_x runs to -infinity.  Detection is on min_x u_x crossing a large
negative threshold.  Independently, the run tracks the energy fraction in
the top third of the active band of the slope field u_x: a truncated
conservative scheme caps the representable slope near sqrt(energy * modes),
so the first unambiguous signature of breaking is the slope spectrum losing
its decay.  Once that fraction exceeds 1e-2 the run stops, and the stop is
classified as under-resolved breaking if the minimum slope has meanwhile
collapsed (grown 10-fold and below -1), or as a resolution loss otherwise.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernel import dp_multiplier

_TAIL_LIMIT = 1e-2
_OVERFLOW_LIMIT = 1e8


@dataclass
class TorusField:
    """Real 1-periodic field sampled at x_j = j/N, N a power of two."""

    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        n = self.values.shape[0]
        if self.values.ndim != 1 or n < 8 or (n & (n - 1)) != 0:
            raise ValueError("need >= 8 samples on a power-of-two grid")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n) / self.n

    def spectrum(self) -> np.ndarray:
        return np.fft.rfft(self.values)

    def derivative_values(self) -> np.ndarray:
        spec = self.spectrum() * _deriv_symbol(self.n)
        return np.fft.irfft(spec, self.n)

    def spectral_tail_fraction(self, k_max: Optional[int] = None) -> float:
        """Energy fraction carried by the top third of modes up to k_max."""
        spec = self.spectrum()
        if k_max is None:
            k_max = self.n // 2
        energy = np.abs(spec[1 : k_max + 1]) ** 2
        total = float(energy.sum())
        if total == 0.0:
            return 0.0
        k_lo = int(math.ceil(2.0 * k_max / 3.0))
        return float(energy[k_lo - 1 :].sum()) / total

    @classmethod
    def from_function(cls, f, n: int, time: float = 0.0) -> "TorusField":
        x = np.arange(n) / n
        vals = np.zeros(n) + np.asarray(f(x), dtype=np.float64)
        return cls(values=vals, time=time)

    @classmethod
    def constant(cls, c: float, n: int) -> "TorusField":
        return cls(values=np.full(n, float(c)))

    @classmethod
    def cosine(cls, amplitude: float, n: int) -> "TorusField":
        return cls.from_function(lambda x: amplitude * np.cos(2.0 * np.pi * x), n)

    @classmethod
    def odd_sine(cls, amplitude: float, n: int) -> "TorusField":
        """-amplitude * sin(2 pi x): odd data with negative slope at x = 0."""
        return cls.from_function(lambda x: -amplitude * np.sin(2.0 * np.pi * x), n)

    @classmethod
    def from_coefficients(cls, cos_coeffs, sin_coeffs, n: int) -> "TorusField":
        cos_coeffs = np.asarray(cos_coeffs, dtype=np.float64)
        sin_coeffs = np.asarray(sin_coeffs, dtype=np.float64)

        def build(x):
            u = np.zeros_like(x)
            for k, c in enumerate(cos_coeffs):
                u += c * np.cos(2.0 * np.pi * k * x)
            for k, c in enumerate(sin_coeffs):
                if k:
                    u += c * np.sin(2.0 * np.pi * k * x)
            return u

        return cls.from_function(build, n)


@dataclass(frozen=True)
class SimConfig:
    """Run parameters; ``cfl`` scales dt = cfl * (1/N) / max|u|."""

    b: float
    t_max: float
    cfl: float = 0.3
    blowup_slope_threshold: float = 1e4
    dealias: bool = True
    max_steps: int = 2_000_000
    max_snapshots: int = 128

    def __post_init__(self):
        if not 1.0 < self.b <= 3.0:
            raise ValueError(f"b must be in (1, 3] (got {self.b})")
        if self.t_max <= 0.0 or self.cfl <= 0.0 or self.blowup_slope_threshold <= 0.0:
            raise ValueError("t_max, cfl and blowup_slope_threshold must be positive")


@dataclass(frozen=True)
class CriterionPoint:
    """Grid point where the pointwise blow-up criterion holds strictly."""

    x: float
    u0: float
    du0: float
    margin: float  # -u0'(x) - beta_b |u0(x)| > 0


@dataclass
class BlowupReport:
    """Outcome of a run.

    ``t_detect`` estimates the breaking time: the stop time plus the
    remaining-time bound 2/((b-1) |min u_x|) implied by the slope dynamics,
    which removes the leading resolution bias of the raw trigger time
    (``t_stop``).
    """

    detected: bool
    t_detect: Optional[float]
    min_slope_history: np.ndarray  # columns (t, min_x u_x)
    criterion_points: list = field(default_factory=list)
    lifespan_bound: Optional[float] = None
    resolution_loss: bool = False
    stop_reason: str = ""
    t_stop: Optional[float] = None


@dataclass
class Trajectory:
    times: np.ndarray
    mean_history: np.ndarray
    h1_history: np.ndarray
    tail_history: np.ndarray  # slope-field tail fraction, the resolution monitor
    snapshots: list  # TorusField at coarsely spaced times, first and last included

    @property
    def final(self) -> TorusField:
        return self.snapshots[-1]


@dataclass(frozen=True)
class ConservedQuantities:
    mean: float
    h1_energy: float


def _deriv_symbol(n: int) -> np.ndarray:
    k = np.arange(n // 2 + 1, dtype=np.float64)
    sym = 2.0j * np.pi * k
    sym[-1] = 0.0  # the Nyquist mode has no well-defined odd derivative
    return sym


def _band_limit(n: int, dealias: bool) -> int:
    return (n // 3) if dealias else (n // 2)


def _mask(n: int, dealias: bool) -> np.ndarray:
    k_keep = _band_limit(n, dealias)
    m = np.ones(n // 2 + 1)
    m[k_keep + 1 :] = 0.0
    return m


def _rhs_values(vals: np.ndarray, b: float, mask: np.ndarray,
                deriv: np.ndarray, dp_mult: np.ndarray) -> np.ndarray:
    n = vals.shape[0]
    spec = np.fft.rfft(vals) * mask
    u = np.fft.irfft(spec, n)
    ux = np.fft.irfft(spec * deriv, n)
    adv = np.fft.rfft(u * ux) * mask
    quad = np.fft.rfft(0.5 * b * u * u + 0.5 * (3.0 - b) * ux * ux) * mask
    return np.fft.irfft(-adv - dp_mult * quad, n)


def rhs(u: TorusField, b: float, dealias: bool = True) -> TorusField:
    """Right-hand side -u u_x - (p') * (b/2 u^2 + (3-b)/2 u_x^2)."""
    n = u.n
    vals = _rhs_values(u.values, b, _mask(n, dealias), _deriv_symbol(n), dp_multiplier(n))
    return TorusField(values=vals, time=u.time)


def _rk4_step(vals, dt, b, mask, deriv, dp_mult):
    k1 = _rhs_values(vals, b, mask, deriv, dp_mult)
    k2 = _rhs_values(vals + 0.5 * dt * k1, b, mask, deriv, dp_mult)
    k3 = _rhs_values(vals + 0.5 * dt * k2, b, mask, deriv, dp_mult)
    k4 = _rhs_values(vals + dt * k3, b, mask, deriv, dp_mult)
    return vals + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step(u: TorusField, b: float, dt: float, dealias: bool = True) -> TorusField:
    """One RK4 step of size dt (dt < 0 steps backward)."""
    n = u.n
    vals = _rk4_step(u.values, dt, b, _mask(n, dealias), _deriv_symbol(n),
                     dp_multiplier(n))
    return TorusField(values=vals, time=u.time + dt)


def conserved_quantities(u: TorusField, b: float) -> ConservedQuantities:
    """Spatial mean and the average of u^2 + u_x^2 (conserved only at b=2)."""
    ux = u.derivative_values()
    return ConservedQuantities(
        mean=float(u.values.mean()),
        h1_energy=float(np.mean(u.values**2 + ux**2)),
    )


def check_criterion(u0: TorusField, beta_b: float) -> list:
    """Grid points with u0'(x) < -beta_b |u0(x)|, with their margins."""
    du = u0.derivative_values()
    vals = u0.values
    margin = -du - beta_b * np.abs(vals)
    idx = np.flatnonzero(margin > 0.0)
    x = u0.x
    return [
        CriterionPoint(x=float(x[i]), u0=float(vals[i]), du0=float(du[i]),
                       margin=float(margin[i]))
        for i in idx
    ]


def lifespan_bound(u0: TorusField, b: float, beta_b: float) -> Optional[float]:
    """Upper bound 2 / ((b-1) sqrt((u0')^2 - beta_b^2 u0^2)) minimized over
    the criterion points; None when no point qualifies."""
    points = check_criterion(u0, beta_b)
    if not points:
        return None
    best = max(p.du0 * p.du0 - beta_b * beta_b * p.u0 * p.u0 for p in points)
    return 2.0 / ((b - 1.0) * math.sqrt(best))


def _classify_tail_stop(min_slope: float, initial_min_slope: float) -> bool:
    # Wave-breaking fingerprint once resolution is lost: the minimum slope
    # has collapsed well beyond its initial value.
    diverged = min_slope < -1.0
    if initial_min_slope < 0.0:
        diverged = diverged and (min_slope <= 10.0 * initial_min_slope)
    return diverged


def integrate(
    u0: TorusField,
    cfg: SimConfig,
    beta_b: Optional[float] = None,
) -> tuple[Trajectory, BlowupReport]:
    """March u0 to cfg.t_max or to a detected blow-up.

    When ``beta_b`` is given, the report also carries the criterion points of
    the initial datum and the resulting lifespan bound.  On detection,
    ``t_detect`` is the stop time plus the remaining-time bound from the
    slope dynamics, so it estimates the breaking time itself and is stable
    under grid refinement; the raw stop time is kept in ``t_stop``.
    """
    n = u0.n
    mask = _mask(n, cfg.dealias)
    deriv = _deriv_symbol(n)
    dp_mult = dp_multiplier(n)
    k_active = _band_limit(n, cfg.dealias)

    vals = u0.values.copy()
    t = float(u0.time)
    t_end = t + cfg.t_max

    times = []
    slope_hist = []
    mean_hist = []
    h1_hist = []
    tail_hist = []
    snapshots = [TorusField(values=vals.copy(), time=t)]
    snap_dt = cfg.t_max / max(cfg.max_snapshots - 1, 1)
    next_snap = t + snap_dt

    k_lo = int(math.ceil(2.0 * k_active / 3.0))

    def record(cur_t, cur_vals):
        spec = np.fft.rfft(cur_vals) * mask
        u = np.fft.irfft(spec, n)
        ux_spec = spec * deriv
        ux = np.fft.irfft(ux_spec, n)
        energy = np.abs(ux_spec[1 : k_active + 1]) ** 2
        total = float(energy.sum())
        tail = float(energy[k_lo - 1 :].sum()) / total if total > 0.0 else 0.0
        times.append(cur_t)
        slope_hist.append((cur_t, float(ux.min())))
        mean_hist.append(float(u.mean()))
        h1_hist.append(float(np.mean(u * u + ux * ux)))
        tail_hist.append(tail)
        return float(ux.min()), tail

    initial_min_slope, _ = record(t, vals)

    detected = False
    t_detect = None
    t_stop = None
    resolution_loss = False
    stop_reason = "t_max"

    def breaking_time_estimate(cur_t, min_slope):
        return cur_t + 2.0 / ((cfg.b - 1.0) * abs(min_slope))

    steps = 0
    while t < t_end - 1e-14:
        amp = float(np.max(np.abs(vals)))
        if not math.isfinite(amp) or amp > _OVERFLOW_LIMIT:
            stop_reason = "overflow"
            last_slope = slope_hist[-1][1]
            detected = _classify_tail_stop(last_slope, initial_min_slope)
            resolution_loss = not detected
            if detected:
                t_detect = t_stop = t
            break
        dt = cfg.cfl / (n * max(amp, 1e-12))
        dt = min(dt, t_end - t)
        vals = _rk4_step(vals, dt, cfg.b, mask, deriv, dp_mult)
        t += dt
        steps += 1

        min_slope, tail = record(t, vals)

        if t >= next_snap - 1e-14 or t >= t_end - 1e-14:
            snapshots.append(TorusField(values=vals.copy(), time=t))
            while next_snap <= t + 1e-14:
                next_snap += snap_dt

        if min_slope < -cfg.blowup_slope_threshold:
            detected = True
            t_stop = t
            t_detect = breaking_time_estimate(t, min_slope)
            stop_reason = "slope_threshold"
            break
        if tail > _TAIL_LIMIT:
            if _classify_tail_stop(min_slope, initial_min_slope):
                detected = True
                t_stop = t
                t_detect = breaking_time_estimate(t, min_slope)
                stop_reason = "tail_breaking"
            else:
                resolution_loss = True
                stop_reason = "tail_resolution_loss"
            break
        if steps >= cfg.max_steps:
            stop_reason = "max_steps"
            break

    if snapshots[-1].time < t - 1e-14:
        snapshots.append(TorusField(values=vals.copy(), time=t))

    report = BlowupReport(
        detected=detected,
        t_detect=t_detect,
        min_slope_history=np.asarray(slope_hist),
        resolution_loss=resolution_loss,
        stop_reason=stop_reason,
        t_stop=t_stop,
    )
    if beta_b is not None and math.isfinite(beta_b):
        report.criterion_points = check_criterion(u0, beta_b)
        report.lifespan_bound = lifespan_bound(u0, cfg.b, beta_b)

    trajectory = Trajectory(
        times=np.asarray(times),
        mean_history=np.asarray(mean_hist),
        h1_history=np.asarray(h1_hist),
        tail_history=np.asarray(tail_hist),
        snapshots=snapshots,
    )
    return trajectory, report
