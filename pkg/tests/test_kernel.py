import math

import numpy as np
import pytest
from scipy.integrate import quad

from bfamily import (
    BETA_MAX,
    BetaOutOfRange,
    GridTooSmall,
    SpectralMultiplier,
    WeightProfile,
    convolve_dp,
    convolve_p,
    eval_dp,
    eval_p,
    eval_w,
)

E = math.e


def gauss_convolve(kernel, f, xs, order=96):
    """Quadrature oracle for (kernel * f)(x): Gauss-Legendre on the two
    smooth pieces either side of the kernel's kink at x - y = 0."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    out = np.empty_like(xs)
    for i, x in enumerate(xs):
        acc = 0.0
        for a, b in ((0.0, x), (x, 1.0)):
            if b - a < 1e-15:
                continue
            y = 0.5 * (b - a) * nodes + 0.5 * (a + b)
            s = x - y
            s = s - np.floor(s)  # kernel argument in [0, 1); pieces avoid 0
            acc += 0.5 * (b - a) * np.sum(weights * kernel(s) * f(y))
        out[i] = acc
    return out


def p_closed(s):
    return np.cosh(s - 0.5) / (2.0 * math.sinh(0.5))


def dp_closed(s):
    return np.sinh(s - 0.5) / (2.0 * math.sinh(0.5))


class TestEvalP:
    def test_at_zero(self):
        assert eval_p(0.0) == pytest.approx(0.5 / math.tanh(0.5), abs=1e-15)

    def test_at_half(self):
        assert eval_p(0.5) == pytest.approx(1.0 / (2.0 * math.sinh(0.5)), abs=1e-15)

    def test_unit_mass(self):
        val, err = quad(lambda x: float(eval_p(x)), 0.0, 1.0, epsabs=1e-14)
        assert val == pytest.approx(1.0, abs=1e-12)

    def test_periodic_and_even(self):
        x = np.linspace(-3.0, 3.0, 401)
        assert np.allclose(eval_p(x), eval_p(x + 1.0), atol=1e-14)
        y = np.linspace(1e-3, 1.0 - 1e-3, 101)
        assert np.allclose(eval_p(y), eval_p(1.0 - y), atol=1e-14)

    def test_positive(self):
        x = np.linspace(0.0, 1.0, 1001)
        assert np.all(eval_p(x) > 0.0)


class TestEvalW:
    def test_extreme_beta_closed_form(self):
        # At beta = (e+1)/(e-1) the weight is 2e/(e-1)^2 * sinh(x) on (0, 1).
        x = np.linspace(1e-6, 1.0 - 1e-6, 57)
        expected = 2.0 * E / (E - 1.0) ** 2 * np.sinh(x)
        assert np.allclose(eval_w(BETA_MAX, x), expected, atol=1e-13)

    def test_beta_zero_reduces_to_p(self):
        assert eval_w(0.0, 0.5) == pytest.approx(float(eval_p(0.5)), abs=1e-15)

    def test_vanishes_at_degenerate_endpoint(self):
        assert eval_w(BETA_MAX, 1e-12) == pytest.approx(0.0, abs=1e-11)

    def test_beta_out_of_range(self):
        with pytest.raises(BetaOutOfRange):
            eval_w(BETA_MAX + 1e-6, 0.5)

    def test_unit_mass_for_beta_grid(self):
        for beta in np.linspace(-BETA_MAX, BETA_MAX, 9):
            val, _ = quad(lambda x: float(eval_w(beta, x)), 0.0, 1.0, epsabs=1e-14)
            assert val == pytest.approx(1.0, abs=1e-12), beta

    def test_nonnegative_and_interior_positive(self):
        x = np.linspace(1e-9, 1.0 - 1e-9, 4001)
        for beta in np.linspace(-BETA_MAX, BETA_MAX, 11):
            w = eval_w(beta, x)
            assert np.all(w >= -1e-13)
            if abs(beta) < BETA_MAX - 1e-9:
                assert np.all(w > 0.0)

    def test_mirror_identity(self):
        # (p + beta p')(1-x) = (p - beta p')(x) on (0, 1)
        x = np.linspace(1e-4, 1.0 - 1e-4, 301)
        beta = 1.3
        lhs = eval_w(beta, 1.0 - x)
        rhs = eval_p(x) - beta * eval_dp(x)
        assert np.allclose(lhs, rhs, atol=1e-12)


class TestWeightProfile:
    def test_distinguishes_endpoint_limits(self):
        prof = WeightProfile(1.0)
        left = prof.on_unit_interval(0.0)
        right = prof.on_unit_interval(1.0)
        assert left != pytest.approx(right, abs=1e-3)
        assert left == pytest.approx(float(eval_w(1.0, 1e-14)), abs=1e-12)

    def test_degenerate_flag(self):
        assert WeightProfile(BETA_MAX).degenerate
        assert not WeightProfile(2.0).degenerate

    def test_rejects_bad_beta(self):
        with pytest.raises(BetaOutOfRange):
            WeightProfile(-BETA_MAX - 1e-3)


class TestSpectralMultiplier:
    def test_dc_mode(self):
        m = SpectralMultiplier.for_mode(0)
        assert m.m_p == 1.0 and m.m_dp == 0.0

    def test_parity(self):
        for k in (1, 3, 10):
            mp_, mm = SpectralMultiplier.for_mode(k), SpectralMultiplier.for_mode(-k)
            assert mp_.m_p == pytest.approx(mm.m_p, rel=1e-15)
            assert mp_.m_dp == pytest.approx(-mm.m_dp, rel=1e-15)


class TestConvolutions:
    def test_constant_through_p(self):
        f = np.ones(64)
        assert np.allclose(convolve_p(f), 1.0, atol=1e-14)

    def test_constant_through_dp(self):
        f = np.full(64, 3.7)
        assert np.allclose(convolve_dp(f), 0.0, atol=1e-14)

    def test_cosine_eigenfunction(self):
        n = 256
        x = np.arange(n) / n
        f = np.cos(2.0 * np.pi * x)
        expected = f / (1.0 + 4.0 * np.pi**2)
        assert np.allclose(convolve_p(f), expected, atol=1e-14)

    def test_sine_mode_two(self):
        n = 256
        x = np.arange(n) / n
        f = np.sin(4.0 * np.pi * x)
        expected = f / (1.0 + 16.0 * np.pi**2)
        assert np.allclose(convolve_p(f), expected, atol=1e-14)

    def test_dp_on_cosine(self):
        n = 256
        x = np.arange(n) / n
        f = np.cos(2.0 * np.pi * x)
        expected = -2.0 * np.pi * np.sin(2.0 * np.pi * x) / (1.0 + 4.0 * np.pi**2)
        assert np.allclose(convolve_dp(f), expected, atol=1e-14)

    def test_dp_on_sine(self):
        n = 256
        x = np.arange(n) / n
        f = np.sin(2.0 * np.pi * x)
        expected = 2.0 * np.pi * np.cos(2.0 * np.pi * x) / (1.0 + 4.0 * np.pi**2)
        assert np.allclose(convolve_dp(f), expected, atol=1e-14)

    def test_grid_too_small(self):
        with pytest.raises(GridTooSmall):
            convolve_p(np.ones(4))
        with pytest.raises(GridTooSmall):
            convolve_dp(np.ones(7))

    def test_against_quadrature_oracle(self):
        n = 64
        x = np.arange(n) / n

        def f(y):
            return 0.4 + np.cos(2.0 * np.pi * y) - 0.3 * np.sin(4.0 * np.pi * y)

        f_grid = f(x)
        assert np.allclose(convolve_p(f_grid), gauss_convolve(p_closed, f, x),
                           atol=1e-12)
        assert np.allclose(convolve_dp(f_grid), gauss_convolve(dp_closed, f, x),
                           atol=1e-12)

    def test_fundamental_solution_identity(self):
        # Applying 1 - d^2/dx^2 spectrally to p*f recovers f.
        rng = np.random.default_rng(3)
        n = 128
        f = rng.standard_normal(n)
        g = convolve_p(f)
        k = np.arange(n // 2 + 1)
        spec = np.fft.rfft(g) * (1.0 + (2.0 * np.pi * k) ** 2)
        assert np.allclose(np.fft.irfft(spec, n), f, atol=1e-10)
