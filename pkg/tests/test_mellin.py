import math

import numpy as np
import pytest
from scipy import optimize

import levykernel as lk

from _props import contour_independence_spread


def _gamma_times_power(r):
    def f(z):
        z = np.asarray(z, dtype=np.complex128)
        return np.exp(lk.log_gamma(z) - z * math.log(r))

    return f


class TestVerticalLineIntegral:
    def test_exponential_at_one(self):
        # (1/2 pi i) int Gamma(z) 1^-z dz = e^-1
        f = _gamma_times_power(1.0)
        res = lk.vertical_line_integral(f, lk.ContourSpec(1.0, 32.0), tol=1e-12)
        assert res.value.real == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_exponential_at_two(self):
        f = _gamma_times_power(2.0)
        res = lk.vertical_line_integral(f, lk.ContourSpec(1.0, 32.0), tol=1e-12)
        assert res.value.real == pytest.approx(math.exp(-2.0), rel=1e-12)

    def test_conjugate_symmetry_gives_real_value(self):
        f = _gamma_times_power(1.7)
        res = lk.vertical_line_integral(f, lk.ContourSpec(1.0, 32.0), tol=1e-12)
        assert abs(res.value.imag) <= 1e-10 * abs(res.value)

    def test_no_decay_raises(self):
        f = lambda z: np.ones_like(np.asarray(z, dtype=np.complex128))
        with pytest.raises(lk.NoDecay):
            lk.vertical_line_integral(f, lk.ContourSpec(1.0, 32.0))

    def test_gauss_panels_cross_check(self):
        f = _gamma_times_power(1.3)
        r1 = lk.vertical_line_integral(f, lk.ContourSpec(1.0, 32.0), tol=1e-11)
        r2 = lk.vertical_line_integral(
            f, lk.ContourSpec(1.0, 32.0, nodes=128, rule="gauss_legendre_panels"),
            tol=1e-11)
        assert r1.value.real == pytest.approx(r2.value.real, rel=1e-10)

    def test_refinement_differences_shrink_monotonically(self):
        # trapezoid on an analytic decaying integrand: successive
        # refinement differences shrink until the rounding floor
        f = _gamma_times_power(1.0)
        c, big_t, n = 1.0, 32.0, 16
        h = big_t / n
        v = np.arange(-n, n + 1) * h
        fv = f(c + 1j * v)
        cur = h * (np.sum(fv) - 0.5 * (fv[0] + fv[-1])) / (2 * math.pi)
        diffs = []
        for _ in range(6):
            mid = (np.arange(-n, n) + 0.5) * h
            nxt = 0.5 * cur + 0.5 * h * np.sum(f(c + 1j * mid)) / (2 * math.pi)
            diffs.append(abs(nxt - cur))
            cur = nxt
            n *= 2
            h *= 0.5
        floor = 1e-14 * abs(cur)
        meaningful = [d for d in diffs if d > floor]
        assert all(b <= a for a, b in zip(meaningful, meaningful[1:]))

    def test_invalid_contour_spec(self):
        with pytest.raises(ValueError):
            lk.ContourSpec(1.0, -1.0)
        with pytest.raises(ValueError):
            lk.ContourSpec(1.0, 16.0, nodes=4)
        with pytest.raises(ValueError):
            lk.ContourSpec(1.0, 16.0, rule="simpson")


class TestAutoTruncation:
    def test_ladder_for_quarter_pi_decay(self):
        # solve |f(c+iT)| T = tol |f(c)| for f decaying like e^(-pi v/4);
        # the ladder must return the next power of two above the root
        decay = lambda v: math.exp(-math.pi * abs(v) / 4.0)
        tol = 1e-12
        root = optimize.brentq(lambda t: decay(t) * t - tol, 1.0, 200.0)
        expected = 2.0 ** math.ceil(math.log2(root))
        f = lambda z: np.exp(-math.pi * np.abs(np.asarray(z).imag) / 4.0) \
            * np.ones_like(np.asarray(z, dtype=np.complex128))
        assert lk.auto_truncation(f, 1.0, tol) == expected == 64.0

    def test_gamma_ladder_small(self):
        f = _gamma_times_power(1.0)
        assert lk.auto_truncation(f, 1.0, 1e-10) <= 64.0

    def test_constant_integrand_no_decay(self):
        f = lambda z: np.ones_like(np.asarray(z, dtype=np.complex128))
        with pytest.raises(lk.NoDecay):
            lk.auto_truncation(f, 1.0, 1e-10)


class TestMellinBesselRhs:
    def test_symmetric_cancellation_nu1(self):
        assert lk.mellin_bessel_rhs(2.0 + 0j, 1.0) == pytest.approx(1.0, rel=1e-13)

    def test_symmetric_cancellation_nu0(self):
        assert lk.mellin_bessel_rhs(1.0 + 0j, 0.0) == pytest.approx(1.0, rel=1e-13)

    def test_quarters(self):
        expected = 2.0 ** -0.5 * math.gamma(0.25) / math.gamma(0.75)
        assert lk.mellin_bessel_rhs(0.5 + 0j, 0.0).real == pytest.approx(
            expected, rel=1e-13)

    def test_strip_violation(self):
        with pytest.raises(lk.StripViolation):
            lk.mellin_bessel_rhs(2.0 + 0j, 0.0)
        with pytest.raises(lk.StripViolation):
            lk.mellin_bessel_rhs(-0.1 + 0j, 1.0)


def test_contour_independence():
    assert contour_independence_spread() <= 1e-8
