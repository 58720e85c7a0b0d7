"""Vertical-line (inverse-Mellin) contour quadrature.

``vertical_line_integral`` computes (1/2*pi*i) * int_{c-iT}^{c+iT} f(z) dz
by the trapezoid rule with successive node doubling (exponentially
accurate for analytic integrands that decay along the line), or by
panels of Gauss-Legendre nodes as a cross-check rule.  Integrands are
expected vectorized: f maps a complex ndarray to a complex ndarray.

Callers assemble integrands from combined log-gamma ratios and
exponentiate once, so magnitudes stay representable on tall lines.

All reductions run in a fixed order, so results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoDecay, NonConvergent, StripViolation
from .specfun import log_gamma

__all__ = [
    "ContourSpec",
    "LineIntegralResult",
    "vertical_line_integral",
    "auto_truncation",
    "mellin_bessel_rhs",
]

_RULES = ("trapezoid", "gauss_legendre_panels")


@dataclass(frozen=True)
class ContourSpec:
    """One vertical-line quadrature plan: Re z = abscissa, |Im z| <= half_height."""

    abscissa: float
    half_height: float
    nodes: int = 64
    rule: str = "trapezoid"

    def __post_init__(self):
        if not self.half_height > 0:
            raise ValueError("half_height must be > 0")
        if self.nodes < 16:
            raise ValueError("nodes must be >= 16")
        if self.rule not in _RULES:
            raise ValueError(f"rule must be one of {_RULES}")


@dataclass
class LineIntegralResult:
    value: complex
    tail_bound: float
    discretization_estimate: float
    nodes_used: int = 0


def _sample_mag(f, c, v):
    z = np.array([complex(c, v)])
    return float(np.abs(f(z))[0])


def _tail_estimate(m_half, m_top, half_height):
    """Crude bound on the discarded |Im z| > T tails from two magnitude samples.

    Fits a power law through (T/2, T); for exponentially decaying
    integrands this overestimates, which is the safe direction.
    """
    if m_top == 0.0:
        return 0.0
    if m_top >= m_half:
        return math.inf
    p = math.log(m_half / m_top) / math.log(2.0)
    if p <= 1.0:
        return math.inf
    # int_T^inf m_top * (T/v)^p dv = m_top * T / (p - 1), both tails, /(2 pi)
    return m_top * half_height / (p - 1.0) / math.pi


def vertical_line_integral(f, contour: ContourSpec, tol: float = 1e-10,
                           max_refinements: int = 6) -> LineIntegralResult:
    """(1/2*pi*i) * integral of f over the truncated vertical line.

    Checks the sampled decay precondition |f(c+iT)| <= |f(c+iT/2)| and
    refines the node count (doubling) until the value changes by less
    than ``tol`` relatively, else raises NonConvergent.  For integrands
    with f(conj z) = conj f(z) the imaginary part of the result is at
    the rounding level.
    """
    c = contour.abscissa
    big_t = contour.half_height
    m_half = _sample_mag(f, c, 0.5 * big_t)
    m_top = _sample_mag(f, c, big_t)
    if m_top >= m_half and m_top > 0.0:
        raise NoDecay(
            f"|f| fails to decay along the contour: |f(c+i{big_t})| = "
            f"{m_top:.3e} >= |f(c+i{big_t / 2})| = {m_half:.3e}")
    nodes_used = 2

    if contour.rule == "trapezoid":
        n = max(contour.nodes, 16)
        h = big_t / n
        v = np.arange(-n, n + 1, dtype=float) * h
        fv = f(c + 1j * v)
        nodes_used += fv.size
        total = np.sum(fv) - 0.5 * (fv[0] + fv[-1])
        gross = h * float(np.sum(np.abs(fv))) / (2.0 * math.pi)
        current = h * total / (2.0 * math.pi)
        prev_diff = math.inf
        for _ in range(max_refinements):
            mid = (np.arange(-n, n, dtype=float) + 0.5) * h
            fm = f(c + 1j * mid)
            nodes_used += fm.size
            refined = 0.5 * current + (0.5 * h) * np.sum(fm) / (2.0 * math.pi)
            gross = 0.5 * gross + (0.5 * h) * float(np.sum(np.abs(fm))) / (2.0 * math.pi)
            diff = abs(refined - current)
            current = refined
            n *= 2
            h *= 0.5
            # rounding floor of the cancelling sum: cannot resolve below it
            floor = 5e-16 * gross
            if diff <= max(tol * abs(current), floor, 1e-300):
                disc = max(diff, floor)
                break
            prev_diff = diff
        else:
            raise NonConvergent(
                f"trapezoid refinement stalled at node count {n}, "
                f"last change {prev_diff:.3e}")
    else:  # gauss_legendre_panels
        order = 16
        x_gl, w_gl = np.polynomial.legendre.leggauss(order)
        n_panels = max(contour.nodes // order, 8)
        prev = None
        current = 0.0 + 0.0j
        prev_diff = math.inf
        for _ in range(max_refinements + 1):
            edges = np.linspace(-big_t, big_t, n_panels + 1)
            mids = 0.5 * (edges[1:] + edges[:-1])
            halfw = 0.5 * (edges[1:] - edges[:-1])
            v = (mids[:, None] + halfw[:, None] * x_gl[None, :]).ravel()
            fv = f(c + 1j * v).reshape(n_panels, order)
            nodes_used += v.size
            current = np.sum(fv * w_gl[None, :] * halfw[:, None]) / (2.0 * math.pi)
            gross = float(np.sum(np.abs(fv) * w_gl[None, :] * halfw[:, None])) \
                / (2.0 * math.pi)
            if prev is not None:
                diff = abs(current - prev)
                floor = 5e-16 * gross
                if diff <= max(tol * abs(current), floor, 1e-300):
                    disc = max(diff, floor)
                    break
                prev_diff = diff
            prev = current
            n_panels *= 2
        else:
            raise NonConvergent(
                f"panel refinement stalled at {n_panels} panels, "
                f"last change {prev_diff:.3e}")

    tail = _tail_estimate(m_half, m_top, big_t)
    return LineIntegralResult(value=complex(current), tail_bound=tail,
                              discretization_estimate=float(disc),
                              nodes_used=nodes_used)


def auto_truncation(f, c: float, tol: float, t_start: float = 16.0,
                    t_cap: float = 4096.0) -> float:
    """Smallest T from the doubling ladder {16, 32, ...} with
    |f(c + iT)| * T < tol * |f(c)|.

    Raises NoDecay if the sampled magnitudes fail to decrease rung to
    rung, or if the ladder cap is reached.
    """
    f0 = _sample_mag(f, c, 0.0)
    if not np.isfinite(f0) or f0 == 0.0:
        raise ValueError("integrand vanishes or is not finite at the abscissa")
    t = t_start
    prev = _sample_mag(f, c, 0.5 * t)
    while t <= t_cap:
        m = _sample_mag(f, c, t)
        if m >= prev and m > 0.0:
            raise NoDecay(
                f"|f(c+i{t})| = {m:.3e} does not fall below "
                f"|f(c+i{t / 2})| = {prev:.3e}")
        if m * t < tol * f0:
            return t
        prev = m
        t *= 2.0
    raise NoDecay(f"no ladder height up to {t_cap} met the decay target")


def mellin_bessel_rhs(z, nu: float):
    """Closed form of the Mellin transform of r^(-nu) J_nu(r):

        2^(z - nu - 1) Gamma(z/2) / Gamma(nu - z/2 + 1),

    valid on the strip 0 < Re z < nu + 3/2.
    """
    zz = np.asarray(z, dtype=np.complex128)
    re = np.atleast_1d(zz.real)
    if np.any(re <= 0.0) or np.any(re >= nu + 1.5):
        raise StripViolation(
            f"Re z must lie in (0, {nu + 1.5}) for the Bessel-Mellin identity")
    lg = (zz - nu - 1.0) * math.log(2.0) + log_gamma(0.5 * zz) \
        - log_gamma(nu - 0.5 * zz + 1.0)
    out = np.exp(lg)
    if np.isscalar(z) or getattr(z, "ndim", 0) == 0:
        return complex(out)
    return out
