"""Limit spectral curves, knot points, and assembled limit graphs.

Every traced curve is represented as a graph over one real coordinate, the
representation certified by the monotonicity lemmas: the curves attached to
the real axis are graphs t(c) over c = Re lambda (Re of the defining
functional is monotone in t), while the infinite vertical curve is a graph
c(t) over t = -Im lambda.  Bisection in the guaranteed coordinate is
therefore unconditionally bracketed once a sign change is scanned.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import phase, profiles
from .errors import (BisectionBracketFailure, DomainError,
                     MultipleIntersections, NoIntersection)
from .profiles import Profile, ProfileKind

_KNOT_COUETTE = -1j / math.sqrt(3.0)


class CurveTag(enum.Enum):
    GAMMA_PLUS = "gamma_plus"
    GAMMA_MINUS = "gamma_minus"
    GAMMA_INFTY = "gamma_infty"
    GAMMA_0 = "gamma_0"
    GAMMA_A = "gamma_a"
    GAMMA_B = "gamma_b"


@dataclass(frozen=True)
class SpectralCurve:
    tag: CurveTag
    samples: tuple[complex, ...]
    phase: tuple[float, ...]
    clipped_at: tuple[str, str]
    excluded: bool = False
    exact: bool = False
    profile: Profile | None = None
    label: str = ""


@dataclass(frozen=True)
class LimitGraph:
    profile: Profile
    curves: tuple[SpectralCurve, ...]
    knots: dict[str, complex]
    endpoints: dict[str, float]

    def retained(self) -> list[SpectralCurve]:
        return [c for c in self.curves if not c.excluded]


def defining_functional(profile: Profile, tag: CurveTag):
    """The complex functional whose real part vanishes along the curve.

    Monotone kinds use (Q+, Q-, Q); the quadratic family uses the four
    turning-point integrals plus the exact closed form for the curve between
    the two turning points.
    """
    if profile.kind is ProfileKind.QUADRATIC:
        if tag is CurveTag.GAMMA_0:
            return lambda lam: cmath.exp(3j * math.pi / 4.0) * math.pi * lam / 2.0
        if tag is CurveTag.GAMMA_B:
            return lambda lam: phase.endpoint_integral(
                profile, 1.0, lam, tp=profiles.turning_points(profile, lam)[0])
        if tag is CurveTag.GAMMA_A:
            return lambda lam: phase.endpoint_integral(
                profile, -1.0, lam, tp=profiles.turning_points(profile, lam)[1])
        if tag is CurveTag.GAMMA_MINUS:
            # Integral from the upper turning point to +1, continued through
            # the channel between the turning points: the sum of the
            # turning-point-to-turning-point closed form and the b-side
            # integral.  This is the branch whose zero locus meets gamma_0
            # and gamma_b at lambda_1 and gamma_a and gamma_infty at
            # lambda_2, making both knots triple points.
            def middle(lam):
                t_val = cmath.exp(3j * math.pi / 4.0) * math.pi * lam / 2.0
                b_val = phase.endpoint_integral(
                    profile, 1.0, lam,
                    tp=profiles.turning_points(profile, lam)[0])
                return b_val + t_val
            return middle
        if tag is CurveTag.GAMMA_INFTY:
            return lambda lam: phase.q_full(profile, lam)
        raise ValueError(f"{tag} is not defined for the quadratic family")
    if tag is CurveTag.GAMMA_PLUS:
        return lambda lam: phase.endpoint_integral(profile, 1.0, lam)
    if tag is CurveTag.GAMMA_MINUS:
        return lambda lam: -phase.endpoint_integral(profile, -1.0, lam)
    if tag is CurveTag.GAMMA_INFTY:
        return lambda lam: phase.q_full(profile, lam)
    raise ValueError(f"{tag} is not defined for monotone profiles")


def _solve_t(func, c: float, depth: float, hint: float | None) -> float | None:
    """Depth t > 0 with Re func(c - it) = 0, or None if no root up to depth."""

    def g(t):
        return func(complex(c, -t)).real

    lo = hi = None
    if hint is not None:
        a, b = max(1e-9, 0.6 * hint), min(depth, 1.7 * hint + 1e-3)
        ga, gb = g(a), g(b)
        if ga == 0.0:
            return a
        if gb == 0.0:
            return b
        if ga * gb < 0:
            lo, hi = a, b
    if lo is None:
        grid = np.geomspace(1e-6, depth, 40)
        prev_t, prev_g = None, None
        for t in grid:
            gt = g(t)
            if gt == 0.0:
                return float(t)
            if prev_g is not None and prev_g * gt < 0:
                lo, hi = prev_t, t
                break
            prev_t, prev_g = t, gt
        else:
            return None
    return float(brentq(g, lo, hi, xtol=1e-12, rtol=8.9e-16))


def _solve_c(func, t: float, c_lo: float, c_hi: float,
             hint: float | None) -> float | None:
    """Abscissa c with Re func(c - it) = 0, bracketed by the Re Q' < 0 law."""

    def g(c):
        return func(complex(c, -t)).real

    lo = hi = None
    if hint is not None:
        w = 0.05 * (c_hi - c_lo)
        a, b = max(c_lo + 1e-9, hint - w), min(c_hi - 1e-9, hint + w)
        if a < b:
            ga, gb = g(a), g(b)
            if ga * gb < 0:
                lo, hi = a, b
    if lo is None:
        grid = np.linspace(c_lo + 1e-6, c_hi - 1e-6, 40)
        vals = [g(c) for c in grid]
        for i in range(len(grid) - 1):
            if vals[i] == 0.0:
                return float(grid[i])
            if vals[i] * vals[i + 1] < 0:
                lo, hi = grid[i], grid[i + 1]
                break
        else:
            return None
    return float(brentq(g, lo, hi, xtol=1e-12, rtol=8.9e-16))


def _c_range(profile: Profile, tag: CurveTag) -> tuple[float, float, bool]:
    """(c_lo, c_hi, start_from_high) for curves that are graphs over Re."""
    a, b = profiles.range_of(profile)
    lo, hi = profiles.semistrip(profile)
    if profile.kind is ProfileKind.QUADRATIC:
        if tag is CurveTag.GAMMA_B:
            return lo, b, True
        if tag is CurveTag.GAMMA_A:
            return lo, a, True
        if tag is CurveTag.GAMMA_MINUS:
            return lo, min(a, b), False
        raise ValueError(f"{tag} is not a graph over Re lambda here")
    if tag is CurveTag.GAMMA_PLUS:
        return a, b, True
    if tag is CurveTag.GAMMA_MINUS:
        return a, b, False
    raise ValueError(f"{tag} is not a graph over Re lambda")


def trace_curve(profile: Profile, tag: CurveTag, depth: float = 6.0,
                n_samples: int = 400) -> SpectralCurve:
    """Sample one limit curve; samples ordered from its real-axis end."""
    if profile.kind is ProfileKind.QUADRATIC and tag is CurveTag.GAMMA_0:
        a, b = profiles.range_of(profile)
        s_max = math.sqrt(2.0) * min(a, b)
        ss = np.linspace(s_max / n_samples, s_max, n_samples)
        samples = tuple(s * cmath.exp(-1j * math.pi / 4.0) for s in ss)
        ph = tuple(math.pi * s / 2.0 for s in ss)
        return SpectralCurve(tag, samples, ph, ("0", "depth"), exact=True,
                             profile=profile)
    func = defining_functional(profile, tag)
    if tag is CurveTag.GAMMA_INFTY:
        lo, hi = profiles.semistrip(profile)
        ts = np.linspace(depth / n_samples, depth, n_samples)
        samples, ph = [], []
        hint = None
        for t in ts:
            c = _solve_c(func, float(t), lo, hi, hint)
            if c is None:
                continue
            hint = c
            lam = complex(c, -t)
            samples.append(lam)
            ph.append(func(lam).imag)
        if len(samples) < 2:
            raise BisectionBracketFailure(
                f"no samples found for {tag.value}; depth too small?")
        return SpectralCurve(tag, tuple(samples), tuple(ph),
                             ("knot", "depth"), profile=profile)
    c_lo, c_hi, from_high = _c_range(profile, tag)
    cs = np.linspace(c_lo + (c_hi - c_lo) / (n_samples + 1), c_hi,
                     n_samples, endpoint=False)
    if from_high:
        cs = cs[::-1]
    samples, ph = [], []
    hint = None
    for c in cs:
        t = _solve_t(func, float(c), depth, hint)
        if t is None:
            if samples:
                break
            continue
        hint = t
        lam = complex(c, -t)
        samples.append(lam)
        ph.append(func(lam).imag)
    if len(samples) < 2:
        raise BisectionBracketFailure(
            f"no samples found for {tag.value} on ({c_lo}, {c_hi})")
    return SpectralCurve(tag, tuple(samples), tuple(ph),
                         ("axis", "end"), profile=profile)


def _graph_t_of_c(curve: SpectralCurve):
    """Sampled t(c) interpolant over the curve's Re range."""
    cs = np.array([s.real for s in curve.samples])
    ts = np.array([-s.imag for s in curve.samples])
    order = np.argsort(cs)
    return cs[order], ts[order]


def _refine_intersection(curve_x: SpectralCurve, curve_y: SpectralCurve,
                         c_star: float, dc: float, depth: float) -> complex:
    """Polish an interpolated crossing by re-solving both graphs exactly."""
    fx = defining_functional(curve_x.profile, curve_x.tag)
    fy = defining_functional(curve_y.profile, curve_y.tag)

    def diff(c):
        tx = _solve_t(fx, c, depth, None)
        ty = _solve_t(fy, c, depth, None)
        if tx is None or ty is None:
            raise NoIntersection("curve left its graph range during refinement")
        return tx - ty

    lo, hi = c_star - 2.0 * dc, c_star + 2.0 * dc
    dlo, dhi = diff(lo), diff(hi)
    if dlo * dhi > 0:
        # fall back to the interpolated estimate
        fx_t = _solve_t(fx, c_star, depth, None)
        return complex(c_star, -fx_t)
    c_ref = float(brentq(diff, lo, hi, xtol=1e-11, rtol=8.9e-16))
    t_ref = _solve_t(fx, c_ref, depth, None)
    return complex(c_ref, -t_ref)


def _intersect(curve_x: SpectralCurve, curve_y: SpectralCurve,
               depth: float) -> complex:
    """Unique crossing of two Re-graphs, by sign counting plus bisection."""
    cx, tx = _graph_t_of_c(curve_x)
    cy, ty = _graph_t_of_c(curve_y)
    lo = max(cx[0], cy[0])
    hi = min(cx[-1], cy[-1])
    if hi <= lo:
        raise NoIntersection(
            f"{curve_x.tag.value} and {curve_y.tag.value} do not overlap in Re")
    grid = np.linspace(lo, hi, 800)
    d = np.interp(grid, cx, tx) - np.interp(grid, cy, ty)
    sign_changes = [i for i in range(len(grid) - 1)
                    if d[i] == 0.0 or d[i] * d[i + 1] < 0]
    if not sign_changes:
        raise NoIntersection(
            f"{curve_x.tag.value} and {curve_y.tag.value} do not cross")
    if len(sign_changes) > 1:
        raise MultipleIntersections(
            f"{len(sign_changes)} crossings of {curve_x.tag.value} and "
            f"{curve_y.tag.value}; expected one")
    i = sign_changes[0]
    c_star = float(brentq(lambda c: np.interp(c, cx, tx) - np.interp(c, cy, ty),
                          grid[i], grid[i + 1]))
    t_star = float(np.interp(c_star, cx, tx))
    if curve_x.exact and curve_y.exact:
        return complex(c_star, -t_star)
    if curve_x.exact:
        curve_x, curve_y = curve_y, curve_x
    dc = max(grid[1] - grid[0], 2e-4)
    if curve_y.exact and curve_y.tag is CurveTag.GAMMA_0:
        # gamma_0 is the exact ray t = c; refine against it directly
        fx = defining_functional(curve_x.profile, curve_x.tag)

        def diff(c):
            t = _solve_t(fx, c, depth, None)
            if t is None:
                raise NoIntersection("graph range exceeded during refinement")
            return t - c

        lo2, hi2 = c_star - 2.0 * dc, c_star + 2.0 * dc
        if diff(lo2) * diff(hi2) < 0:
            c_ref = float(brentq(diff, lo2, hi2, xtol=1e-11, rtol=8.9e-16))
            return complex(c_ref, -c_ref)
        return complex(c_star, -t_star)
    return _refine_intersection(curve_x, curve_y, c_star, dc, depth)


def knot_points(curves: list[SpectralCurve], depth: float = 6.0) -> dict[str, complex]:
    """Named intersections of the traced curves (lambda0, or lambda1/lambda2)."""
    by_tag = {c.tag: c for c in curves}
    knots: dict[str, complex] = {}
    if CurveTag.GAMMA_0 in by_tag:
        knots["lambda1"] = _intersect(by_tag[CurveTag.GAMMA_B],
                                      by_tag[CurveTag.GAMMA_0], depth)
        knots["lambda2"] = _intersect(by_tag[CurveTag.GAMMA_MINUS],
                                      by_tag[CurveTag.GAMMA_A], depth)
    elif CurveTag.GAMMA_PLUS in by_tag and CurveTag.GAMMA_MINUS in by_tag:
        knots["lambda0"] = _intersect(by_tag[CurveTag.GAMMA_PLUS],
                                      by_tag[CurveTag.GAMMA_MINUS], depth)
    return knots


def _clip(curve: SpectralCurve, keep, boundary: str) -> tuple[SpectralCurve, SpectralCurve | None]:
    """Split a traced curve into retained and excluded parts at a knot."""
    kept_s, kept_p, exc_s, exc_p = [], [], [], []
    for s, p in zip(curve.samples, curve.phase):
        if keep(s):
            kept_s.append(s)
            kept_p.append(p)
        else:
            exc_s.append(s)
            exc_p.append(p)
    retained = SpectralCurve(curve.tag, tuple(kept_s), tuple(kept_p),
                             (curve.clipped_at[0], boundary),
                             profile=curve.profile, exact=curve.exact,
                             label=curve.label)
    excluded = None
    if exc_s:
        excluded = SpectralCurve(curve.tag, tuple(exc_s), tuple(exc_p),
                                 (boundary, curve.clipped_at[1]),
                                 excluded=True, profile=curve.profile,
                                 exact=curve.exact, label=curve.label)
    return retained, excluded


def _closed_form_couette(profile: Profile, depth: float,
                         n_samples: int) -> LimitGraph:
    """The Couette graph: segments [+-1, -i/sqrt 3] and the imaginary ray."""
    knot = _KNOT_COUETTE
    curves = []
    for tag, end in ((CurveTag.GAMMA_PLUS, 1.0), (CurveTag.GAMMA_MINUS, -1.0)):
        ts = np.linspace(0.0, 1.0, n_samples)
        samples = tuple(complex(end) + t * (knot - end) for t in ts)
        # arclength from the real-axis endpoint; monotone along the segment
        ph = tuple(t * abs(knot - end) for t in ts)
        curves.append(SpectralCurve(tag, samples, ph, ("axis", "knot"),
                                    exact=True, profile=profile))
    ts = np.linspace(1.0 / math.sqrt(3.0), depth, n_samples)
    samples = tuple(complex(0.0, -t) for t in ts)
    ph = tuple(phase.f_couette(s).real for s in samples)
    curves.append(SpectralCurve(CurveTag.GAMMA_INFTY, samples, ph,
                                ("knot", "depth"), exact=True, profile=profile))
    return LimitGraph(profile, tuple(curves), {"lambda0": knot},
                      {"a": -1.0, "b": 1.0})


def build_limit_graph(profile: Profile, depth: float = 6.0,
                      n_samples: int = 400) -> LimitGraph:
    """Trace, intersect, and clip the limit spectral graph for the profile."""
    a, b = profiles.range_of(profile)
    if profile.kind is ProfileKind.LINEAR:
        return _closed_form_couette(profile, depth, n_samples)
    if profile.kind is ProfileKind.QUADRATIC:
        tags = [CurveTag.GAMMA_0, CurveTag.GAMMA_B, CurveTag.GAMMA_A,
                CurveTag.GAMMA_MINUS, CurveTag.GAMMA_INFTY]
        traced = {t: trace_curve(profile, t, depth, n_samples) for t in tags}
        knots = knot_points(list(traced.values()), depth)
        l1, l2 = knots["lambda1"], knots["lambda2"]
        re_lo, re_hi = sorted((l1.real, l2.real))
        curves: list[SpectralCurve] = []
        for tag, keep, boundary in (
                (CurveTag.GAMMA_0, lambda s: abs(s) <= abs(l1) + 1e-9, "lambda1"),
                (CurveTag.GAMMA_B, lambda s: s.real >= l1.real - 1e-9, "lambda1"),
                (CurveTag.GAMMA_MINUS,
                 lambda s: re_lo - 1e-9 <= s.real <= re_hi + 1e-9, "knots"),
                (CurveTag.GAMMA_A, lambda s: s.real >= l2.real - 1e-9, "lambda2"),
                (CurveTag.GAMMA_INFTY, lambda s: s.imag <= l2.imag + 1e-9, "lambda2"),
        ):
            retained, excluded = _clip(traced[tag], keep, boundary)
            curves.append(retained)
            if excluded is not None:
                curves.append(excluded)
        return LimitGraph(profile, tuple(curves), knots, {"a": a, "b": b})
    tags = [CurveTag.GAMMA_PLUS, CurveTag.GAMMA_MINUS, CurveTag.GAMMA_INFTY]
    traced = {t: trace_curve(profile, t, depth, n_samples) for t in tags}
    knots = knot_points(list(traced.values()), depth)
    l0 = knots["lambda0"]
    curves = []
    for tag, keep in (
            (CurveTag.GAMMA_PLUS, lambda s: s.real >= l0.real - 1e-9),
            (CurveTag.GAMMA_MINUS, lambda s: s.real <= l0.real + 1e-9),
            (CurveTag.GAMMA_INFTY, lambda s: s.imag <= l0.imag + 1e-9),
    ):
        retained, excluded = _clip(traced[tag], keep, "lambda0")
        curves.append(retained)
        if excluded is not None:
            curves.append(excluded)
    return LimitGraph(profile, tuple(curves), knots, {"a": a, "b": b})


def couette_os_curves(eps: float, alpha: float,
                      depth: float = 6.0, n_samples: int = 400) -> list[SpectralCurve]:
    """Viscosity-corrected eigenvalue curves for plane Couette flow.

    In the rotated frame with origin at -1 and abscissa along [-1, -i/sqrt 3]
    the two curves are gamma_pm(t) = +-(sqrt(eps)/sqrt(t)) ln(c(t) t^{3/4} /
    eps^{1/4}); they are returned in lambda coordinates together with their
    mirror images across the imaginary axis and the imaginary ray.
    """
    if eps <= 0 or alpha <= 0:
        raise DomainError("eps and alpha must be positive")

    def c_of_t(t):
        return 2.0 * math.sqrt(math.pi) * abs(
            cmath.sinh(alpha * (2.0 - cmath.exp(-1j * math.pi / 4.0) * t))) \
            / math.sinh(2.0 * alpha)

    # the logarithm in gamma_pm changes sign where c(t) t^{3/4} = eps^{1/4};
    # sample from just above that point out to the knot abscissa
    t_hi = 2.0 / math.sqrt(3.0)
    t_lo = float(brentq(
        lambda t: math.log(c_of_t(t) * t ** 0.75 / eps ** 0.25),
        1e-12, t_hi))
    if t_hi <= t_lo:
        raise DomainError(f"empty t-window [{t_lo}, {t_hi}]; eps too large")

    e_t = cmath.exp(-1j * math.pi / 6.0)
    e_n = cmath.exp(1j * math.pi / 3.0)
    ts = np.linspace(t_lo, t_hi, n_samples)
    out = []
    for sign, name in ((1.0, "os_gamma_plus"), (-1.0, "os_gamma_minus")):
        samples, ph = [], []
        for t in ts:
            g = sign * math.sqrt(eps / t) * math.log(
                c_of_t(t) * t ** 0.75 / eps ** 0.25)
            samples.append(-1.0 + t * e_t + g * e_n)
            ph.append(float(t))
        left = SpectralCurve(CurveTag.GAMMA_MINUS, tuple(samples), tuple(ph),
                             ("t_lo", "t_hi"), exact=True, label=name)
        mirror = SpectralCurve(CurveTag.GAMMA_PLUS,
                               tuple(-s.conjugate() for s in samples),
                               tuple(ph), ("t_lo", "t_hi"), exact=True,
                               label=name + "_mirror")
        out.extend([left, mirror])
    ray_ts = np.linspace(1.0 / math.sqrt(3.0), depth, n_samples)
    ray = SpectralCurve(CurveTag.GAMMA_INFTY,
                        tuple(complex(0.0, -t) for t in ray_ts),
                        tuple(phase.f_couette(complex(0.0, -t)).real
                              for t in ray_ts),
                        ("knot", "depth"), exact=True, label="os_ray")
    out.append(ray)
    return out
