"""Eigenvalue predictions on the limit curves and exact Airy refinements.

Three prediction families: closed-form Airy-zero and ray predictions for the
linear profile, quantization-condition roots along traced curves for the
other profiles, and the boundary-layer corrected predictions for the viscous
channel-flow problem.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from . import airy, graph as graph_mod, phase, profiles
from .errors import DomainError, EmptyWindow
from .graph import CurveTag, LimitGraph
from .profiles import Profile, ProfileKind

_RADIUS_C = 10.0
_RADIUS_FLOOR = 1e-14


@dataclass(frozen=True)
class Prediction:
    tag: CurveTag
    k: int
    mu: complex
    radius: float
    phase_value: float
    mirror: bool = False


@dataclass(frozen=True)
class CouetteConstants:
    sigma: float
    delta_sigma: float
    d_sigma: complex
    k0: int
    k1: int
    u0_center: complex
    u0_expected_count: float


def phi_decay(t: float) -> float:
    """(4/3) Re (2 e^{i pi/6} - t)^{3/2}; vanishes at t = 2/sqrt(3)."""
    return (4.0 / 3.0) * ((2.0 * cmath.exp(1j * math.pi / 6.0) - t) ** 1.5).real


def couette_constants(eps: float, sigma: float = 0.5) -> CouetteConstants:
    """Knot-neighbourhood geometry and index cutoffs for the linear profile."""
    if not 0.0 < eps < 0.1:
        raise DomainError(f"eps={eps} outside (0, 0.1)")
    if sigma < 0.5:
        raise DomainError(f"sigma={sigma} below 0.5")
    delta = sigma * math.sqrt(eps) * abs(math.log(eps))
    d_sigma = -1j * (1.0 / math.sqrt(3.0) + delta)
    f_d = phase.f_couette(d_sigma).real
    # smallest k with f(d_sigma) < pi k sqrt(eps)
    k0 = max(1, int(f_d / (math.pi * math.sqrt(eps))) + 1)
    limit = 2.0 / math.sqrt(3.0) - delta
    zeros = airy.airy_zeros(8)
    k1 = 0
    while eps ** (1.0 / 3.0) * zeros[k1 + 1] < limit:
        k1 += 1
        if k1 == len(zeros):
            zeros = airy.airy_zeros(2 * len(zeros))
    if k1 < 1:
        raise DomainError("no Airy-zero prediction fits below the knot")
    count = (math.sqrt(2.0) * 3.0 ** 0.75 * sigma / math.pi) * abs(math.log(eps))
    return CouetteConstants(sigma, delta, d_sigma, k0, k1,
                            -1j / math.sqrt(3.0), count)


def predict_model_couette(eps: float, sigma: float = 0.5,
                          depth: float = 6.0):
    """Predictions for i eps y'' + x y = lambda y with Dirichlet conditions.

    Returns (predictions, constants): Airy-zero chains along the segments
    [-+1, -i/sqrt 3] for k = 1..k1+1, and pure-imaginary predictions -i rho_k
    solving f(-i rho) = pi k sqrt(eps) for k >= k0 - 1.
    """
    const = couette_constants(eps, sigma)
    zeros = airy.airy_zeros(const.k1 + 1)
    cube = eps ** (1.0 / 3.0)
    preds: list[Prediction] = []
    for k in range(1, const.k1 + 2):
        r = zeros[k]
        decay = phi_decay(cube * r)
        rad = max(math.exp(-decay / math.sqrt(eps)), _RADIUS_FLOOR)
        mu_minus = -1.0 + cmath.exp(-1j * math.pi / 6.0) * cube * r
        mu_plus = 1.0 - cmath.exp(1j * math.pi / 6.0) * cube * r
        ph = (2.0 / 3.0) * math.sqrt(eps) * r ** 1.5
        preds.append(Prediction(CurveTag.GAMMA_MINUS, k, mu_minus, rad, ph))
        preds.append(Prediction(CurveTag.GAMMA_PLUS, k, mu_plus, rad, ph,
                                mirror=True))
    f_max = phase.f_couette(complex(0.0, -depth)).real
    k_max = int(f_max / (math.pi * math.sqrt(eps)))
    for k in range(max(1, const.k0 - 1), k_max + 1):
        target = math.pi * k * math.sqrt(eps)
        rho = brentq(lambda r: phase.f_couette(-1j * r).real - target,
                     1e-9, depth, xtol=1e-13)
        preds.append(Prediction(CurveTag.GAMMA_INFTY, k, -1j * rho,
                                _RADIUS_C * eps / rho, target))
    return preds, const


def _scaled_determinant_logs(lam: complex, eps: float):
    """Log-scaled branches of the two products in the Couette determinant."""
    w = cmath.exp(1j * math.pi / 6.0) * eps ** (-1.0 / 3.0)
    xi1 = w * (-1.0 - lam)
    xi2 = w * (1.0 - lam)
    rot = cmath.exp(-2j * math.pi / 3.0)
    a = airy.airy_v_log(xi1) + airy.airy_v_log(rot * xi2)
    b = airy.airy_v_log(rot * xi1) + airy.airy_v_log(xi2)
    return a, b


def couette_determinant(lam: complex, eps: float) -> complex:
    """Characteristic determinant for the linear profile, scale divided out.

    The returned value is the determinant times a positive lambda-dependent
    factor; its zero set is the spectrum.
    """
    a, b = _scaled_determinant_logs(lam, eps)
    ref = a if a.real >= b.real else b
    return cmath.exp(a - ref) - cmath.exp(b - ref)


def refine_root(lam0: complex, eps: float, max_iter: int = 60,
                tol: float = 1e-12) -> complex:
    """Newton-polish a determinant root seeded at a prediction.

    Works on exp(a - b) - 1, which shares the determinant's zero set but is
    free of the overall exponential scale.
    """
    lam = complex(lam0)

    def g(z):
        a, b = _scaled_determinant_logs(z, eps)
        return cmath.exp(a - b) - 1.0

    for _ in range(max_iter):
        h = 1e-7 * (1.0 + abs(lam))
        g0 = g(lam)
        dg = (g(lam + h) - g(lam - h)) / (2.0 * h)
        if dg == 0:
            break
        step = g0 / dg
        lam -= step
        if abs(step) < tol:
            return lam
    return lam


def _quant_scale(profile: Profile, eps: float) -> float:
    """Step of the quantization phase: sqrt(eps) for the linear normalization
    (i eps y''), eps itself for the i eps^2 y'' normalization."""
    return math.sqrt(eps) if profile.kind is ProfileKind.LINEAR else eps


def _near(z: complex, points, delta: float) -> bool:
    return any(abs(z - p) < delta for p in points)


def predict_wkb(profile: Profile, eps: float, limit_graph: LimitGraph,
                delta: float = 0.1) -> list[Prediction]:
    """Quantization-condition roots along the retained curves of the graph.

    On the curves attached to the real axis the condition is |phase| =
    eps pi (k - 1/4); on the infinite curve it is eps pi k; the exact ray of
    the quadratic family has the closed form lambda_k = (2k+1) eps
    e^{-i pi/4}.  Predictions inside the delta-neighbourhoods of the real
    endpoints and the knots are withheld.
    """
    excluded = [complex(limit_graph.endpoints["a"]),
                complex(limit_graph.endpoints["b"]), 0.0 + 0.0j]
    excluded += list(limit_graph.knots.values())
    preds: list[Prediction] = []
    for curve in limit_graph.retained():
        if len(curve.samples) < 2:
            continue
        if curve.tag is CurveTag.GAMMA_0:
            k = 0
            lim = max(abs(s) for s in curve.samples)
            while (2 * k + 1) * eps <= lim:
                mu = (2 * k + 1) * eps * cmath.exp(-1j * math.pi / 4.0)
                if not _near(mu, excluded, delta):
                    preds.append(Prediction(curve.tag, k, mu,
                                            _RADIUS_C * eps * eps,
                                            math.pi * (2 * k + 1) * eps / 2.0))
                k += 1
            continue
        func = graph_mod.defining_functional(profile, curve.tag)
        offset = 0.0 if curve.tag is CurveTag.GAMMA_INFTY else 0.25
        sign = 1.0 if curve.phase[-1] >= curve.phase[0] else -1.0
        lo = min(curve.phase)
        hi = max(curve.phase)
        k = 1
        while True:
            target = sign * math.pi * eps * (k - offset)
            if sign * target > max(sign * lo, sign * hi) + 1e-15:
                break
            if lo - 1e-15 <= target <= hi + 1e-15:
                mu = _solve_on_curve(profile, curve, func, target)
                if mu is not None and not _near(mu, excluded, delta):
                    preds.append(Prediction(curve.tag, k, mu,
                                            _RADIUS_C * eps * eps, target))
            k += 1
    if not preds:
        raise EmptyWindow(
            "no quantization root on any retained curve outside the "
            "delta neighbourhoods")
    return preds


def _solve_on_curve(profile: Profile, curve, func, target: float):
    """Point on the traced curve where the stored phase reaches target."""
    ph = curve.phase
    idx = None
    for i in range(len(ph) - 1):
        if (ph[i] - target) * (ph[i + 1] - target) <= 0:
            idx = i
            break
    if idx is None:
        return None
    s0, s1 = curve.samples[idx], curve.samples[idx + 1]
    if curve.tag is CurveTag.GAMMA_INFTY:
        lo_t, hi_t = -s0.imag, -s1.imag
        c_lo, c_hi = profiles.semistrip(profile)

        def g(t):
            c = graph_mod._solve_c(func, t, c_lo, c_hi,
                                   0.5 * (s0.real + s1.real))
            return func(complex(c, -t)).imag - target

        t_star = brentq(g, lo_t, hi_t, xtol=1e-12)
        c_star = graph_mod._solve_c(func, t_star, c_lo, c_hi,
                                    0.5 * (s0.real + s1.real))
        return complex(c_star, -t_star)
    lo_c, hi_c = sorted((s0.real, s1.real))
    hint = 0.5 * (-s0.imag - s1.imag)

    def g(c):
        t = graph_mod._solve_t(func, c, 10.0, hint)
        if t is None:
            raise EmptyWindow("curve lost during quantization solve")
        return func(complex(c, -t)).imag - target

    c_star = brentq(g, lo_c, hi_c, xtol=1e-12)
    t_star = graph_mod._solve_t(func, c_star, 10.0, hint)
    return complex(c_star, -t_star)


def os_phi(t: float, alpha: float) -> float:
    """(1/2 pi) arg sinh(alpha(2 - e^{-i pi/4} t))."""
    return cmath.phase(cmath.sinh(
        alpha * (2.0 - cmath.exp(-1j * math.pi / 4.0) * t))) / (2.0 * math.pi)


def os_c(t: float, alpha: float) -> float:
    """2 sqrt(pi) |sinh(alpha(2 - e^{-i pi/4} t))| / sinh(2 alpha)."""
    return 2.0 * math.sqrt(math.pi) * abs(cmath.sinh(
        alpha * (2.0 - cmath.exp(-1j * math.pi / 4.0) * t))) \
        / math.sinh(2.0 * alpha)


def predict_os_couette(alpha: float, reynolds: float,
                       depth: float = 6.0) -> list[Prediction]:
    """Boundary-layer predictions for viscous plane Couette flow.

    eps = 1/(alpha R).  In the rotated frame (origin -1, abscissa toward
    -i/sqrt 3) the prediction abscissae are t_k^{+-} = eps^{1/3}(3 pi [k - 1/4
    -+ phi])^{2/3} with the ordinate offsets gamma_{+-}(t_k); mirrors across
    the imaginary axis and the pure-imaginary chain complete the picture.
    """
    if alpha <= 0 or reynolds <= 0:
        raise DomainError("alpha and reynolds must be positive")
    eps = 1.0 / (alpha * reynolds)
    t_lo = eps ** (1.0 / 3.0) * abs(math.log(eps))
    t_hi = 2.0 / math.sqrt(3.0) \
        - (2.0 / 3.0) * 0.75 ** 0.75 * math.sqrt(eps) * abs(math.log(eps))
    if t_hi <= t_lo:
        raise DomainError("empty index window; Reynolds number too small")
    e_t = cmath.exp(-1j * math.pi / 6.0)
    e_n = cmath.exp(1j * math.pi / 3.0)
    preds: list[Prediction] = []
    for branch_sign, tag in ((1.0, CurveTag.GAMMA_MINUS),
                             (-1.0, CurveTag.GAMMA_MINUS)):
        k = 1
        while True:
            seed = (3.0 * math.pi * math.sqrt(eps) * k) ** (2.0 / 3.0)
            shift = os_phi(seed, alpha)
            arg = k - 0.25 - branch_sign * shift
            if arg <= 0:
                k += 1
                continue
            t_k = eps ** (1.0 / 3.0) * (3.0 * math.pi * arg) ** (2.0 / 3.0)
            if t_k > t_hi:
                break
            if t_k >= t_lo:
                g = branch_sign * math.sqrt(eps / t_k) * math.log(
                    os_c(t_k, alpha) * t_k ** 0.75 / eps ** 0.25)
                mu = -1.0 + t_k * e_t + g * e_n
                rad = _RADIUS_C * eps ** 0.75 * t_k ** (-1.25)
                ph = (2.0 / 3.0) * t_k ** 1.5
                preds.append(Prediction(tag, k if branch_sign > 0 else -k,
                                        mu, rad, ph))
                preds.append(Prediction(CurveTag.GAMMA_PLUS,
                                        k if branch_sign > 0 else -k,
                                        -mu.conjugate(), rad, ph, mirror=True))
            k += 1
    ray_preds, _ = predict_model_couette(eps, depth=depth)
    preds.extend(p for p in ray_preds if p.tag is CurveTag.GAMMA_INFTY)
    return preds


def counting_function(profile: Profile, tag: CurveTag, lam: complex,
                      eps: float) -> float:
    """Main term of the eigenvalue counting function at a point on a curve."""
    lam = complex(lam)
    if profile.kind is ProfileKind.LINEAR:
        scale = math.pi * math.sqrt(eps)
        if tag is CurveTag.GAMMA_INFTY:
            return phase.f_couette(lam).real / scale
        q = phase.q_functionals(profile, lam)
        func_val = q[1] if tag is CurveTag.GAMMA_PLUS else q[2]
        return abs(func_val.imag) / scale + 0.25
    if profile.kind is ProfileKind.QUADRATIC and tag is CurveTag.GAMMA_0:
        return abs(lam) / (2.0 * eps)
    func = graph_mod.defining_functional(profile, tag)
    n = abs(func(lam).imag) / (math.pi * eps)
    if tag is not CurveTag.GAMMA_INFTY:
        n += 0.25
    return n
