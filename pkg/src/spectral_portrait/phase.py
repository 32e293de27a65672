"""Branch-tracked phase integrals, the Q functionals, f(lambda), Stokes lines.

The integrand throughout is w(xi) = sqrt(i(q(xi) - lambda)).  On the real
axis with Im lambda <= 0 the argument i(q - lambda) stays in the closed upper
half-plane, so w = e^{i pi/4} sqrt(q - lambda) with the principal square root
is globally continuous there; that principal determination is exactly the
branch with Q(a) = e^{i pi/4} alpha, alpha > 0.  Off the axis the branch is
continued numerically: the principal value is recomputed at dense checkpoints
and a sign flip is recorded whenever it jumps to the other sheet.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import profiles
from .errors import BranchJump, StallError
from .profiles import Profile, ProfileKind

_W_PHASE = cmath.exp(1j * math.pi / 4.0)
_GL_X, _GL_W = leggauss(24)
_N_CHECK = 512
_TP_SNAP = 1e-8


@dataclass(frozen=True)
class BranchedPath:
    """Polyline in the xi-plane with the integrand sheet pinned at its start.

    branch_seed is the value of sqrt(i(q - lambda)) at the first node; only
    its sign relative to the principal determination matters.
    """

    nodes: tuple[complex, ...]
    branch_seed: complex


class Truncation(enum.Enum):
    HIT_BOUNDARY = "hit_boundary"
    HIT_TURNING_POINT = "hit_turning_point"
    MAX_LENGTH = "max_length"


@dataclass(frozen=True)
class StokesLine:
    tag: str
    points: tuple[complex, ...]
    truncation: Truncation


@dataclass(frozen=True)
class StokesComplex:
    turning_point: complex
    lines: tuple[StokesLine, ...]


def _q_array(profile: Profile, xi: np.ndarray) -> np.ndarray:
    if profile.kind is ProfileKind.LINEAR:
        return xi.astype(complex)
    if profile.kind is ProfileKind.QUADRATIC:
        return (xi - profile.beta) ** 2
    if profile.kind is ProfileKind.SHIFTED_SQUARE:
        return (xi + 1.0) ** 2 / 4.0
    return np.sin(math.pi * xi / 2.0)


def _principal_w(profile: Profile, xi, lam: complex):
    """Principal determination e^{i pi/4} sqrt(q(xi) - lambda), vectorized."""
    xi = np.asarray(xi, dtype=complex)
    return _W_PHASE * np.sqrt(_q_array(profile, xi) - lam)


def _continued_signs(vals: np.ndarray, seed_sign: float) -> np.ndarray:
    """Sheet signs along a checkpoint sequence of principal values.

    A flip is recorded when the continued previous value is closer to the
    negated current principal value than to the current one.  An ambiguous
    comparison away from the integrand's zeros means the checkpoints are too
    sparse relative to a branch cut.
    """
    n = len(vals)
    signs = np.empty(n)
    signs[0] = seed_sign
    scale = float(np.max(np.abs(vals))) + 1e-300
    for i in range(1, n):
        prev = signs[i - 1] * vals[i - 1]
        cur = vals[i]
        d_same = abs(prev - cur)
        d_flip = abs(prev + cur)
        signs[i] = 1.0 if d_same <= d_flip else -1.0
        lo, hi = min(d_same, d_flip), max(d_same, d_flip)
        if hi > 0.3 * scale and lo > 0.5 * hi and abs(cur) > 1e-6 * scale:
            raise BranchJump(
                "sheet continuation ambiguous between checkpoints "
                f"{i - 1} and {i}")
    return signs


def _leg_quadrature(f, tol: float):
    """Adaptive composite 24-point Gauss quadrature of f over [0, 1].

    f maps an array of parameters to integrand values (including the path
    Jacobian).  Panels are doubled until two consecutive composite estimates
    agree within tol.
    """
    prev = None
    panels = 4
    while panels <= 512:
        h = 1.0 / panels
        starts = np.arange(panels) * h
        nodes = (starts[:, None] + 0.5 * h * (_GL_X + 1.0)[None, :]).ravel()
        vals = f(nodes).reshape(panels, -1)
        total = 0.5 * h * complex(np.sum(vals @ _GL_W))
        if prev is not None and abs(total - prev) <= tol:
            return total
        prev = total
        panels *= 2
    return prev


def _segment_integral(profile: Profile, a: complex, b: complex, lam: complex,
                      sign_at_a: float, tol: float,
                      end_is_turning_point: bool = False,
                      start_is_turning_point: bool = False):
    """Integral of the branch-continued w along the straight segment a -> b.

    Returns (integral, sheet sign at b).  When either endpoint is a turning
    point the substitution xi = tp + (other - tp) u^2 absorbs the
    square-root zero of the integrand.
    """
    if a == b:
        return 0.0 + 0.0j, sign_at_a
    if end_is_turning_point:
        us = np.linspace(1.0, 0.0, _N_CHECK + 1)
        pts = b + (a - b) * us ** 2
    elif start_is_turning_point:
        us = np.linspace(0.0, 1.0, _N_CHECK + 1)
        pts = a + (b - a) * us ** 2
    else:
        ts = np.linspace(0.0, 1.0, _N_CHECK + 1)
        pts = a + (b - a) * ts
    vals = _principal_w(profile, pts, lam)
    signs = _continued_signs(vals, sign_at_a)

    if end_is_turning_point:
        def f(u):
            idx = np.clip(np.round((1.0 - u) * _N_CHECK).astype(int),
                          0, _N_CHECK)
            xi = b + (a - b) * u ** 2
            return -signs[idx] * _principal_w(profile, xi, lam) \
                * 2.0 * u * (a - b)
    elif start_is_turning_point:
        def f(u):
            idx = np.clip(np.round(u * _N_CHECK).astype(int), 0, _N_CHECK)
            xi = a + (b - a) * u ** 2
            return signs[idx] * _principal_w(profile, xi, lam) \
                * 2.0 * u * (b - a)
    else:
        def f(t):
            idx = np.clip(np.round(t * _N_CHECK).astype(int), 0, _N_CHECK)
            xi = a + (b - a) * t
            return signs[idx] * _principal_w(profile, xi, lam) * (b - a)
    return _leg_quadrature(f, tol), signs[-1]


def _path_length(nodes) -> float:
    return sum(abs(nodes[i + 1] - nodes[i]) for i in range(len(nodes) - 1))


def phase_integral(profile: Profile, path: BranchedPath, lam: complex) -> complex:
    """Integral of sqrt(i(q - lambda)) along the path, branch from the seed."""
    nodes = path.nodes
    if len(nodes) < 2:
        return 0.0 + 0.0j
    w0 = complex(_principal_w(profile, np.array([nodes[0]]), lam)[0])
    if abs(w0) < 1e-14:
        sign = 1.0
    else:
        sign = 1.0 if abs(path.branch_seed - w0) <= abs(path.branch_seed + w0) \
            else -1.0
    try:
        tps = profiles.turning_points(profile, lam)
    except Exception:
        tps = []
    tol = 1e-11 * (1.0 + _path_length(nodes)) / max(1, len(nodes) - 1)
    total = 0.0 + 0.0j
    for i in range(len(nodes) - 1):
        a, b = complex(nodes[i]), complex(nodes[i + 1])
        end_tp = any(abs(b - tp) < _TP_SNAP for tp in tps)
        start_tp = any(abs(a - tp) < _TP_SNAP for tp in tps)
        val, sign = _segment_integral(profile, a, b, lam, sign, tol,
                                      end_is_turning_point=end_tp,
                                      start_is_turning_point=start_tp and not end_tp)
        total += val
    return total


def straight_path(profile: Profile, a: complex, b: complex,
                  lam: complex) -> BranchedPath:
    """Single-segment path seeded with the principal determination at a."""
    seed = complex(_principal_w(profile, np.array([complex(a)]), lam)[0])
    return BranchedPath((complex(a), complex(b)), seed)


def endpoint_integral(profile: Profile, endpoint: float, lam: complex,
                      tp: complex | None = None) -> complex:
    """Integral of w from the turning point to a real endpoint of [-1, 1].

    The path runs endpoint -> (Re tp, 0) -> tp (axis leg first, then the
    leg into the turning point) and the result is negated, which keeps the
    sheet seeded by the globally continuous principal branch on the real
    axis.  For the quadratic family, a leg passing near the other turning
    point is detoured around it.
    """
    lam = complex(lam)
    tps = profiles.turning_points(profile, lam)
    if tp is None:
        tp = tps[0]
    others = [t for t in tps if abs(t - tp) > 1e-12]
    mid = complex(tp.real, 0.0)
    nodes: list[complex] = [complex(endpoint)]
    lo, hi = min(endpoint, tp.real), max(endpoint, tp.real)
    for other in others:
        if lo - 1e-6 <= other.real <= hi + 1e-6 and abs(other.imag) < 1e-3:
            bump = -1e-3 if other.imag >= 0 else 1e-3
            nodes.append(complex(other.real, bump))
    nodes.extend([mid, tp])
    sign = 1.0
    tol = 1e-11 * (1.0 + _path_length(nodes)) / max(1, len(nodes) - 1)
    total = 0.0 + 0.0j
    for i in range(len(nodes) - 1):
        a, b = nodes[i], nodes[i + 1]
        val, sign = _segment_integral(profile, a, b, lam, sign, tol,
                                      end_is_turning_point=(i == len(nodes) - 2))
        total += val
    return -total


def q_full(profile: Profile, lam: complex) -> complex:
    """Q(lambda) = integral of w over [-1, 1] on the principal branch."""
    lam = complex(lam)

    def f(t):
        x = -1.0 + 2.0 * t
        return 2.0 * _principal_w(profile, x, lam)

    return _leg_quadrature(f, 1e-12)


def q_functionals(profile: Profile, lam: complex):
    """(Q, Q+, Q-) with Q+ = int_{xi_lam}^{1} w, Q- = -int_{xi_lam}^{-1} w."""
    lam = complex(lam)
    qp = endpoint_integral(profile, 1.0, lam)
    qm = -endpoint_integral(profile, -1.0, lam)
    return q_full(profile, lam), qp, qm


def f_couette(lam: complex) -> complex:
    """(2/3)e^{-i pi/4}[(1-lambda)^{3/2} - (-1-lambda)^{3/2}].

    Principal powers put both cuts on the real axis outside [-1, 1], off the
    closed lower half-plane; f(-i/sqrt 3) is real positive.
    """
    lam = complex(lam)
    return (2.0 / 3.0) * cmath.exp(-1j * math.pi / 4.0) * (
        (1.0 - lam) ** 1.5 - (-1.0 - lam) ** 1.5)


def _stokes_directions(profile: Profile, tp: complex) -> list[float]:
    """Initial Re S = 0 directions at a simple turning point.

    Locally S ~ (2/3) A^{1/2} (z - tp)^{3/2} with A = i q'(tp), so the level
    directions are theta_m = (2m + 1) pi/3 - arg(A)/3.
    """
    a_loc = 1j * profiles.eval_d1(profile, tp)
    base = -cmath.phase(a_loc) / 3.0
    return [base + (2 * m + 1) * math.pi / 3.0 for m in range(3)]


def _tag_directions(dirs: list[float]) -> dict[str, float]:
    """Assign left/right/lower to the three directions by compass heading."""
    def norm(t):
        return (t + math.pi) % (2.0 * math.pi) - math.pi

    ds = [norm(t) for t in dirs]
    right = min(ds, key=lambda t: abs(t))
    left = min(ds, key=lambda t: math.pi - abs(t))
    lower = next(t for t in ds if t is not right and t is not left)
    return {"right": right, "left": left, "lower": lower}


def trace_stokes(profile: Profile, lam: complex,
                 max_len: float = 6.0) -> StokesComplex:
    """Trace the three Re S = 0 level lines from the turning point.

    Arclength RK4 on dz/ds = i conj(w)/|w| with the accumulated Re S
    projected out after every step.
    """
    lam = complex(lam)
    tps = profiles.turning_points(profile, lam)
    tp = tps[0]
    others = [t for t in tps if abs(t - tp) > 1e-12]
    tagged = _tag_directions(_stokes_directions(profile, tp))

    lines = []
    for tag, theta in tagged.items():
        r0 = 1e-4
        z = tp + r0 * cmath.exp(1j * theta)
        # S at the offset point from the local cubic model
        a_loc = 1j * profiles.eval_d1(profile, tp)
        s_val = (2.0 / 3.0) * cmath.sqrt(a_loc) * (z - tp) ** 1.5
        w_prev = _w_on_sheet(profile, z, lam, seed=None)
        direction = 1j * w_prev.conjugate() / abs(w_prev)
        if (direction.real * math.cos(theta) +
                direction.imag * math.sin(theta)) < 0:
            flip = -1.0
        else:
            flip = 1.0
        pts = [tp, z]
        length = abs(z - tp)
        trunc = Truncation.MAX_LENGTH
        while length < max_len:
            h = 1e-3 * (1.0 + abs(z - tp))

            def vel(zz, w_ref):
                w = _w_on_sheet(profile, zz, lam, seed=w_ref)
                return flip * 1j * w.conjugate() / abs(w), w

            k1, w1 = vel(z, w_prev)
            k2, _ = vel(z + 0.5 * h * k1, w1)
            k3, _ = vel(z + 0.5 * h * k2, w1)
            k4, _ = vel(z + h * k3, w1)
            dz = h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
            z_new = z + dz
            w_new = _w_on_sheet(profile, z_new, lam, seed=w1)
            s_val += 0.5 * (w_prev + w_new) * dz
            # project the Re S drift out
            corr = -s_val.real * w_new.conjugate() / abs(w_new) ** 2
            if abs(corr) > 0.5 * h:
                raise StallError(f"drift correction exceeds step at z={z_new}")
            z_corr = z_new + corr
            w_corr = _w_on_sheet(profile, z_corr, lam, seed=w_new)
            s_val += 0.5 * (w_new + w_corr) * corr
            z, w_prev = z_corr, w_corr
            length += abs(dz)
            pts.append(z)
            if abs(z.imag) > 2.0 or abs(z.real) > 3.0:
                trunc = Truncation.HIT_BOUNDARY
                break
            if any(abs(z - t) < 1e-4 for t in others):
                trunc = Truncation.HIT_TURNING_POINT
                break
        lines.append(StokesLine(tag, tuple(pts), trunc))
    return StokesComplex(tp, tuple(lines))


def _w_on_sheet(profile: Profile, z: complex, lam: complex,
                seed: complex | None) -> complex:
    """Principal w(z), sign-aligned to a nearby reference value if given."""
    w = complex(_principal_w(profile, np.array([z]), lam)[0])
    if seed is not None and abs(seed - w) > abs(seed + w):
        return -w
    return w
