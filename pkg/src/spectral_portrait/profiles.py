"""Velocity profiles q(x): closed-form evaluation, ranges and turning points.

The shipped profiles are a closed enumeration.  Every kind has an analytic
continuation to the lower half z-plane given by its closed form, which is
what the phase integrals and Stokes tracing rely on.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import NoRootInDomain


class ProfileKind(enum.Enum):
    LINEAR = "linear"
    QUADRATIC = "quadratic"
    SHIFTED_SQUARE = "shifted_square"
    HALF_SINE = "half_sine"


@dataclass(frozen=True)
class Reduction:
    """Scaling back to original quadratic coefficients.

    A profile a2*x^2 + a1*x + a0 is normalized to (x - beta)^2; the original
    spectral parameter is lam_orig = scale * lam + shift and the original
    small parameter is eps_orig = sqrt(scale) * eps.
    """

    scale: float
    shift: float


@dataclass(frozen=True)
class Profile:
    kind: ProfileKind
    beta: float = 0.0
    reduction: Reduction | None = None

    def __post_init__(self):
        if self.kind is ProfileKind.QUADRATIC and not -1.0 < self.beta < 1.0:
            raise ValueError(f"quadratic shift must lie in (-1, 1), got {self.beta}")

    @property
    def monotone(self) -> bool:
        return self.kind is not ProfileKind.QUADRATIC


def linear() -> Profile:
    return Profile(ProfileKind.LINEAR)


def shifted_square() -> Profile:
    return Profile(ProfileKind.SHIFTED_SQUARE)


def half_sine() -> Profile:
    return Profile(ProfileKind.HALF_SINE)


def quadratic(beta: float, reduction: Reduction | None = None) -> Profile:
    return Profile(ProfileKind.QUADRATIC, beta=beta, reduction=reduction)


def quadratic_from_coefficients(a2: float, a1: float, a0: float) -> Profile:
    """Normalize a2*x^2 + a1*x + a0 (a2 > 0) to (x - beta)^2 with a reduction record."""
    if a2 <= 0:
        raise ValueError("leading coefficient must be positive")
    beta = -a1 / (2.0 * a2)
    shift = a0 - a1 * a1 / (4.0 * a2)
    return quadratic(beta, Reduction(scale=a2, shift=shift))


def eval(profile: Profile, z: complex) -> complex:
    if profile.kind is ProfileKind.LINEAR:
        return complex(z)
    if profile.kind is ProfileKind.QUADRATIC:
        return (z - profile.beta) ** 2
    if profile.kind is ProfileKind.SHIFTED_SQUARE:
        return (z + 1) ** 2 / 4.0
    return cmath.sin(math.pi * z / 2.0)


def eval_d1(profile: Profile, z: complex) -> complex:
    if profile.kind is ProfileKind.LINEAR:
        return 1.0 + 0.0j
    if profile.kind is ProfileKind.QUADRATIC:
        return 2.0 * (z - profile.beta)
    if profile.kind is ProfileKind.SHIFTED_SQUARE:
        return (z + 1) / 2.0
    return (math.pi / 2.0) * cmath.cos(math.pi * z / 2.0)


def eval_d2(profile: Profile, z: complex) -> complex:
    if profile.kind is ProfileKind.LINEAR:
        return 0.0 + 0.0j
    if profile.kind is ProfileKind.QUADRATIC:
        return 2.0 + 0.0j
    if profile.kind is ProfileKind.SHIFTED_SQUARE:
        return 0.5 + 0.0j
    return -(math.pi ** 2 / 4.0) * cmath.sin(math.pi * z / 2.0)


def range_of(profile: Profile) -> tuple[float, float]:
    """Endpoint values (a, b) = (q(-1), q(1)).

    For the quadratic family a = (-1-beta)^2 may exceed b = (1-beta)^2; the
    semistrip floor is 0 in that case (see `semistrip`).
    """
    if profile.kind is ProfileKind.LINEAR:
        return (-1.0, 1.0)
    if profile.kind is ProfileKind.QUADRATIC:
        return ((-1.0 - profile.beta) ** 2, (1.0 - profile.beta) ** 2)
    if profile.kind is ProfileKind.SHIFTED_SQUARE:
        return (0.0, 1.0)
    return (-1.0, 1.0)


def semistrip(profile: Profile) -> tuple[float, float]:
    """Real-part bounds of the semistrip confining the spectrum."""
    a, b = range_of(profile)
    if profile.kind is ProfileKind.QUADRATIC:
        return (0.0, max(a, b))
    return (a, b)


def _inverse_seed(profile: Profile, lam: complex) -> complex:
    """Closed-form continuation of the real inverse into the lower half-plane."""
    if profile.kind is ProfileKind.LINEAR:
        return complex(lam)
    if profile.kind is ProfileKind.SHIFTED_SQUARE:
        return 2.0 * cmath.sqrt(lam) - 1.0
    # half-sine: principal arcsin preserves the sign of Im
    return (2.0 / math.pi) * cmath.asin(lam)


def turning_points(profile: Profile, lam: complex, max_iter: int = 50) -> list[complex]:
    """Roots of q(xi) = lam relevant to [-1, 1].

    Monotone kinds return the single continuation of the real inverse; the
    quadratic kind returns beta +/- sqrt(lam) with the principal branch.
    """
    lam = complex(lam)
    if profile.kind is ProfileKind.QUADRATIC:
        s = cmath.sqrt(lam)
        return [profile.beta + s, profile.beta - s]
    xi = _inverse_seed(profile, lam)
    tol = 1e-13 * (1.0 + abs(lam))
    for _ in range(max_iter):
        f = eval(profile, xi) - lam
        if abs(f) <= tol:
            return [xi]
        d = eval_d1(profile, xi)
        if d == 0:
            break
        xi = xi - f / d
    f = eval(profile, xi) - lam
    if abs(f) <= 1e-12 * (1.0 + abs(lam)):
        return [xi]
    raise NoRootInDomain(
        f"turning-point continuation failed for {profile.kind.value} at lam={lam}"
    )


def from_config(cfg: dict) -> Profile:
    """Build a profile from its JSON config form."""
    kind = ProfileKind(cfg["kind"])
    if kind is ProfileKind.QUADRATIC:
        red = None
        if "scale" in cfg or "shift" in cfg:
            red = Reduction(scale=float(cfg.get("scale", 1.0)),
                            shift=float(cfg.get("shift", 0.0)))
        return Profile(kind, beta=float(cfg.get("beta", 0.0)), reduction=red)
    return Profile(kind)


def to_config(profile: Profile) -> dict:
    cfg: dict = {"kind": profile.kind.value}
    if profile.kind is ProfileKind.QUADRATIC:
        cfg["beta"] = profile.beta
        if profile.reduction is not None:
            cfg["scale"] = profile.reduction.scale
            cfg["shift"] = profile.reduction.shift
    return cfg
