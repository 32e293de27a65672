"""Chebyshev collocation matrices for the model and channel-flow operators.

Grids are Chebyshev-Gauss-Lobatto, x_j = cos(pi j / n), with the
differentiation matrix assembled in the standard barycentric form and its
diagonal fixed by the negative-sum trick.  The model operator is restricted
to interior nodes (Dirichlet) or bordered with a scaled derivative row that
pushes the constraint modes to a sentinel magnitude (mixed conditions).  The
fourth-order problem is discretized on the lifted unknown y = (1 - x^2) u,
which imposes the clamped conditions y(+-1) = y'(+-1) = 0 exactly once u
vanishes at the endpoints.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import profiles
from .errors import DomainError, SingularB
from .profiles import Profile, ProfileKind

_SENTINEL = 1e8


class BoundaryCondition(enum.Enum):
    DIRICHLET = "dirichlet"
    MIXED_LEFT_NEUMANN = "mixed_left_neumann"
    CLAMPED = "clamped"


class SignConvention(enum.Enum):
    PLUS_I = "plus_i"
    MINUS_I = "minus_i"


@dataclass(frozen=True)
class CollocationGrid:
    n: int
    nodes: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d4: np.ndarray


@dataclass(frozen=True)
class OperatorPencil:
    a_matrix: np.ndarray
    b_matrix: np.ndarray
    bc: BoundaryCondition
    meta: dict = field(default_factory=dict)


@lru_cache(maxsize=32)
def _grid_cached(n: int) -> CollocationGrid:
    j = np.arange(n + 1)
    x = np.cos(np.pi * j / n)
    c = np.ones(n + 1)
    c[0] = 2.0
    c[n] = 2.0
    c *= (-1.0) ** j
    dx = x[:, None] - x[None, :]
    d1 = np.outer(c, 1.0 / c) / (dx + np.eye(n + 1))
    d1 -= np.diag(d1.sum(axis=1))
    # re-zero the row sums after each product: the exact operators annihilate
    # constants, and restoring that property cheaply cancels most of the
    # roundoff accumulated in the huge near-corner entries
    d2 = d1 @ d1
    d2 -= np.diag(d2.sum(axis=1))
    d4 = d2 @ d2
    d4 -= np.diag(d4.sum(axis=1))
    return CollocationGrid(n, x, d1, d2, d4)


def collocation_grid(n: int) -> CollocationGrid:
    """Gauss-Lobatto grid of degree n with differentiation operators."""
    if not 2 <= n <= 2048:
        raise DomainError(f"grid degree n={n} outside [2, 2048]")
    return _grid_cached(n)


def _eps_effective(profile: Profile, eps: float) -> float:
    """Coefficient of i y'' in the assembled operator.

    The linear profile's normalization carries eps itself; the other
    profiles carry eps squared.
    """
    return eps if profile.kind is ProfileKind.LINEAR else eps * eps


def assemble_model(profile: Profile, eps: float,
                   bc: BoundaryCondition = BoundaryCondition.DIRICHLET,
                   n: int = 400,
                   sign: SignConvention = SignConvention.PLUS_I) -> OperatorPencil:
    """Collocation matrix for i eps_eff y'' + q(x) y = lambda y on [-1, 1]."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    grid = collocation_grid(n)
    eps_eff = _eps_effective(profile, eps)
    unit = 1j if sign is SignConvention.PLUS_I else -1j
    q = np.array([profiles.eval(profile, float(x)) for x in grid.nodes])
    m = unit * eps_eff * grid.d2 + np.diag(q)
    if bc is BoundaryCondition.DIRICHLET:
        inner = m[1:-1, 1:-1]
    elif bc is BoundaryCondition.MIXED_LEFT_NEUMANN:
        # drop x = +1 (Dirichlet end); replace the x = -1 row with the scaled
        # derivative constraint, which parks the constraint mode near the
        # sentinel magnitude
        inner = m[1:, 1:].copy()
        inner[-1, :] = _SENTINEL * grid.d1[-1, 1:]
    else:
        raise DomainError(f"{bc.value} is not a model boundary condition")
    meta = {"profile": profiles.to_config(profile), "eps": eps,
            "eps_eff": eps_eff, "n": n, "bc": bc.value,
            "sign_convention": sign.value}
    return OperatorPencil(inner, np.eye(inner.shape[0], dtype=complex),
                          BoundaryCondition(bc), meta)


def assemble_os(profile: Profile, alpha: float, reynolds: float,
                n: int = 200,
                sign: SignConvention = SignConvention.PLUS_I) -> OperatorPencil:
    """Generalized pencil for the fourth-order channel-flow eigenproblem.

    (D^2 - a^2)^2 y - i a R [q (D^2 - a^2) - q''] y = -i a R lam (D^2 - a^2) y
    with clamped conditions, on the lifted unknown y = (1 - x^2) u with u = 0
    at the endpoints.  On the lifted interior basis the fourth derivative is
    (1 - x^2) u'''' - 8 x u''' - 12 u'' and the second is
    (1 - x^2) u'' - 4 x u' - 2 u.
    """
    if alpha <= 0 or reynolds <= 0:
        raise DomainError("alpha and reynolds must be positive")
    grid = collocation_grid(n)
    x = grid.nodes[1:-1]
    d1 = grid.d1[1:-1, 1:-1]
    d2 = grid.d2[1:-1, 1:-1]
    d3 = (grid.d1 @ grid.d2)[1:-1, 1:-1]
    d4 = grid.d4[1:-1, 1:-1]
    s = np.diag(1.0 - x * x)
    xd = np.diag(x)
    ident = np.eye(n - 1)
    # lifted second and fourth derivatives of y = (1 - x^2) u
    l2 = s @ d2 - 4.0 * xd @ d1 - 2.0 * ident
    l4 = s @ d4 - 8.0 * xd @ d3 - 12.0 * d2
    # lifted (D^2 - alpha^2) applied to y
    lap = l2 - alpha * alpha * s
    bilap = l4 - 2.0 * alpha * alpha * l2 + alpha ** 4 * s
    unit = 1j if sign is SignConvention.PLUS_I else -1j
    q = np.array([profiles.eval(profile, float(xx)) for xx in x])
    qpp = np.array([profiles.eval_d2(profile, float(xx)) for xx in x])
    coef = unit * alpha * reynolds
    a = bilap - coef * (np.diag(q) @ lap - np.diag(qpp) @ s)
    b = -coef * lap
    cond = np.linalg.cond(b)
    if cond > 1e12:
        raise SingularB(f"lifted mass matrix condition number {cond:.2e}")
    meta = {"profile": profiles.to_config(profile), "alpha": alpha,
            "reynolds": reynolds, "eps": 1.0 / (alpha * reynolds), "n": n,
            "bc": BoundaryCondition.CLAMPED.value,
            "sign_convention": sign.value}
    return OperatorPencil(a, b, BoundaryCondition.CLAMPED, meta)
