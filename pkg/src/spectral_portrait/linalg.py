"""Dense complex eigenvalue computation and spurious-mode filtering.

The solver itself is the LAPACK path exposed through numpy/scipy; this
module owns the deterministic ordering, sentinel flagging, and the
coarse/fine agreement filter that separates converged eigenvalues from
discretization artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import SingularPencil

SENTINEL_MODULUS = 1e7


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by Im descending then Re ascending, with flags."""

    values: np.ndarray
    sentinel: np.ndarray
    spurious: np.ndarray
    meta: dict = field(default_factory=dict)

    def kept(self) -> np.ndarray:
        """Eigenvalues that are neither sentinel nor flagged spurious."""
        return self.values[~self.sentinel & ~self.spurious]


def _sorted_spectrum(vals: np.ndarray, meta: dict) -> Spectrum:
    vals = np.asarray(vals, dtype=complex)
    finite = np.isfinite(vals.real) & np.isfinite(vals.imag)
    vals = np.where(finite, vals, complex(2.0 * SENTINEL_MODULUS))
    order = np.lexsort((vals.real, -vals.imag))
    vals = vals[order]
    sentinel = np.abs(vals) >= SENTINEL_MODULUS
    return Spectrum(vals, sentinel, np.zeros(len(vals), dtype=bool), dict(meta))


def eigenvalues(matrix: np.ndarray, meta: dict | None = None) -> Spectrum:
    """All eigenvalues of a dense complex matrix."""
    vals = np.linalg.eigvals(np.asarray(matrix, dtype=complex))
    return _sorted_spectrum(vals, meta or {})


def generalized_eigenvalues(a: np.ndarray, b: np.ndarray,
                            meta: dict | None = None) -> Spectrum:
    """Eigenvalues of the pencil (a, b); infinite ones flagged sentinel.

    A well-conditioned b is inverted directly; otherwise the QZ path is
    taken.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise SingularPencil("pencil matrices must be square and equal-sized")
    try:
        cond = np.linalg.cond(b)
        if cond <= 1e10:
            vals = np.linalg.eigvals(np.linalg.solve(b, a))
        else:
            vals = scipy.linalg.eigvals(a, b)
    except np.linalg.LinAlgError:
        try:
            vals = scipy.linalg.eigvals(a, b)
        except Exception as exc:
            raise SingularPencil(f"both eigensolver paths failed: {exc}")
    return _sorted_spectrum(vals, meta or {})


def solve_pencil(pencil, meta_extra: dict | None = None) -> Spectrum:
    """Spectrum of an assembled OperatorPencil, meta carried through."""
    meta = dict(pencil.meta)
    if meta_extra:
        meta.update(meta_extra)
    if np.array_equal(pencil.b_matrix,
                      np.eye(pencil.b_matrix.shape[0], dtype=complex)):
        return eigenvalues(pencil.a_matrix, meta)
    return generalized_eigenvalues(pencil.a_matrix, pencil.b_matrix, meta)


def filter_spurious(coarse: Spectrum, fine: Spectrum,
                    tol: float = 1e-6) -> Spectrum:
    """Keep fine eigenvalues that a coarse solve reproduces.

    A fine eigenvalue is kept when some coarse eigenvalue lies within
    tol * (1 + |lambda|); everything else is flagged spurious (sentinels
    stay sentinels).
    """
    ref = coarse.values[~coarse.sentinel]
    spurious = np.ones(len(fine.values), dtype=bool)
    if len(ref):
        for i, lam in enumerate(fine.values):
            if fine.sentinel[i]:
                spurious[i] = False
                continue
            if np.min(np.abs(ref - lam)) <= tol * (1.0 + abs(lam)):
                spurious[i] = False
    return Spectrum(fine.values, fine.sentinel, spurious, dict(fine.meta))
