"""The Airy solution v(xi), its rotations, logarithmic evaluation and zeros.

v is the solution of v'' = xi v decaying like exp(-(2/3)xi^{3/2})/(2 sqrt(pi)
xi^{1/4}) in the sector |arg xi| < pi, i.e. the classical Airy function of the
first kind.  Evaluation switches between the Maclaurin series for small |xi|
and the asymptotic expansion for large |xi|; near the anti-Stokes rays
arg xi ~ +-pi the rotation identity

    v(xi) = e^{-i pi/3} v(e^{2 pi i/3} xi) + e^{i pi/3} v(e^{-2 pi i/3} xi)

routes the evaluation through sectors where the expansion is valid.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import ConvergenceFailure, Overflow

_TWO_SQRT_PI = 2.0 * math.sqrt(math.pi)
_LOG_TWO_SQRT_PI = math.log(_TWO_SQRT_PI)

# initial values v(0), -v'(0)
_C1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_C2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)

# Crossover between Maclaurin series and asymptotic expansion.  The series
# loses digits to cancellation at a rate that depends on the direction (the
# recessive solution decays fastest near the positive axis), so the crossover
# radius shrinks from 7 on the anti-Stokes rays to about 5.7 on the positive
# axis; see _use_series.
SERIES_RADIUS = 7.0
_N_SERIES = 90
_N_ASYMPTOTIC = 16

_ROT = cmath.exp(2j * math.pi / 3.0)

def _u_coefficients(n: int) -> list[float]:
    u = [1.0]
    for k in range(1, n + 1):
        u.append(math.gamma(3 * k + 0.5) /
                 (54.0 ** k * math.factorial(k) * math.gamma(k + 0.5)))
    return u


_U = _u_coefficients(_N_ASYMPTOTIC)
_V = [1.0] + [(6 * k + 1) / (1.0 - 6 * k) * _U[k] for k in range(1, _N_ASYMPTOTIC + 1)]


class EvalMethod(enum.Enum):
    SERIES = "series"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class AirySample:
    xi: complex
    value: complex
    method: EvalMethod


@dataclass(frozen=True)
class AiryZeros:
    """Zeros r_k of v(-r), 1-indexed: r[0] is r_1."""

    r: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.r)

    def __getitem__(self, k: int) -> float:
        """1-indexed access: zeros[1] == r_1."""
        if k < 1:
            raise IndexError("zero index starts at 1")
        return self.r[k - 1]


def _use_series(xi: complex) -> bool:
    """Pick the branch with the smaller relative error in direction arg xi.

    The series error is ~exp((2/3)|xi|^{3/2}(1 + cos(3 theta/2))) * eps while
    the optimally truncated expansion reaches ~exp(-(4/3)|xi|^{3/2}); the two
    balance where (2/3)|xi|^{3/2}(3 + cos(3 theta/2)) = |ln eps|.
    """
    r = abs(xi)
    if r >= SERIES_RADIUS:
        return False
    c = math.cos(1.5 * cmath.phase(xi))
    return r ** 1.5 < 55.2 / (3.0 + c)


def zero_seed(k: int) -> float:
    """Leading-order location of the k-th negative-axis zero."""
    return (1.5 * math.pi * (k - 0.25)) ** (2.0 / 3.0)


def _series_pair(xi: complex) -> tuple[complex, complex]:
    """Maclaurin values (v, v') at xi."""
    z3 = xi * xi * xi
    # f = sum 3^k (1/3)_k z^{3k} / (3k)!,  g = sum 3^k (2/3)_k z^{3k+1} / (3k+1)!
    f_term = 1.0 + 0.0j
    g_term = complex(xi)
    fd_term = 0.0 + 0.0j          # f' term, d/dz of z^{3k}
    gd_term = 1.0 + 0.0j
    f, g, fd, gd = f_term, g_term, fd_term, gd_term
    for k in range(1, _N_SERIES):
        f_term *= z3 / ((3 * k - 1) * (3 * k))
        g_term *= z3 / ((3 * k) * (3 * k + 1))
        f += f_term
        g += g_term
        # derivatives: (z^{3k})' = 3k z^{3k-1}; reuse ratios
        k3 = 3 * k
        fd_term = f_term * k3 / xi if xi != 0 else 0.0
        gd_term = g_term * (k3 + 1) / xi if xi != 0 else 0.0
        fd += fd_term
        gd += gd_term
        if abs(f_term) < 1e-20 * (1.0 + abs(f)) and abs(g_term) < 1e-20 * (1.0 + abs(g)):
            break
    if xi == 0:
        fd, gd = 0.0 + 0.0j, 1.0 + 0.0j
    return _C1 * f - _C2 * g, _C1 * fd - _C2 * gd


def _asymptotic_log_pair(xi: complex) -> tuple[complex, complex]:
    """(log v, log(-v')) by the large-|xi| expansion; needs |arg xi| <~ 2 pi/3."""
    zeta = (2.0 / 3.0) * xi ** 1.5
    inv = 1.0 / zeta
    sv = 1.0 + 0.0j
    sd = 1.0 + 0.0j
    term_v = 1.0 + 0.0j
    term_d = 1.0 + 0.0j
    prev = abs(term_v)
    for k in range(1, _N_ASYMPTOTIC + 1):
        fac = (-inv) ** k
        tv = _U[k] * fac
        if abs(tv) >= prev:
            break  # optimal truncation reached
        prev = abs(tv)
        sv += tv
        sd += _V[k] * fac
    log_v = -zeta - _LOG_TWO_SQRT_PI - 0.25 * cmath.log(xi) + cmath.log(sv)
    log_mdv = -zeta - _LOG_TWO_SQRT_PI + 0.25 * cmath.log(xi) + cmath.log(sd)
    return log_v, log_mdv


def _log_sum(la: complex, lb: complex) -> complex:
    """log(exp(la) + exp(lb)), dominant term factored out."""
    if la.real < lb.real:
        la, lb = lb, la
    return la + cmath.log(1.0 + cmath.exp(lb - la))


def _log_pair(xi: complex) -> tuple[complex, complex]:
    """(log v(xi), log v'(xi)-ish) for |xi| >= SERIES_RADIUS.

    Returns (log v, log(-v')) where the second entry is the log of -v'(xi);
    the sign convention keeps both logs real on the positive axis.
    """
    if abs(cmath.phase(xi)) <= 2.0 * math.pi / 3.0 + 1e-12:
        return _asymptotic_log_pair(xi)
    # connection route: v(xi) = e^{-i pi/3} v(rot xi) + e^{i pi/3} v(xi/rot)
    xp = xi * _ROT
    xm = xi / _ROT
    lvp, ldp = _asymptotic_log_pair(xp)
    lvm, ldm = _asymptotic_log_pair(xm)
    log_v = _log_sum(lvp - 1j * math.pi / 3.0, lvm + 1j * math.pi / 3.0)
    # v'(xi) = e^{i pi/3} v'(rot xi) + e^{-i pi/3} v'(xi/rot)
    log_mdv = _log_sum(ldp + 1j * math.pi / 3.0, ldm - 1j * math.pi / 3.0)
    return log_v, log_mdv


def airy_v_log(xi: complex) -> complex:
    """log v(xi) as a complex number (real part = log|v|, imag part = phase)."""
    xi = complex(xi)
    if _use_series(xi):
        v, _ = _series_pair(xi)
        return cmath.log(v)
    return _log_pair(xi)[0]


def airy_sample(xi: complex) -> AirySample:
    xi = complex(xi)
    if _use_series(xi):
        v, _ = _series_pair(xi)
        return AirySample(xi, v, EvalMethod.SERIES)
    log_v = _log_pair(xi)[0]
    if abs(log_v.real) > 700.0:
        raise Overflow(
            f"airy_v overflows at xi={xi} (log-modulus {log_v.real:.1f}); "
            "use airy_v_log")
    return AirySample(xi, cmath.exp(log_v), EvalMethod.ASYMPTOTIC)


def airy_v(xi: complex) -> complex:
    """The Airy solution v(xi)."""
    return airy_sample(xi).value


def airy_vp(xi: complex) -> complex:
    """Derivative v'(xi)."""
    xi = complex(xi)
    if _use_series(xi):
        return _series_pair(xi)[1]
    log_mdv = _log_pair(xi)[1]
    if abs(log_mdv.real) > 700.0:
        raise Overflow(f"airy_vp overflows at xi={xi}")
    return -cmath.exp(log_mdv)


def airy_connection_residual(xi: complex) -> float:
    """Defect of the rotation identity, normalized by 1 + |v(xi)|."""
    xi = complex(xi)
    v = airy_v(xi)
    rhs = (cmath.exp(-1j * math.pi / 3.0) * airy_v(xi * _ROT) +
           cmath.exp(1j * math.pi / 3.0) * airy_v(xi / _ROT))
    return abs(v - rhs) / (1.0 + abs(v))


def airy_zeros(k_max: int, max_iter: int = 50) -> AiryZeros:
    """Negative-axis zeros r_1..r_{k_max}, Newton-refined from the seeds."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    zeros = []
    for k in range(1, k_max + 1):
        r = zero_seed(k)
        ok = False
        for _ in range(max_iter):
            v = airy_v(-r)
            dv = airy_vp(-r)
            step = v / dv  # d/dr v(-r) = -v'(-r)
            r += step.real
            if abs(step) < 1e-13:
                ok = True
                break
        if not ok or abs(airy_v(-r)) > 1e-9:
            raise ConvergenceFailure(f"Newton failed for Airy zero k={k}")
        zeros.append(r)
    return AiryZeros(tuple(zeros))
