"""Profile evaluation, ranges, reductions, and turning points."""

import math

import pytest

from spectral_portrait import profiles
from spectral_portrait.profiles import ProfileKind


def test_eval_closed_forms():
    assert profiles.eval(profiles.linear(), 0.3) == pytest.approx(0.3)
    assert profiles.eval(profiles.shifted_square(), 0.0) == pytest.approx(0.25)
    assert profiles.eval(profiles.half_sine(), 1.0) == pytest.approx(1.0)
    p = profiles.quadratic(0.25)
    assert profiles.eval(p, 1.0) == pytest.approx(0.5625)


def test_derivatives_match_finite_differences():
    h = 1e-6
    for p in (profiles.linear(), profiles.shifted_square(),
              profiles.half_sine(), profiles.quadratic(1.0 / 7.0)):
        z = 0.3 - 0.2j
        fd1 = (profiles.eval(p, z + h) - profiles.eval(p, z - h)) / (2 * h)
        assert abs(fd1 - profiles.eval_d1(p, z)) < 1e-8
        fd2 = (profiles.eval(p, z + h) - 2 * profiles.eval(p, z)
               + profiles.eval(p, z - h)) / h ** 2
        assert abs(fd2 - profiles.eval_d2(p, z)) < 1e-3


def test_ranges_and_semistrips():
    assert profiles.range_of(profiles.linear()) == (-1.0, 1.0)
    assert profiles.range_of(profiles.shifted_square()) == (0.0, 1.0)
    a, b = profiles.range_of(profiles.quadratic(1.0 / 7.0))
    assert a == pytest.approx((8.0 / 7.0) ** 2)
    assert b == pytest.approx((6.0 / 7.0) ** 2)
    lo, hi = profiles.semistrip(profiles.quadratic(1.0 / 7.0))
    assert lo == 0.0 and hi == pytest.approx(max(a, b))


def test_quadratic_reduction():
    p = profiles.quadratic_from_coefficients(49.0 / 64.0, -14.0 / 64.0,
                                             1.0 / 64.0)
    assert p.beta == pytest.approx(1.0 / 7.0)
    assert p.reduction.scale == pytest.approx(49.0 / 64.0)
    assert p.reduction.shift == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        profiles.quadratic_from_coefficients(-1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        profiles.quadratic(1.5)


def test_turning_points_solve_q_equals_lambda():
    lam = 0.3 - 0.4j
    for p in (profiles.linear(), profiles.shifted_square(),
              profiles.half_sine()):
        (tp,) = profiles.turning_points(p, lam)
        assert abs(profiles.eval(p, tp) - lam) < 1e-11
    p = profiles.quadratic(1.0 / 7.0)
    tps = profiles.turning_points(p, lam)
    assert len(tps) == 2
    for tp in tps:
        assert abs(profiles.eval(p, tp) - lam) < 1e-12


def test_config_round_trip():
    p = profiles.quadratic_from_coefficients(2.0, 1.0, 0.5)
    q = profiles.from_config(profiles.to_config(p))
    assert q.kind is ProfileKind.QUADRATIC
    assert q.beta == pytest.approx(p.beta)
    assert q.reduction.scale == pytest.approx(2.0)
    assert profiles.from_config({"kind": "half_sine"}).kind \
        is ProfileKind.HALF_SINE
