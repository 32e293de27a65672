"""Airy evaluation against an independent oracle, zeros, and scaling.

The oracle for values is scipy.special.airy (an implementation the package
does not share any code with); the oracle for the first zeros is the frozen
literature values of the negative-axis Airy zeros.
"""

import cmath

import numpy as np
import pytest
import scipy.special

from spectral_portrait import airy
from spectral_portrait.errors import Overflow

# frozen literature values of the first negative-axis zeros of Ai
ZEROS_ORACLE = (2.338107410459767, 4.087949444130971, 5.520559828095552)


def test_values_match_independent_oracle():
    rng = np.random.default_rng(7)
    pts = rng.uniform(-4.5, 4.5, size=(60, 2))
    for x, y in pts:
        xi = complex(x, y)
        ref = scipy.special.airy(xi)[0]
        assert abs(airy.airy_v(xi) - ref) <= 1e-10 * (1.0 + abs(ref))
        refp = scipy.special.airy(xi)[1]
        assert abs(airy.airy_vp(xi) - refp) <= 1e-10 * (1.0 + abs(refp))


def test_first_zeros_match_frozen_oracle():
    zeros = airy.airy_zeros(3)
    for k, ref in enumerate(ZEROS_ORACLE, start=1):
        assert abs(zeros[k] - ref) <= 1e-10


def test_zero_seed_accuracy():
    zeros = airy.airy_zeros(50)
    for k in range(1, 51):
        assert abs(airy.zero_seed(k) - zeros[k]) <= k ** (-4.0 / 3.0)


def test_connection_residual_small():
    for xi in (3.0 + 0.0j, -2.0 + 1.0j, 1.5 - 3.0j, -4.0 - 4.0j):
        assert airy.airy_connection_residual(xi) <= 1e-10


def test_log_evaluation_consistent_and_unbounded():
    for xi in (5.0 + 1.0j, -6.0 + 0.5j, 2.0 - 4.0j):
        lv = airy.airy_v_log(xi)
        assert abs(cmath.exp(lv) - airy.airy_v(xi)) \
            <= 1e-10 * abs(airy.airy_v(xi))
    # far outside the unscaled range the log form still works
    lv = airy.airy_v_log(120.0 + 0.0j)
    assert np.isfinite(lv.real) and lv.real < -700.0
    with pytest.raises(Overflow):
        airy.airy_v(120.0 + 0.0j)


def test_zero_index_is_one_based():
    zeros = airy.airy_zeros(2)
    assert len(zeros) == 2
    with pytest.raises(IndexError):
        zeros[0]
