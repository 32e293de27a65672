"""Verification primitives on small synthetic inputs."""

import numpy as np
import pytest

from spectral_portrait import verify
from spectral_portrait.graph import CurveTag, SpectralCurve
from spectral_portrait.linalg import Spectrum
from spectral_portrait.quantize import Prediction


def _spectrum(values):
    vals = np.asarray(values, dtype=complex)
    flags = np.zeros(len(vals), dtype=bool)
    return Spectrum(vals, flags, flags.copy(), {})


def test_match_predictions_injective():
    spec = _spectrum([0.0 + 0.0j, 1.0 - 1.0j, 2.0 - 2.0j])
    preds = [Prediction(CurveTag.GAMMA_PLUS, 1, 0.001 + 0.0j, 1e-3, 0.0),
             Prediction(CurveTag.GAMMA_PLUS, 2, 1.0 - 1.0j, 1e-3, 0.0),
             Prediction(CurveTag.GAMMA_PLUS, 3, 5.0 + 0.0j, 1e-3, 0.0)]
    rep = verify.match_predictions(spec, preds)
    by_k = {p.prediction.k: p for p in rep.pairs}
    assert by_k[1].within_radius and by_k[1].distance == pytest.approx(0.001)
    assert by_k[2].within_radius and by_k[2].distance == 0.0
    assert not by_k[3].within_radius
    assert not rep.uniqueness_violations
    with pytest.raises(ValueError):
        verify.match_predictions(spec, preds, slack=0.5)


def test_uniqueness_violation_detected():
    spec = _spectrum([0.0 + 0.0j, 0.001 + 0.0j])
    preds = [Prediction(CurveTag.GAMMA_PLUS, 1, 0.0 + 0.0j, 0.01, 0.0)]
    rep = verify.match_predictions(spec, preds)
    assert len(rep.uniqueness_violations) == 1


def _segment_curve(a, b, n=50, tag=CurveTag.GAMMA_INFTY):
    samples = tuple(a + (b - a) * t for t in np.linspace(0.0, 1.0, n))
    return SpectralCurve(tag, samples, tuple(float(i) for i in range(n)),
                         ("x", "y"))


def test_graph_distance_and_exemption():
    curve = _segment_curve(0.0 + 0.0j, 1.0 + 0.0j)
    vals = np.array([0.5 - 0.2j, 2.0 + 0.0j])
    dists, max_d = verify.graph_distance(vals, [curve])
    assert dists[0] == pytest.approx(0.2)
    assert dists[1] == pytest.approx(1.0)
    assert max_d == pytest.approx(1.0)
    _, max_d2 = verify.graph_distance(vals, [curve],
                                      exempt=[(2.0 + 0.0j, 0.5)])
    assert max_d2 == pytest.approx(0.2)


def test_symmetry_defect():
    sym = np.array([-0.5 - 1.0j, 0.5 - 1.0j, 0.0 - 2.0j])
    assert verify.symmetry_defect(sym) < 1e-15
    assert verify.symmetry_defect(np.array([0.3 - 1.0j])) \
        == pytest.approx(0.6)
    assert verify.symmetry_defect(np.array([])) == 0.0


def test_strip_count_vertical_ray():
    ray = _segment_curve(0.0 - 0.1j, 0.0 - 5.0j)
    vals = np.array([0.02 - 1.0j, 0.0 - 2.0j, 0.5 - 1.0j, 0.0 - 4.0j])
    n = verify._strip_count(vals, ray, 0.0 - 3.0j, tau=0.05)
    # only the two on-ray values above the probe fall in the strip
    assert n == 2
