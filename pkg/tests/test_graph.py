"""Limit graph tracing: closed forms, knots, clipping, channel-flow curves."""

import cmath
import math

import pytest

from spectral_portrait import graph, profiles
from spectral_portrait.graph import CurveTag

KNOT_SS = 0.3237128641907 * (1.0 - 1.0j)
KNOT_QUAD_1 = 0.2378298594044127 * (1.0 - 1.0j)
KNOT_QUAD_2 = complex(0.34198726995409, -0.44888885629477)


def test_couette_graph_closed_form():
    g = graph.build_limit_graph(profiles.linear(), depth=6.0)
    assert abs(g.knots["lambda0"] + 1j / math.sqrt(3.0)) < 1e-14
    tags = {c.tag for c in g.retained()}
    assert tags == {CurveTag.GAMMA_PLUS, CurveTag.GAMMA_MINUS,
                    CurveTag.GAMMA_INFTY}
    ray = next(c for c in g.retained() if c.tag is CurveTag.GAMMA_INFTY)
    assert all(abs(s.real) == 0.0 for s in ray.samples)


def test_traced_curve_lies_on_zero_set():
    p = profiles.shifted_square()
    curve = graph.trace_curve(p, CurveTag.GAMMA_PLUS, depth=6.0, n_samples=40)
    func = graph.defining_functional(p, CurveTag.GAMMA_PLUS)
    for s in curve.samples[::10]:
        assert abs(func(s).real) < 1e-8


def test_monotone_graph_knot_and_clipping(ss_graph):
    assert set(ss_graph.knots) == {"lambda0"}
    assert abs(ss_graph.knots["lambda0"] - KNOT_SS) < 1e-6
    # each retained curve ends near the knot, excluded arcs exist
    assert any(c.excluded for c in ss_graph.curves)
    for c in ss_graph.retained():
        assert not c.excluded


def test_quadratic_graph_two_knots(quad_graph):
    assert set(quad_graph.knots) == {"lambda1", "lambda2"}
    assert abs(quad_graph.knots["lambda1"] - KNOT_QUAD_1) < 1e-6
    assert abs(quad_graph.knots["lambda2"] - KNOT_QUAD_2) < 1e-6
    tags = {c.tag for c in quad_graph.retained() if len(c.samples) >= 2}
    assert {CurveTag.GAMMA_0, CurveTag.GAMMA_A, CurveTag.GAMMA_B,
            CurveTag.GAMMA_INFTY} <= tags


def test_degenerate_quadratic_knots_coincide():
    g = graph.build_limit_graph(profiles.quadratic(0.0), depth=6.0,
                                n_samples=200)
    l1, l2 = g.knots["lambda1"], g.knots["lambda2"]
    assert abs(l1 - l2) < 1e-5
    assert abs(l1 - KNOT_SS) < 1e-5


def test_channel_flow_curves():
    curves = graph.couette_os_curves(2.5e-4, 1.0, depth=6.0, n_samples=100)
    assert len(curves) == 5
    by_label = {c.label: c for c in curves}
    plus = by_label["os_gamma_plus"]
    mirror = by_label["os_gamma_plus_mirror"]
    for s, m in zip(plus.samples, mirror.samples):
        assert abs(m + s.conjugate()) < 1e-14
    ray = by_label["os_ray"]
    assert all(s.real == 0.0 for s in ray.samples)
    # both slanted curves start near -1 and end near the rotated knot abscissa
    assert abs(plus.samples[0] + 1.0) < 0.1
