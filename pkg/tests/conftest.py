"""Session-scoped fixtures shared by the module and acceptance tests.

The expensive artifacts (filtered spectra, traced limit graphs, prediction
lists) are built once per session; fixtures that feed a criterion with a
runtime bound also report the wall-clock seconds their build took.
"""

import math
import time

import pytest

from spectral_portrait import discretize, graph, linalg, profiles, quantize

EPS_COUETTE = 1e-3
EPS_MONOTONE = math.sqrt(2e-3)
EPS_QUADRATIC = (1.0 / math.sqrt(5000.0)) / math.sqrt(49.0 / 64.0)
OS_ALPHA = 1.0
OS_REYNOLDS_COUETTE = 4000.0
OS_REYNOLDS_X2 = 3000.0


def _filtered_model(profile, eps, n_fine, n_coarse, tol=1e-6):
    fine = linalg.solve_pencil(discretize.assemble_model(profile, eps, n=n_fine))
    coarse = linalg.solve_pencil(discretize.assemble_model(profile, eps,
                                                           n=n_coarse))
    return linalg.filter_spurious(coarse, fine, tol=tol)


def _filtered_os(profile, alpha, reynolds, n_fine=200, n_coarse=168,
                 tol=5e-3):
    fine = linalg.solve_pencil(discretize.assemble_os(profile, alpha,
                                                      reynolds, n=n_fine))
    coarse = linalg.solve_pencil(discretize.assemble_os(profile, alpha,
                                                        reynolds, n=n_coarse))
    return linalg.filter_spurious(coarse, fine, tol=tol)


@pytest.fixture(scope="session")
def couette_run():
    """(filtered spectrum, build seconds) for q = x, eps = 1e-3, n = 400."""
    t0 = time.perf_counter()
    spec = _filtered_model(profiles.linear(), EPS_COUETTE, 400, 320)
    return spec, time.perf_counter() - t0


@pytest.fixture(scope="session")
def couette_graph():
    return graph.build_limit_graph(profiles.linear(), depth=6.0)


@pytest.fixture(scope="session")
def couette_predictions():
    """(predictions, constants, build seconds) for the linear profile."""
    t0 = time.perf_counter()
    preds, const = quantize.predict_model_couette(EPS_COUETTE)
    return preds, const, time.perf_counter() - t0


@pytest.fixture(scope="session")
def ss_graph():
    return graph.build_limit_graph(profiles.shifted_square(), depth=6.0)


@pytest.fixture(scope="session")
def ss_spectrum():
    return _filtered_model(profiles.shifted_square(), EPS_MONOTONE, 400, 320)


@pytest.fixture(scope="session")
def ss_predictions(ss_graph):
    return quantize.predict_wkb(profiles.shifted_square(), EPS_MONOTONE,
                                ss_graph, delta=0.1)


@pytest.fixture(scope="session")
def quad_profile():
    return profiles.quadratic_from_coefficients(49.0 / 64.0, -14.0 / 64.0,
                                                1.0 / 64.0)


@pytest.fixture(scope="session")
def quad_graph(quad_profile):
    return graph.build_limit_graph(quad_profile, depth=6.0)


@pytest.fixture(scope="session")
def quad_spectrum(quad_profile):
    return _filtered_model(quad_profile, EPS_QUADRATIC, 500, 400)


@pytest.fixture(scope="session")
def quad_predictions(quad_profile, quad_graph):
    return quantize.predict_wkb(quad_profile, EPS_QUADRATIC, quad_graph,
                                delta=0.1)


@pytest.fixture(scope="session")
def os_couette_run():
    """(filtered spectrum, build seconds) for viscous plane Couette flow."""
    t0 = time.perf_counter()
    spec = _filtered_os(profiles.linear(), OS_ALPHA, OS_REYNOLDS_COUETTE)
    return spec, time.perf_counter() - t0


@pytest.fixture(scope="session")
def os_couette_curves():
    eps = 1.0 / (OS_ALPHA * OS_REYNOLDS_COUETTE)
    return graph.couette_os_curves(eps, OS_ALPHA, depth=6.0)


@pytest.fixture(scope="session")
def os_couette_predictions():
    t0 = time.perf_counter()
    preds = quantize.predict_os_couette(OS_ALPHA, OS_REYNOLDS_COUETTE,
                                        depth=6.0)
    return preds, time.perf_counter() - t0


@pytest.fixture(scope="session")
def os_x2_spectrum():
    return _filtered_os(profiles.quadratic(0.0), OS_ALPHA, OS_REYNOLDS_X2)


@pytest.fixture(scope="session")
def x2_graph():
    return graph.build_limit_graph(profiles.quadratic(0.0), depth=6.0)
