"""Acceptance gate: nine end-to-end criteria with stated tolerances.

Each criterion is one test that prints a single CRITERION n: PASS/FAIL line.
Criterion 8's graph-distance half is a known desk-scale failure: at R=3000 a
handful of converged low-index eigenvalues sit 0.05 to 0.13 away from the
limit graph (the same scatter is visible in reference portraits); the
assertion is kept at tau=0.05 and fails honestly rather than being widened.
"""

import cmath
import math
import time

import numpy as np

from spectral_portrait import (discretize, linalg, phase, profiles,
                               quantize, verify)
from spectral_portrait.graph import CurveTag

from conftest import (EPS_COUETTE, EPS_MONOTONE, EPS_QUADRATIC, OS_ALPHA,
                      OS_REYNOLDS_COUETTE, OS_REYNOLDS_X2)

KNOT = -1j / math.sqrt(3.0)


def _report(num, ok, detail):
    print(f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def _nearest(values, z):
    return float(np.min(np.abs(values - z)))


def test_criterion_1_airy_identity_suite():
    from spectral_portrait import airy
    t0 = time.perf_counter()
    xs = np.linspace(-5.0, 5.0, 21)
    worst = 0.0
    for x in xs:
        for y in xs:
            worst = max(worst, airy.airy_connection_residual(complex(x, y)))
    zeros = airy.airy_zeros(50)
    oracle = (2.338107410459767, 4.087949444130971, 5.520559828095552)
    zero_err = max(abs(zeros[k] - oracle[k - 1]) for k in (1, 2, 3))
    seed_ok = all(abs(airy.zero_seed(k) - zeros[k]) <= k ** (-4.0 / 3.0)
                  for k in range(1, 51))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and zero_err <= 1e-9 and seed_ok and elapsed < 5.0
    _report(1, ok, f"connection residual {worst:.2e} (<=1e-9), zero error "
                   f"{zero_err:.2e} (<=1e-9), seeds within 1/k^(4/3): "
                   f"{seed_ok}, runtime {elapsed:.1f}s (<5s)")
    assert worst <= 1e-9
    assert zero_err <= 1e-9
    assert seed_ok
    assert elapsed < 5.0


def test_criterion_2_couette_end_to_end(couette_run, couette_graph,
                                        couette_predictions):
    spec, t_solve = couette_run
    preds, const, t_pred = couette_predictions
    t0 = time.perf_counter()
    kept = spec.kept()

    # (a) every eigenvalue with |lambda| <= 5 on the graph or inside U0
    dists, _ = verify.graph_distance(kept, couette_graph.retained(),
                                     depth=10.0)
    tau_worst = max((d for lam, d in zip(kept, dists)
                     if abs(lam) <= 5.0
                     and abs(lam - KNOT) > const.delta_sigma), default=0.0)

    # (b) >= 90% of predictions outside U0 match uniquely
    def tol_of(p):
        if p.tag is CurveTag.GAMMA_INFTY:
            return p.radius          # already the 10 eps / rho bound
        return max(10.0 * p.radius, 1e-5)

    outside = [p for p in preds if abs(p.mu - KNOT) > const.delta_sigma]
    matched = 0
    violations = 0
    ray_worst_ratio = 0.0
    for p in outside:
        inside = int(np.sum(np.abs(kept - p.mu) <= tol_of(p)))
        if inside >= 1:
            matched += 1
            if p.tag is CurveTag.GAMMA_INFTY:
                # (c) |lambda_k + i rho_k| <= 10 eps / rho_k
                ray_worst_ratio = max(ray_worst_ratio,
                                      _nearest(kept, p.mu) / p.radius)
        if inside > 1:
            violations += 1
    frac = matched / len(outside)

    # (d) determinant roots vs discretized eigenvalues for 10 sampled k
    sample = [p for p in preds if abs(p.mu) <= 4.0]
    sample = sample[::max(1, len(sample) // 10)][:10]
    det_worst = 0.0
    for p in sample:
        root = quantize.refine_root(p.mu, EPS_COUETTE)
        det_worst = max(det_worst, _nearest(kept, root))

    elapsed = t_solve + t_pred + (time.perf_counter() - t0)
    ok = (tau_worst <= 0.02 and frac >= 0.9 and violations == 0
          and ray_worst_ratio <= 1.0 and det_worst <= 1e-6
          and elapsed < 120.0)
    _report(2, ok, f"graph dist {tau_worst:.2e} (<=0.02), matched "
                   f"{matched}/{len(outside)} ({100 * frac:.0f}%>=90%), "
                   f"uniqueness violations {violations}, ray ratio "
                   f"{ray_worst_ratio:.2f} (<=1), determinant agreement "
                   f"{det_worst:.1e} (<=1e-6), runtime {elapsed:.0f}s "
                   f"(<120s)")
    assert tau_worst <= 0.02
    assert frac >= 0.9
    assert violations == 0
    assert ray_worst_ratio <= 1.0
    assert det_worst <= 1e-6
    assert elapsed < 120.0


def test_criterion_3_couette_counting(couette_run, couette_graph,
                                      couette_predictions):
    spec, _ = couette_run
    _, const, _ = couette_predictions
    probes = [(CurveTag.GAMMA_INFTY, complex(0.0, -rho))
              for rho in (2.0, 3.0, 4.0)]
    table = verify.compare_counting(spec, couette_graph, EPS_COUETTE, probes)
    u0_pop = int(np.sum(np.abs(spec.kept() - KNOT) <= const.delta_sigma))
    pop_err = abs(u0_pop - const.u0_expected_count)
    ok = table.max_residual <= 2.0 and pop_err <= 3.0
    _report(3, ok, f"ray counting residual {table.max_residual:.2f} (<=2, "
                   f"offset {table.offsets[CurveTag.GAMMA_INFTY]}), U0 "
                   f"population {u0_pop} vs {const.u0_expected_count:.2f} "
                   f"(err {pop_err:.2f} <=3)")
    assert table.max_residual <= 2.0
    assert pop_err <= 3.0


def test_criterion_4_monotone_profile(ss_graph, ss_spectrum, ss_predictions):
    kept = ss_spectrum.kept()
    # graph-function property: one ordinate per abscissa, strictly monotone
    graph_fn = True
    for c in ss_graph.retained():
        if len(c.samples) < 2:
            continue
        if c.tag is CurveTag.GAMMA_INFTY:
            ts = np.array([-s.imag for s in c.samples])
            graph_fn &= bool(np.all(np.diff(ts) > 0))
        else:
            cs = np.array([s.real for s in c.samples])
            d = np.diff(cs)
            graph_fn &= bool(np.all(d > 0) or np.all(d < 0))
    single_knot = set(ss_graph.knots) == {"lambda0"}

    _, tau_worst = verify.graph_distance(kept, ss_graph.retained(), depth=6.0)

    tol = max(10.0 * EPS_MONOTONE ** 2, 1e-5)
    match_worst = max(_nearest(kept, p.mu) for p in ss_predictions)

    probes = []
    for c in ss_graph.retained():
        if len(c.samples) < 6:
            continue
        probes.append((c.tag, c.samples[len(c.samples) // 3]))
        probes.append((c.tag, c.samples[2 * len(c.samples) // 3]))
    table = verify.compare_counting(ss_spectrum, ss_graph, EPS_MONOTONE,
                                    probes)

    ok = (graph_fn and single_knot and tau_worst <= 0.03
          and match_worst <= tol and table.max_residual <= 2.0)
    _report(4, ok, f"graph-function {graph_fn}, single knot {single_knot}, "
                   f"graph dist {tau_worst:.2e} (<=0.03), prediction match "
                   f"{match_worst:.2e} (<= {tol:.1e}), counting residual "
                   f"{table.max_residual:.2f} (<=2)")
    assert graph_fn and single_knot
    assert tau_worst <= 0.03
    assert match_worst <= tol
    assert table.max_residual <= 2.0


def test_criterion_5_quadratic_profile(quad_graph, quad_spectrum,
                                       quad_predictions):
    kept = quad_spectrum.kept()
    l1 = quad_graph.knots["lambda1"]
    arg_err = abs(cmath.phase(l1) + math.pi / 4.0)

    _, tau_worst = verify.graph_distance(kept, quad_graph.retained(),
                                         depth=6.0)

    ray_preds = [p for p in quad_predictions if p.tag is CurveTag.GAMMA_0]
    tol = 10.0 * EPS_QUADRATIC ** 2
    ray_worst = max(_nearest(kept, p.mu) for p in ray_preds)

    ok = arg_err <= 1e-6 and tau_worst <= 0.05 and ray_worst <= tol
    _report(5, ok, f"arg lambda1 error {arg_err:.1e} (<=1e-6), graph dist "
                   f"{tau_worst:.2e} (<=0.05), exact-ray match "
                   f"{ray_worst:.1e} (<= {tol:.1e}, {len(ray_preds)} "
                   f"predictions)")
    assert arg_err <= 1e-6
    assert tau_worst <= 0.05
    assert ray_worst <= tol


def test_criterion_6_symmetric_split():
    eps = EPS_MONOTONE
    full = linalg.solve_pencil(
        discretize.assemble_model(profiles.quadratic(0.0), eps, n=400))
    half = profiles.shifted_square()
    odd = linalg.solve_pencil(discretize.assemble_model(half, 2.0 * eps,
                                                        n=200))
    even = linalg.solve_pencil(discretize.assemble_model(
        half, 2.0 * eps, bc=discretize.BoundaryCondition.MIXED_LEFT_NEUMANN,
        n=200))
    union = np.concatenate([odd.kept(), even.kept()])
    worst = max(_nearest(union, v) for v in full.values[:30])
    ok = worst <= 1e-6
    _report(6, ok, f"split defect over first 30 eigenvalues {worst:.1e} "
                   f"(<=1e-6)")
    assert worst <= 1e-6


def test_criterion_7_os_couette(os_couette_run, os_couette_curves,
                                os_couette_predictions):
    spec, t_solve = os_couette_run
    preds, t_pred = os_couette_predictions
    t0 = time.perf_counter()
    kept = spec.kept()
    eps = 1.0 / (OS_ALPHA * OS_REYNOLDS_COUETTE)
    delta_sigma = 0.5 * math.sqrt(eps) * abs(math.log(eps))

    # all eigenvalues with Im >= -1.5 within tau of the curve system
    shallow = kept[kept.imag >= -1.5]
    _, tau_worst = verify.graph_distance(shallow, list(os_couette_curves),
                                         depth=10.0,
                                         exempt=[(KNOT, delta_sigma)])

    # branch predictions: middle two-thirds of each index window
    groups = {}
    for p in preds:
        if p.tag is CurveTag.GAMMA_INFTY:
            continue
        groups.setdefault((p.tag, p.k > 0), []).append(p)
    branch_worst = 0.0
    branch_n = 0
    for key, group in groups.items():
        group.sort(key=lambda p: abs(p.k))
        cut = math.ceil(len(group) / 6.0)
        for p in group[cut:len(group) - cut]:
            tol = max(p.radius, 5e-4)
            branch_worst = max(branch_worst, _nearest(kept, p.mu) / tol)
            branch_n += 1

    # pure-imaginary chain against the 10 eps / rho bound
    # in this band only the imaginary chain is present; the computed real
    # parts are zero up to eigensolver roundoff (~1e-4)
    imag = kept[(np.abs(kept.real) < 1e-3) & (kept.imag <= -1.0)
                & (kept.imag >= -1.5)]
    rays = [p for p in preds if p.tag is CurveTag.GAMMA_INFTY]
    ray_worst = 0.0
    for lam in imag:
        p = min(rays, key=lambda p: abs(p.mu - lam))
        ray_worst = max(ray_worst, abs(p.mu - lam) / p.radius)

    elapsed = t_solve + t_pred + (time.perf_counter() - t0)
    ok = (tau_worst <= 0.05 and branch_worst <= 1.0 and ray_worst <= 1.0
          and elapsed < 180.0)
    _report(7, ok, f"graph dist {tau_worst:.2e} (<=0.05), branch match "
                   f"ratio {branch_worst:.2f} (<=1 over {branch_n} "
                   f"predictions), ray ratio {ray_worst:.2f} (<=1 over "
                   f"{len(imag)} eigenvalues), runtime {elapsed:.0f}s "
                   f"(<180s)")
    assert tau_worst <= 0.05
    assert branch_worst <= 1.0
    assert ray_worst <= 1.0
    assert elapsed < 180.0


def test_criterion_8_os_quadratic(os_x2_spectrum, x2_graph):
    kept = os_x2_spectrum.kept()
    eps_q = 1.0 / math.sqrt(OS_ALPHA * OS_REYNOLDS_X2)

    probes = [(CurveTag.GAMMA_INFTY, -2.0j), (CurveTag.GAMMA_INFTY, -3.0j)]
    table = verify.compare_counting(os_x2_spectrum, x2_graph, eps_q, probes)
    counting_ok = table.max_residual <= 2.0

    dists, tau_worst = verify.graph_distance(kept, x2_graph.retained(),
                                             depth=6.0)
    strays = sorted(((float(d), complex(lam))
                     for d, lam in zip(dists, kept)
                     if abs(lam.imag) <= 6.0 and d > 0.05), reverse=True)
    tau_ok = tau_worst <= 0.05

    _report(8, counting_ok and tau_ok,
            f"counting residual {table.max_residual:.2f} (<=2: "
            f"{counting_ok}), graph dist {tau_worst:.2e} (<=0.05: {tau_ok}, "
            f"{len(strays)} converged eigenvalues beyond tau; known "
            f"desk-scale failure at R=3000)")
    assert counting_ok
    assert tau_ok, (
        "graph-distance half fails honestly at desk scale: converged "
        "eigenvalues beyond tau=0.05: "
        + ", ".join(f"{lam:.3f} at {d:.3f}" for d, lam in strays[:8]))


def test_criterion_9_property_suite(couette_run, ss_spectrum, quad_spectrum,
                                    quad_profile, tmp_path):
    # Q+ + Q- = Q on 100 sampled spectral parameters
    rng = np.random.default_rng(5)
    p = profiles.shifted_square()
    add_worst = 0.0
    for _ in range(100):
        lam = complex(rng.uniform(0.1, 0.9), -rng.uniform(0.1, 1.5))
        q, qp, qm = phase.q_functionals(p, lam)
        add_worst = max(add_worst, abs(qp + qm - q))

    # path independence of the branched phase integral
    lam = 0.3 - 0.4j
    a, b = -0.5 + 0.0j, 0.5 - 0.1j
    path = phase.straight_path(p, a, b, lam)
    detour = phase.BranchedPath((a, -0.1 + 0.15j, b), path.branch_seed)
    path_err = abs(phase.phase_integral(p, path, lam)
                   - phase.phase_integral(p, detour, lam))

    # semistrip confinement for every model run
    strip_ok = True
    for spec, prof in ((couette_run[0], profiles.linear()),
                       (ss_spectrum, p), (quad_spectrum, quad_profile)):
        lo, hi = profiles.semistrip(prof)
        kept = spec.kept()
        strip_ok &= bool(np.all(kept.real >= lo - 1e-6)
                         and np.all(kept.real <= hi + 1e-6)
                         and np.all(kept.imag <= 1e-6))

    # spectral symmetry of the symmetric profile
    sym = verify.symmetry_defect(couette_run[0].kept())

    # deterministic outputs: identical rebuild, bitwise
    grid = discretize.collocation_grid(96)
    m = 1j * 1e-2 * grid.d2[1:-1, 1:-1] + np.diag(grid.nodes[1:-1])
    det_ok = bool(np.array_equal(linalg.eigenvalues(m).values,
                                 linalg.eigenvalues(m.copy()).values))

    ok = (add_worst <= 1e-10 and path_err <= 1e-9 and strip_ok
          and sym <= 1e-6 and det_ok)
    _report(9, ok, f"Q additivity {add_worst:.1e} (<=1e-10), path "
                   f"independence {path_err:.1e} (<=1e-9), semistrip "
                   f"confinement {strip_ok}, symmetry defect {sym:.1e} "
                   f"(<=1e-6), deterministic {det_ok}")
    assert add_worst <= 1e-10
    assert path_err <= 1e-9
    assert strip_ok
    assert sym <= 1e-6
    assert det_ok
