"""Confrontation of computed spectra with predictions and the limit graph.

Three independent checks: injective prediction-to-eigenvalue matching with
per-prediction trust radii, distance of every eigenvalue to the limit curves
(with an optional knot-disk exemption), and eigenvalue counting along the
curves against the analytic main terms.  Counting along curves attached to
the real axis uses a curvilinear strip from the axis end up to the probe;
counting along the infinite vertical curve counts the whole horizontal strip
above the probe, which is how the main-term formula is normalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import profiles, quantize
from .graph import CurveTag, LimitGraph, SpectralCurve
from .linalg import Spectrum
from .quantize import Prediction


@dataclass(frozen=True)
class MatchPair:
    prediction: Prediction
    eigenvalue: complex
    distance: float
    within_radius: bool


@dataclass(frozen=True)
class CountingRow:
    tag: CurveTag
    probe: complex
    n_predicted: float
    n_counted: int


@dataclass(frozen=True)
class CountingTable:
    rows: tuple[CountingRow, ...]
    offsets: dict
    max_residual: float


@dataclass(frozen=True)
class MatchReport:
    pairs: tuple[MatchPair, ...]
    unmatched_predictions: tuple[Prediction, ...]
    unmatched_eigenvalues: tuple[complex, ...]
    uniqueness_violations: tuple[Prediction, ...]
    meta: dict = field(default_factory=dict)


def match_predictions(spectrum: Spectrum, predictions: list[Prediction],
                      slack: float = 10.0,
                      floor: float = 1e-6) -> MatchReport:
    """Greedy injective pairing of predictions with computed eigenvalues.

    Pairs are accepted by increasing distance; a pair is within_radius when
    its distance is at most max(slack * radius, floor).  Predictions whose
    trust disk contains more than one eigenvalue are reported as uniqueness
    violations.
    """
    if slack < 1.0:
        raise ValueError("slack must be at least 1")
    eig = spectrum.kept()
    cands = []
    for i, pred in enumerate(predictions):
        for j, lam in enumerate(eig):
            cands.append((abs(lam - pred.mu), i, j))
    cands.sort(key=lambda c: (c[0], c[1], c[2]))
    used_p: set[int] = set()
    used_e: set[int] = set()
    pairs = []
    for d, i, j in cands:
        if i in used_p or j in used_e:
            continue
        used_p.add(i)
        used_e.add(j)
        trust = max(slack * predictions[i].radius, floor)
        pairs.append(MatchPair(predictions[i], complex(eig[j]), float(d),
                               bool(d <= trust)))
    violations = []
    for pred in predictions:
        trust = max(slack * pred.radius, floor)
        if int(np.sum(np.abs(eig - pred.mu) <= trust)) > 1:
            violations.append(pred)
    unmatched_p = tuple(predictions[i] for i in range(len(predictions))
                        if i not in used_p)
    unmatched_e = tuple(complex(eig[j]) for j in range(len(eig))
                        if j not in used_e)
    return MatchReport(tuple(pairs), unmatched_p, unmatched_e,
                       tuple(violations), dict(spectrum.meta))


def _polyline_points(curves: list[SpectralCurve]) -> np.ndarray:
    pts = []
    for c in curves:
        pts.extend(c.samples)
    return np.asarray(pts, dtype=complex)


def _segment_distance(z: complex, a: np.ndarray, b: np.ndarray) -> float:
    """Minimum distance from z to the segments a[i] -> b[i]."""
    d = b - a
    denom = np.abs(d) ** 2
    t = np.zeros_like(denom)
    nz = denom > 0
    t[nz] = np.clip(((z - a[nz]) * np.conj(d[nz])).real / denom[nz], 0.0, 1.0)
    proj = a + t * d
    return float(np.min(np.abs(z - proj)))


def graph_distance(values: np.ndarray, curves: list[SpectralCurve],
                   depth: float = 6.0,
                   exempt: list[tuple[complex, float]] | None = None):
    """Point-to-polyline distance of each eigenvalue to the curve system.

    Returns (distances, max over eigenvalues with |Im| <= depth that fall in
    no exemption disk); exempted or out-of-depth eigenvalues get distance
    NaN in the maximum but their true distance in the list.
    """
    segs_a, segs_b = [], []
    for c in curves:
        if len(c.samples) < 2:
            continue
        arr = np.asarray(c.samples, dtype=complex)
        segs_a.append(arr[:-1])
        segs_b.append(arr[1:])
    a = np.concatenate(segs_a)
    b = np.concatenate(segs_b)
    exempt = exempt or []
    dists = []
    max_d = 0.0
    for lam in np.asarray(values, dtype=complex):
        d = _segment_distance(complex(lam), a, b)
        dists.append(d)
        if abs(lam.imag) > depth:
            continue
        if any(abs(lam - c0) < r0 for c0, r0 in exempt):
            continue
        max_d = max(max_d, d)
    return np.array(dists), max_d


def _strip_count(values: np.ndarray, curve: SpectralCurve, probe: complex,
                 tau: float) -> int:
    """Eigenvalues within the curvilinear strip from the axis end to probe."""
    arr = np.asarray(curve.samples, dtype=complex)
    keep = arr[np.abs(arr.imag) <= abs(probe.imag) + tau]
    if len(keep) < 2:
        keep = arr[:2]
    a, b = keep[:-1], keep[1:]
    cnt = 0
    for lam in values:
        if _segment_distance(complex(lam), a, b) <= tau:
            cnt += 1
    return cnt


def compare_counting(spectrum: Spectrum, graph: LimitGraph, eps: float,
                     probes: list[tuple[CurveTag, complex]],
                     tau: float = 0.05) -> CountingTable:
    """Counting functions at probe points versus the analytic main terms.

    For the infinite vertical curve the count is the number of eigenvalues in
    the horizontal strip above the probe; for the other curves it is the
    number inside the curvilinear strip of half-width tau along the curve up
    to the probe.  One integer offset per curve is fitted (rounded median
    residual) and the maximum residual after the offset is reported.
    """
    values = spectrum.kept()
    by_tag: dict[CurveTag, SpectralCurve] = {}
    for c in graph.retained():
        if len(c.samples) >= 2 and c.tag not in by_tag:
            by_tag[c.tag] = c
    rows = []
    for tag, probe in probes:
        n_pred = quantize.counting_function(graph.profile, tag, probe, eps)
        if tag is CurveTag.GAMMA_INFTY:
            n_cnt = int(np.sum(values.imag >= probe.imag - 1e-9))
        else:
            n_cnt = _strip_count(values, by_tag[tag], probe, tau)
        rows.append(CountingRow(tag, complex(probe), float(n_pred), n_cnt))
    offsets = {}
    max_res = 0.0
    for tag in {r.tag for r in rows}:
        res = [r.n_counted - r.n_predicted for r in rows if r.tag is tag]
        off = int(round(float(np.median(res))))
        off = max(-3, min(3, off))
        offsets[tag] = off
        max_res = max(max_res, max(abs(r - off) for r in res))
    return CountingTable(tuple(rows), offsets, max_res)


def symmetry_defect(values: np.ndarray) -> float:
    """Largest deviation of the set from invariance under lam -> -conj(lam)."""
    vals = np.asarray(values, dtype=complex)
    if len(vals) == 0:
        return 0.0
    mirrored = -np.conj(vals)
    return float(max(np.min(np.abs(vals - m)) for m in mirrored))


def report_to_dict(report: MatchReport, graph_tau: float | None = None,
                   graph_max: float | None = None,
                   counting: CountingTable | None = None,
                   constants: dict | None = None) -> dict:
    """JSON-ready form of a verification run."""
    out = {
        "meta": report.meta,
        "pairs": [
            {"tag": p.prediction.tag.value, "k": p.prediction.k,
             "prediction": [p.prediction.mu.real, p.prediction.mu.imag],
             "eigenvalue": [p.eigenvalue.real, p.eigenvalue.imag],
             "distance": p.distance, "radius": p.prediction.radius,
             "within_radius": p.within_radius}
            for p in report.pairs],
        "unmatched_predictions": len(report.unmatched_predictions),
        "unmatched_eigenvalues": len(report.unmatched_eigenvalues),
        "graph": {"tau": graph_tau, "max_distance": graph_max,
                  "violations": [
                      {"tag": p.tag.value, "k": p.k}
                      for p in report.uniqueness_violations]},
        "counting": [] if counting is None else [
            {"tag": r.tag.value, "probe": [r.probe.real, r.probe.imag],
             "n_predicted": r.n_predicted, "n_counted": r.n_counted,
             "offset_fit": counting.offsets[r.tag]}
            for r in counting.rows],
        "constants": constants or {},
    }
    return out
