"""Command-line surface: orchestration of the engines and file emission.

Commands: portrait (discretize + solve + filter), graph (trace limit
curves), predict (eigenvalue predictions), compare (full verification
report), stokes (level-line tracing for one spectral parameter).  Output is
CSV/JSON/SVG with fixed 17-significant-digit formatting and LF endings so
repeated runs are bytewise identical.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import discretize, graph as graph_mod, linalg, phase, profiles, \
    quantize, verify
from .discretize import BoundaryCondition, SignConvention
from .errors import ConfigError, SpectralPortraitError
from .profiles import Profile, ProfileKind

_FMT = "{:.17g}"


@dataclass
class RunConfig:
    command: str
    profile: Profile
    eps: float | None = None
    alpha: float | None = None
    reynolds: float | None = None
    sigma: float = 0.5
    tau: float = 0.05
    delta: float = 0.1
    depth: float = 6.0
    n: int | None = None
    lam: complex | None = None
    out: str = "."
    formats: tuple[str, ...] = ("csv", "json")
    sign: SignConvention = SignConvention.PLUS_I
    threads: int = 1


def _build_profile(args) -> Profile:
    kind = args.profile
    if kind == "linear":
        return profiles.linear()
    if kind == "shifted_square":
        return profiles.shifted_square()
    if kind == "half_sine":
        return profiles.half_sine()
    if kind == "quadratic":
        if args.beta is None:
            raise ConfigError("quadratic profile requires --beta")
        return profiles.quadratic(args.beta)
    raise ConfigError(f"unknown profile {kind!r}")


def parse_config(argv: list[str]) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="spectral-portrait",
        description="Limit spectral graphs, eigenvalue predictions and "
                    "discretized spectra for convection-dominated model "
                    "operators.")
    parser.add_argument("command",
                        choices=["portrait", "graph", "predict", "compare",
                                 "stokes"])
    parser.add_argument("--profile", default="linear",
                        choices=["linear", "quadratic", "shifted_square",
                                 "half_sine"])
    parser.add_argument("--beta", type=float, default=None)
    parser.add_argument("--eps", type=float, default=None)
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--reynolds", type=float, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--sigma", type=float, default=0.5)
    parser.add_argument("--tau", type=float, default=0.05)
    parser.add_argument("--delta", type=float, default=0.1)
    parser.add_argument("--depth", type=float, default=6.0)
    parser.add_argument("--lam", type=str, default=None,
                        help="spectral parameter as 're,im' (stokes command)")
    parser.add_argument("--out", default=".")
    parser.add_argument("--format", default="csv,json",
                        help="comma-separated subset of csv,json,svg")
    parser.add_argument("--sign-convention", default="plus_i",
                        choices=["plus_i", "minus_i"])
    args = parser.parse_args(argv)

    formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
    for f in formats:
        if f not in ("csv", "json", "svg"):
            raise ConfigError(f"unknown format {f!r}")
    lam = None
    if args.lam is not None:
        try:
            re_s, im_s = args.lam.split(",")
            lam = complex(float(re_s), float(im_s))
        except ValueError:
            raise ConfigError("--lam expects 're,im'")
    threads = int(os.environ.get("SPECTRAL_PORTRAIT_THREADS", "2"))
    cfg = RunConfig(
        command=args.command, profile=_build_profile(args), eps=args.eps,
        alpha=args.alpha, reynolds=args.reynolds, sigma=args.sigma,
        tau=args.tau, delta=args.delta, depth=args.depth, n=args.n,
        lam=lam, out=args.out, formats=formats,
        sign=SignConvention(args.sign_convention), threads=max(1, threads))
    _validate(cfg)
    return cfg


def _is_os_run(cfg: RunConfig) -> bool:
    return cfg.alpha is not None and cfg.reynolds is not None


def _validate(cfg: RunConfig) -> None:
    needs_param = cfg.command in ("portrait", "predict", "compare")
    if needs_param and cfg.eps is None and not _is_os_run(cfg):
        raise ConfigError(
            f"command {cfg.command!r} requires --eps or --alpha/--reynolds")
    if cfg.command == "stokes" and cfg.lam is None:
        raise ConfigError("command 'stokes' requires --lam")
    if (cfg.alpha is None) != (cfg.reynolds is None):
        raise ConfigError("--alpha and --reynolds must be given together")


def _solve_filtered(cfg: RunConfig) -> linalg.Spectrum:
    """Coarse/fine solve pair and the agreement filter."""
    if _is_os_run(cfg):
        n = cfg.n or 200
        n_coarse = max(64, n - 32)
        tol = 5e-3

        def assemble(m):
            return discretize.assemble_os(cfg.profile, cfg.alpha,
                                          cfg.reynolds, n=m, sign=cfg.sign)
    else:
        n = cfg.n or 400
        n_coarse = max(64, n - 80)
        tol = 1e-6

        def assemble(m):
            return discretize.assemble_model(cfg.profile, cfg.eps, n=m,
                                             sign=cfg.sign)

    with ThreadPoolExecutor(max_workers=min(2, cfg.threads)) as pool:
        fut_f = pool.submit(lambda: linalg.solve_pencil(assemble(n)))
        fut_c = pool.submit(lambda: linalg.solve_pencil(assemble(n_coarse)))
        fine, coarse = fut_f.result(), fut_c.result()
    return linalg.filter_spurious(coarse, fine, tol=tol)


def _curves(cfg: RunConfig):
    if _is_os_run(cfg) and cfg.profile.kind is ProfileKind.LINEAR:
        eps = 1.0 / (cfg.alpha * cfg.reynolds)
        return graph_mod.couette_os_curves(eps, cfg.alpha, depth=cfg.depth), \
            None
    g = graph_mod.build_limit_graph(cfg.profile, depth=cfg.depth)
    return list(g.curves), g


def _predictions(cfg: RunConfig):
    if _is_os_run(cfg):
        if cfg.profile.kind is ProfileKind.LINEAR:
            return quantize.predict_os_couette(cfg.alpha, cfg.reynolds,
                                               depth=cfg.depth)
        g = graph_mod.build_limit_graph(cfg.profile, depth=cfg.depth)
        eps_q = 1.0 / math.sqrt(cfg.alpha * cfg.reynolds)
        return quantize.predict_wkb(cfg.profile, eps_q, g, delta=cfg.delta)
    if cfg.profile.kind is ProfileKind.LINEAR:
        preds, _ = quantize.predict_model_couette(cfg.eps, cfg.sigma,
                                                  depth=cfg.depth)
        return preds
    g = graph_mod.build_limit_graph(cfg.profile, depth=cfg.depth)
    return quantize.predict_wkb(cfg.profile, cfg.eps, g, delta=cfg.delta)


def _write(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _spectrum_csv(spec: linalg.Spectrum) -> str:
    lines = ["re,im,flag"]
    for i, v in enumerate(spec.values):
        flag = "sentinel" if spec.sentinel[i] else \
            ("spurious" if spec.spurious[i] else "ok")
        lines.append(_FMT.format(v.real) + "," + _FMT.format(v.imag) + ","
                     + flag)
    return "\n".join(lines) + "\n"


def _curves_csv(curves) -> str:
    lines = ["tag,label,excluded,re,im,phase"]
    for c in sorted(curves, key=lambda c: (c.tag.value, c.label, c.excluded)):
        for s, p in zip(c.samples, c.phase):
            lines.append(",".join([c.tag.value, c.label,
                                   "1" if c.excluded else "0",
                                   _FMT.format(s.real), _FMT.format(s.imag),
                                   _FMT.format(p)]))
    return "\n".join(lines) + "\n"


def _predictions_json(preds) -> str:
    recs = [{"tag": p.tag.value, "k": p.k, "re": p.mu.real, "im": p.mu.imag,
             "radius": p.radius, "phase": p.phase_value}
            for p in sorted(preds, key=lambda p: (p.tag.value, p.k))]
    return json.dumps(recs, indent=1, sort_keys=True) + "\n"


def _bbox(cfg: RunConfig):
    lo, hi = profiles.semistrip(cfg.profile)
    if cfg.profile.kind is ProfileKind.LINEAR or \
            cfg.profile.kind is ProfileKind.HALF_SINE:
        pass
    w = hi - lo
    x0, x1 = lo - 0.1 * w, hi + 0.1 * w
    y0, y1 = -cfg.depth * 1.1, 0.1 * cfg.depth
    return x0, x1, y0, y1


def _svg(cfg: RunConfig, curves=None, spectrum=None, predictions=None) -> str:
    x0, x1, y0, y1 = _bbox(cfg)
    width, height = 640.0, 640.0 * (y1 - y0) / (x1 - x0)

    def pt(z):
        return ((z.real - x0) / (x1 - x0) * width,
                (y1 - z.imag) / (y1 - y0) * height)

    parts = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{width:.0f}" height="{height:.0f}" '
             f'viewBox="0 0 {width:.0f} {height:.0f}">']
    ax_x = pt(complex(0.0, 0.0))
    parts.append(f'<line x1="0" y1="{ax_x[1]:.2f}" x2="{width:.0f}" '
                 f'y2="{ax_x[1]:.2f}" stroke="#999" stroke-width="0.5"/>')
    for c in curves or []:
        if len(c.samples) < 2:
            continue
        coords = " ".join(f"{pt(s)[0]:.2f},{pt(s)[1]:.2f}"
                          for s in c.samples)
        dash = ' stroke-dasharray="6,4"' if c.excluded else ""
        parts.append(f'<polyline points="{coords}" fill="none" '
                     f'stroke="#06c" stroke-width="1.2"{dash}/>')
    for p in predictions or []:
        x, y = pt(p.mu)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" '
                     f'r="4" fill="none" stroke="#c60" stroke-width="0.8"/>')
    if spectrum is not None:
        for i, v in enumerate(spectrum.values):
            if spectrum.sentinel[i] or spectrum.spurious[i]:
                continue
            x, y = pt(v)
            if not (0 <= x <= width and 0 <= y <= height):
                continue
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2" '
                         f'fill="#000"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _emit(cfg: RunConfig, name: str, csv: str | None = None,
          jsn: str | None = None, svg: str | None = None) -> None:
    os.makedirs(cfg.out, exist_ok=True)
    base = os.path.join(cfg.out, name)
    if "csv" in cfg.formats and csv is not None:
        _write(base + ".csv", csv)
    if "json" in cfg.formats and jsn is not None:
        _write(base + ".json", jsn)
    if "svg" in cfg.formats and svg is not None:
        _write(base + ".svg", svg)


def _run_portrait(cfg: RunConfig) -> int:
    spec = _solve_filtered(cfg)
    curves, _ = _curves(cfg)
    _emit(cfg, "portrait", csv=_spectrum_csv(spec),
          jsn=json.dumps({"meta": spec.meta,
                          "eigenvalues": [[v.real, v.imag]
                                          for v in spec.kept()]},
                         indent=1, sort_keys=True) + "\n",
          svg=_svg(cfg, curves=curves, spectrum=spec))
    return 0


def _run_graph(cfg: RunConfig) -> int:
    curves, g = _curves(cfg)
    meta = {"profile": profiles.to_config(cfg.profile)}
    if g is not None:
        meta["knots"] = {k: [v.real, v.imag] for k, v in g.knots.items()}
    _emit(cfg, "graph", csv=_curves_csv(curves),
          jsn=json.dumps(meta, indent=1, sort_keys=True) + "\n",
          svg=_svg(cfg, curves=curves))
    return 0


def _run_predict(cfg: RunConfig) -> int:
    preds = _predictions(cfg)
    _emit(cfg, "predictions", jsn=_predictions_json(preds),
          svg=_svg(cfg, predictions=preds))
    return 0


def _run_compare(cfg: RunConfig) -> int:
    spec = _solve_filtered(cfg)
    curves, g = _curves(cfg)
    preds = _predictions(cfg)
    report = verify.match_predictions(spec, preds)
    retained = [c for c in curves if not c.excluded and len(c.samples) >= 2]
    exempt = []
    if cfg.profile.kind is ProfileKind.LINEAR:
        eps = cfg.eps if not _is_os_run(cfg) \
            else 1.0 / (cfg.alpha * cfg.reynolds)
        exempt = [(-1j / math.sqrt(3.0),
                   cfg.sigma * math.sqrt(eps) * abs(math.log(eps)))]
    _, max_d = verify.graph_distance(spec.kept(), retained,
                                     depth=cfg.depth, exempt=exempt)
    matched = sum(1 for p in report.pairs if p.within_radius)
    frac = matched / max(1, len(preds))
    payload = verify.report_to_dict(
        report, graph_tau=cfg.tau, graph_max=max_d,
        constants={"sigma": cfg.sigma, "slack": 10.0,
                   "sign_convention": cfg.sign.value})
    _emit(cfg, "compare",
          jsn=json.dumps(payload, indent=1, sort_keys=True) + "\n",
          svg=_svg(cfg, curves=curves, spectrum=spec, predictions=preds))
    if max_d > cfg.tau or frac < 0.9:
        return 2
    return 0


def _run_stokes(cfg: RunConfig) -> int:
    complexes = phase.trace_stokes(cfg.profile, cfg.lam, max_len=cfg.depth)
    lines = ["tag,re,im"]
    for line in sorted(complexes.lines, key=lambda l: l.tag):
        for z in line.points:
            lines.append(",".join([line.tag, _FMT.format(z.real),
                                   _FMT.format(z.imag)]))
    curves = [graph_mod.SpectralCurve(
        graph_mod.CurveTag.GAMMA_0, tuple(line.points),
        tuple(0.0 for _ in line.points), ("tp", line.truncation.value),
        label=line.tag) for line in complexes.lines]
    _emit(cfg, "stokes", csv="\n".join(lines) + "\n",
          svg=_svg(cfg, curves=curves))
    return 0


def run(cfg: RunConfig) -> int:
    handler = {"portrait": _run_portrait, "graph": _run_graph,
               "predict": _run_predict, "compare": _run_compare,
               "stokes": _run_stokes}[cfg.command]
    return handler(cfg)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 64
    except SpectralPortraitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
