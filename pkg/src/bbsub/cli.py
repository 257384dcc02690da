"""Command-line interface: ``bbsub <command> [options]``.

Exit codes: 0 all verdicts pass, 1 some fail or violation, 2 inconclusive
present, 3 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import theorems as th
from .bernardi import CorpusEntry, bernardi_transform, class_membership, example_entry, load_corpus
from .certify import certify, write_surface_csv
from .errors import DomainError, ParameterError
from .io import atomic_write, csv_text, dumps
from .regions import Region, boundary_polyline

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
VIEWPORT = (-0.5, 3.5, -2.0, 2.0)
PARAM_NAMES = ("A", "B", "beta", "gamma")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    theorem: str | None = None
    corollary: str | None = None
    params: dict = field(default_factory=dict)
    free: str | None = None
    ranges: dict = field(default_factory=dict)  # name -> (min, max, steps)
    t_points: int = 257
    k_max: float = 64.0
    k_points: int = 64
    m_points: int = 65
    n_radii: int = 12
    n_samples: int = 1024
    r_max: float = 0.99
    tol: float = 1e-9
    out: str | None = None
    fmt: str = "json"
    seed: int = 42
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, (lo, hi, steps) in self.ranges.items():
            if int(steps) < 1:
                raise ParameterError(f"{name}: steps must be >= 1")
            if hi < lo:
                raise ParameterError(f"{name}: max < min")
        if not 0 < self.r_max < 1:
            raise ParameterError("r_max must lie in (0, 1)")
        if not self.tol > 0:
            raise ParameterError("tolerance must be positive")
        if self.fmt not in ("json", "csv", "svg"):
            raise ParameterError(f"unknown format {self.fmt!r}")

    @property
    def bb_params(self):
        return th.BBParams(**{k: float(self.params.get(k, 0.0)) for k in PARAM_NAMES})


def _emit(cfg: RunConfig, text):
    if cfg.out:
        atomic_write(cfg.out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(cfg, schema, payload):
    _emit(cfg, dumps({"schema": schema, **payload}, indent=2))


# -- commands -------------------------------------------------------------------------------

def cmd_check(cfg: RunConfig):
    if cfg.corollary:
        spec = th.specialize(cfg.corollary, **cfg.extra)
        parent = spec.parent(**_t5_grid(cfg, spec.theorem))
        ok = parent.satisfied and spec.displayed_ok
        payload = parent.to_dict()
        payload.update(params=spec.params, satisfied=ok, corollary=spec.to_dict())
        if cfg.extra.get("consistency"):
            checked, disc = th.corollary_consistency(cfg.corollary, n=int(cfg.extra["consistency"]), seed=cfg.seed)
            payload["corollary"]["consistency"] = {"checked": checked, "discrepancies": disc[:20],
                                                   "count": len(disc)}
        _json(cfg, "hypothesis", payload)
        return EXIT_PASS if ok else EXIT_FAIL
    res = th.hypothesis(cfg.theorem, cfg.bb_params, **_t5_grid(cfg, cfg.theorem))
    _json(cfg, "hypothesis", {**res.to_dict(), "params": cfg.bb_params})
    return EXIT_PASS if res.satisfied else EXIT_FAIL


def _t5_grid(cfg, theorem):
    return {"k_max": cfg.k_max, "m_grid": cfg.m_points} if theorem == "t5" else {}


def cmd_interval(cfg: RunConfig):
    if not cfg.free:
        raise UsageError("interval needs --free")
    lo, hi, steps = cfg.ranges.get(cfg.free, (-20.0, 20.0, None))
    fixed = {k: v for k, v in cfg.params.items() if k != cfg.free}
    grid = {"k_max": cfg.k_max, "m_points": cfg.m_points} if cfg.theorem == "t5" else {}
    ivs = th.feasible_interval(cfg.theorem, fixed, cfg.free, lo=lo, hi=hi,
                               n_scan=int(steps) if steps else None, **grid)
    _json(cfg, "interval", {"theorem": cfg.theorem, "free": cfg.free, "fixed": fixed,
                            "intervals": [iv.to_list() for iv in ivs], "scan": {"min": lo, "max": hi}})
    return EXIT_PASS if ivs else EXIT_FAIL


def cmd_certify(cfg: RunConfig):
    p = cfg.bb_params
    rep = certify(cfg.theorem, p, cfg.t_points, cfg.k_max, cfg.k_points, cfg.m_points)
    if cfg.extra.get("surface"):
        write_surface_csv(cfg.theorem, p, cfg.extra["surface"], cfg.t_points, cfg.k_max, cfg.k_points,
                               cfg.m_points)
    _json(cfg, "gap_report", rep.to_dict())
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(rep.verdict, EXIT_INCONCLUSIVE)


def _resolve_entry(cfg: RunConfig) -> CorpusEntry:
    name = cfg.extra.get("corpus")
    if not name:
        raise UsageError("--corpus is required")
    if name in ("example_p1", "example_p2") and "gamma" in cfg.params:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            entry = example_entry(name, float(cfg.params["gamma"]))
    else:
        corpus = load_corpus(cfg.extra.get("manifest"))
        if name not in corpus:
            raise UsageError(f"unknown corpus entry {name!r}; known: {', '.join(corpus)}")
        entry = corpus[name]
    if cfg.extra.get("target"):
        entry = CorpusEntry(entry.name, entry.f, Region.parse(cfg.extra["target"]), entry.mode, entry.note)
    if cfg.extra.get("mode"):
        entry = CorpusEntry(entry.name, entry.f, entry.region, cfg.extra["mode"], entry.note)
    return entry


def _subord_exit(verdict):
    return {"contained": EXIT_PASS, "violated": EXIT_FAIL}.get(verdict, EXIT_INCONCLUSIVE)


def cmd_subord(cfg: RunConfig):
    entry = _resolve_entry(cfg)
    rep = class_membership(entry, cfg.r_max, n_radii=cfg.n_radii, n_samples=cfg.n_samples, tol=cfg.tol)
    _json(cfg, "subord", rep.to_dict())
    return _subord_exit(rep.verdict)


def cmd_bernardi(cfg: RunConfig):
    base = _resolve_entry(cfg)
    c = float(cfg.extra["c"])
    F = bernardi_transform(base.f, c)
    region = Region.parse(cfg.extra["target"]) if cfg.extra.get("target") else base.region
    mode = cfg.extra.get("mode") or ("derivative" if base.mode == "derivative" else "ratio")
    entry = CorpusEntry(f"Bernardi[{base.name}; c={c:g}]", F, region, mode)
    rep = class_membership(entry, cfg.r_max, n_radii=cfg.n_radii, n_samples=cfg.n_samples, tol=cfg.tol)
    values = []
    for zs in cfg.extra.get("z") or []:
        z = complex(zs.replace(" ", ""))
        values.append({"z": z, "F": complex(F(z))})
    _json(cfg, "bernardi", {"base": base.name, "c": c, "mode": mode, "target": region.label, "values": values,
                            "membership": {"schema": "subord", **rep.to_dict()}})
    return _subord_exit(rep.verdict)


def _axis(cfg, name):
    lo, hi, steps = cfg.ranges[name]
    steps = int(steps)
    return np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])


def cmd_scan(cfg: RunConfig):
    x, y = cfg.extra["x"], cfg.extra["y"]
    if x == y or x not in PARAM_NAMES or y not in PARAM_NAMES:
        raise UsageError("scan needs two different parameters among A, B, beta, gamma")
    xs, ys = _axis(cfg, x), _axis(cfg, y)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    base = {k: float(cfg.params.get(k, 0.0)) for k in PARAM_NAMES}
    base[x], base[y] = X, Y
    grid = {"k_max": cfg.k_max, "m_points": cfg.m_points} if cfg.theorem == "t5" else {}
    ok = th.satisfied_mask(cfg.theorem, **base, **grid)
    rows = th.margin_rows(cfg.theorem, **base, **grid)
    with np.errstate(all="ignore"):
        worst = np.min(np.stack([np.broadcast_to(v, X.shape) for _, v, _ in rows]), axis=0)
    out = [[float(X[i, j]), float(Y[i, j]), "satisfied" if ok[i, j] else "violated", float(worst[i, j])]
           for i in range(X.shape[0]) for j in range(X.shape[1])]
    _emit(cfg, csv_text([x, y, "verdict", "min_margin"], out))
    return EXIT_PASS


def _svg(polylines, viewport):
    x0, x1, y0, y1 = viewport
    w, h = 800, int(800 * (y1 - y0) / (x1 - x0))
    colours = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="{x0} {-y1} {x1 - x0} {y1 - y0}">',
             f'<rect x="{x0}" y="{-y1}" width="{x1 - x0}" height="{y1 - y0}" fill="white"/>',
             f'<line x1="{x0}" y1="0" x2="{x1}" y2="0" stroke="#bbb" stroke-width="0.005"/>',
             f'<line x1="0" y1="{-y1}" x2="0" y2="{-y0}" stroke="#bbb" stroke-width="0.005"/>']
    for i, (label, w_pts) in enumerate(polylines):
        pts = [p for p in w_pts if np.isfinite(p)]
        if not pts:
            continue
        d = "M " + " L ".join(f"{p.real:.6g} {-p.imag:.6g}" for p in pts)
        parts.append(f'<path d="{d}" fill="none" stroke="{colours[i % len(colours)]}" stroke-width="0.01">'
                     f"<title>{label}</title></path>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_plot(cfg: RunConfig):
    polylines = []
    for spec in cfg.extra.get("regions") or []:
        region = Region.parse(spec)
        _, w = boundary_polyline(region, cfg.n_samples)
        polylines.append((f"boundary:{region.label}", np.asarray(w)))
    for name in cfg.extra.get("corpus_curves") or []:
        entry = load_corpus()[name]
        theta = np.linspace(-np.pi, np.pi, cfg.n_samples)
        polylines.append((f"image:{name}@r={cfg.r_max:g}", np.asarray(entry.transformed()(cfg.r_max * np.exp(1j * theta)))))
    if not polylines:
        raise UsageError("plot needs --region and/or --curve")
    viewport = tuple(cfg.extra.get("viewport") or VIEWPORT)
    rows = [[label, i, float(p.real), float(p.imag)] for label, pts in polylines for i, p in enumerate(pts)]
    if cfg.fmt == "csv":
        _emit(cfg, csv_text(["curve", "index", "re", "im"], rows))
    else:
        _emit(cfg, _svg(polylines, viewport))
        if cfg.out and cfg.extra.get("csv", True):
            atomic_write(cfg.out.rsplit(".", 1)[0] + ".csv", csv_text(["curve", "index", "re", "im"], rows))
    return EXIT_PASS


COMMANDS = {
    "check": cmd_check,
    "interval": cmd_interval,
    "certify": cmd_certify,
    "subord": cmd_subord,
    "bernardi": cmd_bernardi,
    "scan": cmd_scan,
    "plot": cmd_plot,
}


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ParameterError, DomainError, KeyError) as exc:
        print(f"bbsub {cfg.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


# -- argument parsing -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _params(p):
    for name in PARAM_NAMES:
        p.add_argument(f"--{name}", type=float, default=None)


def _grid(p):
    p.add_argument("--t-points", type=int, default=257)
    p.add_argument("--k-max", type=float, default=64.0)
    p.add_argument("--k-points", type=int, default=64)
    p.add_argument("--m-points", type=int, default=65)


def _sub(p):
    p.add_argument("--rmax", type=float, default=0.99)
    p.add_argument("--n-radii", type=int, default=12)
    p.add_argument("--n-samples", type=int, default=1024)
    p.add_argument("--tol", type=float, default=1e-9)


def build_parser():
    parser = _Parser(prog="bbsub", description="Briot-Bouquet subordination checks.")
    parser.add_argument("--out", help="output path (default: standard output)")
    parser.add_argument("--seed", type=int, default=42)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="evaluate hypothesis predicates")
    p.add_argument("--theorem", choices=th.THEOREMS)
    p.add_argument("--corollary", choices=sorted(th.COROLLARIES))
    _params(p)
    p.add_argument("--alpha", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--consistency", type=int, default=0, help="random consistency scan size")
    p.add_argument("--k-max", type=float, default=th.T5_K_MAX)
    p.add_argument("--m-points", type=int, default=th.T5_M_POINTS)

    p = sub.add_parser("interval", help="feasible interval of one parameter")
    p.add_argument("--theorem", choices=th.THEOREMS, required=True)
    _params(p)
    p.add_argument("--free", choices=PARAM_NAMES, required=True)
    p.add_argument("--range", nargs=3, type=float, metavar=("MIN", "MAX", "STEPS"))
    p.add_argument("--k-max", type=float, default=th.T5_K_MAX)
    p.add_argument("--m-points", type=int, default=th.T5_M_POINTS)

    p = sub.add_parser("certify", help="minimise the boundary gap")
    p.add_argument("--theorem", choices=th.THEOREMS, required=True)
    _params(p)
    _grid(p)
    p.add_argument("--surface", help="also write the (t, k, m, gap) surface CSV here")

    for name in ("subord", "bernardi"):
        p = sub.add_parser(name, help="subordination test" if name == "subord" else "apply the Bernardi operator")
        p.add_argument("--corpus", required=True)
        p.add_argument("--manifest")
        p.add_argument("--gamma", type=float)
        p.add_argument("--target")
        p.add_argument("--mode", choices=("ratio", "derivative", "raw"))
        _sub(p)
        if name == "bernardi":
            p.add_argument("--c", type=float, required=True)
            p.add_argument("--z", action="append", help="evaluation point, e.g. 0.5+0.1j")

    p = sub.add_parser("scan", help="hypothesis verdicts on a 2-D parameter grid (CSV)")
    p.add_argument("--theorem", choices=th.THEOREMS, required=True)
    _params(p)
    p.add_argument("--x", required=True, choices=PARAM_NAMES)
    p.add_argument("--y", required=True, choices=PARAM_NAMES)
    p.add_argument("--x-range", nargs=3, type=float, required=True, metavar=("MIN", "MAX", "STEPS"))
    p.add_argument("--y-range", nargs=3, type=float, required=True, metavar=("MIN", "MAX", "STEPS"))
    p.add_argument("--k-max", type=float, default=th.T5_K_MAX)
    p.add_argument("--m-points", type=int, default=th.T5_M_POINTS)

    p = sub.add_parser("plot", help="region boundaries and image curves (SVG + CSV)")
    p.add_argument("--region", action="append", help="lemniscate, expdisc, parabola or janowski:A,B")
    p.add_argument("--curve", action="append", help="corpus entry whose image curve to draw")
    p.add_argument("--rmax", type=float, default=0.99)
    p.add_argument("--n-samples", type=int, default=512)
    p.add_argument("--viewport", nargs=4, type=float, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p.add_argument("--format", choices=("svg", "csv"), default="svg")
    return parser


def config_from_args(ns) -> RunConfig:
    params = {k: getattr(ns, k) for k in PARAM_NAMES if getattr(ns, k, None) is not None}
    if getattr(ns, "gamma", None) is not None:
        params["gamma"] = ns.gamma
    ranges, extra = {}, {}
    cmd = ns.command
    if cmd == "check":
        if bool(ns.theorem) == bool(ns.corollary):
            raise UsageError("check needs exactly one of --theorem or --corollary")
        if ns.corollary:
            cor = th.COROLLARIES[ns.corollary]
            for name in cor.free:
                val = ns.alpha if name == "alpha" else ns.c if name == "c" else params.get(name)
                if val is None:
                    raise UsageError(f"{ns.corollary} needs --{name}")
                extra[name] = val
            extra["consistency"] = ns.consistency
    if cmd == "interval" and ns.range:
        ranges[ns.free] = tuple(ns.range)
    if cmd == "certify" and ns.surface:
        extra["surface"] = ns.surface
    if cmd in ("subord", "bernardi"):
        extra.update(corpus=ns.corpus, manifest=ns.manifest, target=ns.target, mode=ns.mode)
        if cmd == "bernardi":
            extra.update(c=ns.c, z=ns.z)
    if cmd == "scan":
        ranges[ns.x] = tuple(ns.x_range)
        ranges[ns.y] = tuple(ns.y_range)
        extra.update(x=ns.x, y=ns.y)
    if cmd == "plot":
        extra.update(regions=ns.region, corpus_curves=ns.curve, viewport=ns.viewport)
    return RunConfig(
        command=cmd,
        theorem=getattr(ns, "theorem", None),
        corollary=getattr(ns, "corollary", None),
        params=params,
        free=getattr(ns, "free", None),
        ranges=ranges,
        t_points=getattr(ns, "t_points", 257),
        k_max=getattr(ns, "k_max", 64.0),
        k_points=getattr(ns, "k_points", 64),
        m_points=getattr(ns, "m_points", 65),
        n_radii=getattr(ns, "n_radii", 12),
        n_samples=getattr(ns, "n_samples", 1024),
        r_max=getattr(ns, "rmax", 0.99),
        tol=getattr(ns, "tol", 1e-9),
        out=ns.out,
        fmt=getattr(ns, "format", "json") if cmd == "plot" else ("csv" if cmd == "scan" else "json"),
        seed=ns.seed,
        extra=extra,
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (UsageError, ParameterError) as exc:
        parser.print_usage(sys.stderr)
        print(f"bbsub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(cfg)
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
