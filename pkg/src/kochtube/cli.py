"""Command-line interface: ``python -m kochtube <command> [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError, ConfigurationError, DomainError, KochTubeError
from .scaling import EPS_MAX, epsilon_of, index_from_x, index_of

COMMANDS = ("tube", "direct", "oracle", "compare", "coeffs", "dims", "h-profile", "selftest")

# default grid: x from 0.6 to 3.75, clear of the jump points at integer x and
# below eps = 1/3, where the neighbourhood still leaves part of the interior free
DEFAULT_EPS_MAX = epsilon_of(0.6)
DEFAULT_EPS_MIN = epsilon_of(3.75)

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    eps_min: float = DEFAULT_EPS_MIN
    eps_max: float = DEFAULT_EPS_MAX
    count: int = 8
    eps: list[float] = field(default_factory=list)
    N: int = 200
    M: int = 30
    A_max: int = 400
    samples: int = 1_000_000
    seed: int = 7
    h_mode: str = "geometric"
    output: str | None = None
    fmt: str | None = None
    n: int = 3

    def grid(self) -> list[float]:
        if self.eps:
            pts = list(self.eps)
        else:
            if self.count < 1:
                raise ConfigurationError("count must be >= 1")
            if not 0.0 < self.eps_min <= self.eps_max:
                raise ConfigurationError("need 0 < eps-min <= eps-max")
            if self.count == 1:
                pts = [self.eps_max]
            else:
                pts = list(np.geomspace(self.eps_max, self.eps_min, self.count))
        for e in pts:
            if not 0.0 < e <= EPS_MAX * (1.0 + 1e-15):
                raise DomainError(f"grid value {e!r} outside (0, 3^(-1/2)]")
        return [float(e) for e in pts]


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _json_rows(header: list[str], rows: list[list], meta: dict) -> str:
    return json.dumps({"meta": meta, "columns": header, "rows": rows}) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _grid_output(cfg: RunConfig, header, rows, meta) -> str:
    if (cfg.fmt or "csv") == "json":
        return _json_rows(header, rows, meta)
    return _csv(header, rows)


def _cmd_tube(cfg: RunConfig) -> int:
    from .tube import v_tube

    header = ["epsilon", "V", "term_G1", "term_G2", "h"]
    rows = []
    for e in cfg.grid():
        t = v_tube(e, cfg.N, cfg.M, cfg.A_max, cfg.h_mode)
        rows.append([t.epsilon, t.V, t.term_G1, t.term_G2, t.h])
    meta = {"command": "tube", "N": cfg.N, "M": cfg.M, "A_max": cfg.A_max, "h_mode": cfg.h_mode}
    _emit(cfg, _grid_output(cfg, header, rows, meta))
    return EXIT_OK


def _cmd_direct(cfg: RunConfig) -> int:
    from .tube import direct_evaluation

    header = ["epsilon", "V", "term_G1", "term_G2", "h"]
    rows = []
    for e in cfg.grid():
        t = direct_evaluation(e, h_mode=cfg.h_mode)
        rows.append([t.epsilon, t.V, t.term_G1, t.term_G2, t.h])
    meta = {"command": "direct", "h_mode": cfg.h_mode}
    _emit(cfg, _grid_output(cfg, header, rows, meta))
    return EXIT_OK


def _cmd_oracle(cfg: RunConfig) -> int:
    from .geometry import oracle_inner_area

    header = ["epsilon", "area_mean", "std_error", "bias_bound", "samples", "seed"]
    rows = []
    for e in cfg.grid():
        o = oracle_inner_area(e, cfg.samples, cfg.seed)
        rows.append([o.epsilon, o.area_mean, o.std_error, o.bias_bound, o.samples, o.seed])
    meta = {"command": "oracle", "samples": cfg.samples, "seed": cfg.seed}
    _emit(cfg, _grid_output(cfg, header, rows, meta))
    return EXIT_OK


def _cmd_compare(cfg: RunConfig) -> int:
    from .geometry import oracle_inner_area
    from .tube import v_direct, v_tube

    header = ["epsilon", "v_direct", "v_tube", "oracle_mean", "oracle_se", "bias", "pass"]
    rows = []
    ok_all = True
    for e in cfg.grid():
        vd = v_direct(e, h_mode=cfg.h_mode)
        idx = index_of(e)
        vt = v_tube(idx, cfg.N, cfg.M, cfg.A_max, cfg.h_mode).V if idx.frac > 0.0 else math.nan
        o = oracle_inner_area(e, cfg.samples, cfg.seed)
        ok = abs(vd - o.area_mean) <= 3.0 * o.std_error + o.bias_bound
        ok_all &= ok
        rows.append([e, vd, vt, o.area_mean, o.std_error, o.bias_bound, "yes" if ok else "no"])
    meta = {"command": "compare", "samples": cfg.samples, "seed": cfg.seed, "h_mode": cfg.h_mode,
            "N": cfg.N, "M": cfg.M, "A_max": cfg.A_max}
    _emit(cfg, _grid_output(cfg, header, rows, meta))
    verdict = {"verdict": "pass" if ok_all else "fail", "rows": len(rows)}
    sys.stderr.write(json.dumps(verdict) + "\n")
    return EXIT_OK if ok_all else EXIT_VALIDATION


def _cmd_coeffs(cfg: RunConfig) -> int:
    from .tube import coefficient_table

    _emit(cfg, coefficient_table(cfg.N, cfg.M).to_json() + "\n")
    return EXIT_OK


def _cmd_dims(cfg: RunConfig) -> int:
    from .tube import complex_dimensions

    if cfg.n < 0:
        raise ConfigurationError("n must be >= 0")
    dims = complex_dimensions(cfg.n, cfg.M, cfg.h_mode)
    doc = {
        "meta": {"N": cfg.n, "M": cfg.M, "h_mode": cfg.h_mode},
        "dimensions": [
            {"re": d.value.real, "im": d.value.imag, "line": d.line, "n": d.n,
             "magnitude": d.magnitude}
            for d in dims
        ],
    }
    _emit(cfg, json.dumps(doc) + "\n")
    return EXIT_OK


def _cmd_h_profile(cfg: RunConfig) -> int:
    from .cantor import h_geometric, h_tilde

    header = ["x", "h_geometric", "h_tilde"]
    rows = []
    if cfg.count < 1:
        raise ConfigurationError("count must be >= 1")
    for i in range(cfg.count):
        x = i / cfg.count
        idx = index_from_x(x)
        rows.append([x, h_geometric(idx), h_tilde(idx)])
    meta = {"command": "h-profile", "count": cfg.count}
    _emit(cfg, _grid_output(cfg, header, rows, meta))
    return EXIT_OK


def _cmd_selftest(cfg: RunConfig) -> int:
    from .selftest import run_checks

    results = run_checks()
    lines = [f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in results]
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_VALIDATION


_HANDLERS = {
    "tube": _cmd_tube,
    "direct": _cmd_direct,
    "oracle": _cmd_oracle,
    "compare": _cmd_compare,
    "coeffs": _cmd_coeffs,
    "dims": _cmd_dims,
    "h-profile": _cmd_h_profile,
    "selftest": _cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kochtube", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_opts(p, count=8):
        p.add_argument("--eps-min", type=float, default=DEFAULT_EPS_MIN)
        p.add_argument("--eps-max", type=float, default=DEFAULT_EPS_MAX)
        p.add_argument("--count", type=int, default=count, help="log-spaced grid size")
        p.add_argument("--eps", type=float, nargs="+", default=[], help="explicit eps values")

    def trunc_opts(p):
        p.add_argument("--N", type=int, default=200, help="outer Fourier truncation")
        p.add_argument("--M", type=int, default=30, help="inner series truncation")
        p.add_argument("--A-max", dest="A_max", type=int, default=400, help="g-table range")

    def out_opts(p, formats=("csv", "json")):
        p.add_argument("--output", "-o", default=None, help="write here instead of stdout")
        p.add_argument("--format", dest="fmt", choices=formats, default=None)

    def h_opts(p):
        p.add_argument("--h-mode", choices=("geometric", "approximate"), default="geometric")

    def oracle_opts(p, samples):
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--seed", type=int, default=7)

    p = sub.add_parser("tube", help="V(eps) from the Fourier tube formula")
    grid_opts(p)
    trunc_opts(p)
    h_opts(p)
    out_opts(p)
    p = sub.add_parser("direct", help="V(eps) from the closed forms")
    grid_opts(p)
    h_opts(p)
    out_opts(p)
    p = sub.add_parser("oracle", help="Monte Carlo area estimate")
    grid_opts(p, count=4)
    oracle_opts(p, 1_000_000)
    out_opts(p)
    p = sub.add_parser("compare", help="direct vs tube vs oracle, with verdict")
    grid_opts(p, count=4)
    trunc_opts(p)
    h_opts(p)
    oracle_opts(p, 1_000_000)
    out_opts(p)
    p = sub.add_parser("coeffs", help="coefficient table a, b, sigma, tau as JSON")
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--M", type=int, default=30)
    out_opts(p, ("json",))
    p = sub.add_parser("dims", help="possible complex dimensions as JSON")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--M", type=int, default=30)
    h_opts(p)
    out_opts(p, ("json",))
    p = sub.add_parser("h-profile", help="h_geometric and h_tilde over one period in x")
    p.add_argument("--count", type=int, default=101)
    out_opts(p)
    p = sub.add_parser("selftest", help="run the invariant suite")
    out_opts(p, ("text",))
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for name in ("eps_min", "eps_max", "count", "eps", "N", "M", "A_max", "samples", "seed",
                 "h_mode", "output", "fmt", "n"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    return cfg


def run(cfg: RunConfig) -> int:
    try:
        return _HANDLERS[cfg.command](cfg)
    except (DomainError, ConfigurationError) as exc:
        sys.stderr.write(json.dumps(exc.record()) + "\n")
        return EXIT_USAGE
    except (AccuracyError, KochTubeError) as exc:
        sys.stderr.write(json.dumps(exc.record()) + "\n")
        return EXIT_VALIDATION


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
