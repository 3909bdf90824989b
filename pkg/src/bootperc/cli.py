"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 budget exhausted / inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import IO, Any, Dict, List, Optional

from . import __version__
from .constructions import FAMILIES, STRATEGIES, ConstructionError, ConstructionSpec
from .graph import Graph, GraphFormatError, min_degree, parse_edge_list, serialize_edge_list, sigma2
from .percolation import closure
from .solver import BUDGET_EXHAUSTED, greedy_upper_bound, min_percolating_set, reichman_bound
from .verifier import (
    CSV_FIELDS,
    PreconditionError,
    check_all_r_sets_percolate,
    check_big_sets_percolate,
    check_closed_set_structure,
    check_closure_gap,
    iter_main_theorem_sweep,
    verify_construction_extremal,
    verify_main_theorem_sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_BUDGET = 10_000_000
COMMANDS = ("closure", "solve", "construct", "verify", "sweep", "bound")
SUITES = ("construction", "closure-gap", "big-sets", "all-r-sets", "closed-structure")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    graph: Optional[str] = None
    family: Optional[str] = None
    n: Optional[str] = None
    r: Optional[int] = None
    d: Optional[int] = None
    k: Optional[int] = None
    strategy: str = "sidon"
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    trials: int = 10
    sample_count: int = 1000
    edge_prob: float = 0.55
    set: Optional[List[int]] = None
    suite: Optional[str] = None
    output_format: str = "json"
    output_path: Optional[str] = None
    workers: int = 1
    timing: bool = False
    extra: Dict[str, Any] = field(default_factory=dict)

    def effective(self) -> Dict[str, Any]:
        out = asdict(self)
        out.pop("extra")
        out.pop("output_path")
        return out


def _parse_n_range(text: str) -> List[int]:
    for sep in (":", "-", ".."):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _parse_set(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bootperc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--graph", help="edge-list file")
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--n", help="vertex count (grid: side length); sweep accepts LO:HI")
        p.add_argument("--r", type=int)
        p.add_argument("--d", type=int, help="regularity / dimension / min degree")
        p.add_argument("--k", type=int)
        p.add_argument("--strategy", choices=STRATEGIES, default="sidon")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int)
        p.add_argument("--trials", type=int, default=10)
        p.add_argument("--sample-count", type=int, default=1000)
        p.add_argument("--edge-prob", type=float, default=0.55)
        p.add_argument("--set", type=_parse_set)
        p.add_argument("--suite", choices=SUITES)
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="csv" if name == "sweep" else "json")
        p.add_argument("--out")
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        p.add_argument("--timing", action="store_true", help="include wall time in results")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    budget = args.budget
    if budget is None:
        env = os.environ.get("BOOTPERC_BUDGET")
        budget = int(env) if env else DEFAULT_BUDGET
    return RunConfig(
        command=args.command, graph=args.graph, family=args.family, n=args.n, r=args.r,
        d=args.d, k=args.k, strategy=args.strategy, seed=args.seed, budget=budget,
        trials=args.trials, sample_count=args.sample_count, edge_prob=args.edge_prob,
        set=args.set, suite=args.suite, output_format=args.format, output_path=args.out,
        workers=max(1, args.workers), timing=args.timing,
    )


def _spec(cfg: RunConfig) -> ConstructionSpec:
    if cfg.family is None or cfg.n is None:
        raise UsageError("need --graph, or --family with --n")
    d = cfg.d
    if cfg.family == "sidon-bipartite" and d is None and cfg.r is not None:
        d = cfg.r - 3
    return ConstructionSpec(family=cfg.family, n=int(cfg.n), r=cfg.r, d=d,
                            strategy=cfg.strategy, seed=cfg.seed, edge_prob=cfg.edge_prob)


def _load_graph(cfg: RunConfig) -> Graph:
    if cfg.graph is not None:
        with open(cfg.graph) as fh:
            return parse_edge_list(fh.read())
    return _spec(cfg).build()


def _need_r(cfg: RunConfig) -> int:
    if cfg.r is None:
        raise UsageError(f"{cfg.command} requires --r")
    return cfg.r


class _Output:
    def __init__(self, cfg: RunConfig, stream: IO[str]):
        self.cfg = cfg
        self.stream = stream

    def emit(self, payload: Dict[str, Any], text_lines: Optional[List[str]] = None) -> None:
        cfg = self.cfg
        if cfg.output_format == "json":
            doc = {"config": cfg.effective(), **payload}
            self.stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            return
        header = json.dumps(cfg.effective(), sort_keys=True)
        if cfg.output_format == "csv":
            self.stream.write(f"# config {header}\n")
            flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                    for k, v in payload.items()}
            keys = sorted(flat)
            self.stream.write(",".join(keys) + "\n")
            self.stream.write(",".join(_csv_cell(flat[k]) for k in keys) + "\n")
            return
        self.stream.write(f"config: {header}\n")
        if text_lines is None:
            text_lines = [f"{k}: {payload[k]}" for k in sorted(payload)]
        self.stream.write("\n".join(text_lines) + "\n")


def _csv_cell(value: Any) -> str:
    s = "" if value is None else str(value)
    if any(c in s for c in ',"\n'):
        s = '"' + s.replace('"', '""') + '"'
    return s


def _cmd_closure(cfg: RunConfig, out: _Output) -> int:
    g = _load_graph(cfg)
    r = _need_r(cfg)
    if cfg.set is None:
        raise UsageError("closure requires --set")
    trace = closure(g, cfg.set, r)
    payload = trace.to_dict()
    payload["percolates"] = len(trace.final) == g.n
    out.emit(payload, [
        f"initial: {sorted(trace.initial)}",
        *(f"t={t + 1}: {sorted(s)}" for t, s in enumerate(trace.steps)),
        f"final size {len(trace.final)} of {g.n}, time {trace.time}",
    ])
    return EXIT_OK


def _cmd_solve(cfg: RunConfig, out: _Output) -> int:
    g = _load_graph(cfg)
    result = min_percolating_set(g, _need_r(cfg), cfg.budget)
    payload = result.to_dict(timing=cfg.timing)
    payload["n"] = g.n
    out.emit(payload)
    return EXIT_BUDGET if result.status == BUDGET_EXHAUSTED else EXIT_OK


def _cmd_construct(cfg: RunConfig, out: _Output) -> int:
    spec = _spec(cfg)
    g = spec.build()
    if cfg.output_format == "text":
        # bare edge list so the output can be fed back through --graph
        out.stream.write(serialize_edge_list(g))
        return EXIT_OK
    out.emit({"spec": spec.to_dict(), "n": g.n, "edges": [list(e) for e in g.edges()],
              "min_degree": min_degree(g) if g.n else None})
    return EXIT_OK


def _cmd_bound(cfg: RunConfig, out: _Output) -> int:
    g = _load_graph(cfg)
    r = _need_r(cfg)
    bound = reichman_bound(g, r)
    size, witness = greedy_upper_bound(g, r, cfg.seed)
    try:
        s2: Optional[int] = sigma2(g)
    except ValueError:
        s2 = None
    out.emit({
        "n": g.n,
        "reichman_bound": str(bound),
        "reichman_ceiling": -(-bound.numerator // bound.denominator),
        "greedy_size": size,
        "greedy_witness": sorted(witness),
        "min_degree": min_degree(g) if g.n else None,
        "sigma2": s2,
    })
    return EXIT_OK


def _report_exit(report) -> int:
    if not report.passed:
        return EXIT_FAIL
    return EXIT_BUDGET if report.inconclusive else EXIT_OK


def _cmd_verify(cfg: RunConfig, out: _Output) -> int:
    suite = cfg.suite or "construction"
    if suite == "construction":
        report = verify_construction_extremal(_spec(cfg), cfg.r if cfg.family == "double-clique-matching" else None,
                                              cfg.budget)
    else:
        g = _load_graph(cfg)
        r = _need_r(cfg)
        if suite == "closure-gap":
            report = check_closure_gap(g, r, cfg.sample_count, cfg.seed)
        elif suite == "big-sets":
            report = check_big_sets_percolate(g, r, cfg.k if cfg.k is not None else 1,
                                              cfg.sample_count, cfg.seed)
        elif suite == "all-r-sets":
            if cfg.k is None:
                raise UsageError("all-r-sets requires --k")
            report = check_all_r_sets_percolate(g, r, cfg.k)
        else:
            if cfg.set is None:
                raise UsageError("closed-structure requires --set")
            report = check_closed_set_structure(g, cfg.set, r)
    if cfg.output_format == "csv":
        out.stream.write(f"# config {json.dumps(cfg.effective(), sort_keys=True)}\n")
        out.stream.write(report.to_csv())
    else:
        out.emit(report.to_dict())
    return _report_exit(report)


def _cmd_sweep(cfg: RunConfig, out: _Output) -> int:
    r = _need_r(cfg)
    if cfg.n is None:
        raise UsageError("sweep requires --n (e.g. 30:40)")
    n_range = _parse_n_range(cfg.n)
    stream = out.stream
    fmt = cfg.output_format

    def on_row(row: Dict[str, Any]) -> None:
        if fmt == "csv":
            stream.write(",".join(_csv_cell(row[k]) for k in CSV_FIELDS) + "\n")
            stream.flush()
        elif fmt == "text":
            stream.write(" ".join(f"{k}={row[k]}" for k in CSV_FIELDS) + "\n")
            stream.flush()

    header = json.dumps(cfg.effective(), sort_keys=True)
    if fmt == "csv":
        stream.write(f"# config {header}\n" + ",".join(CSV_FIELDS) + "\n")
    elif fmt == "text":
        stream.write(f"config: {header}\n")
    report = verify_main_theorem_sweep(r, n_range, cfg.trials, cfg.seed, cfg.edge_prob,
                                       cfg.budget, cfg.workers, on_row)
    if fmt == "json":
        out.emit({**report.to_dict(), "rows": report.rows})
    else:
        stream.write("# summary " + json.dumps(report.to_dict(), sort_keys=True) + "\n")
    return _report_exit(report)


HANDLERS = {
    "closure": _cmd_closure,
    "solve": _cmd_solve,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "bound": _cmd_bound,
}


def run(cfg: RunConfig, stream: Optional[IO[str]] = None) -> int:
    """Dispatch one command; diagnostics go to stderr."""
    try:
        if cfg.output_path is not None:
            with open(cfg.output_path, "w") as fh:
                return HANDLERS[cfg.command](cfg, _Output(cfg, fh))
        return HANDLERS[cfg.command](cfg, _Output(cfg, stream or sys.stdout))
    except (UsageError, GraphFormatError, ConstructionError, PreconditionError,
            ValueError, OSError) as exc:
        print(f"bootperc {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
