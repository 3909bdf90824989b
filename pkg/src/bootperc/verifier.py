"""Executable checks of the degree-threshold results and their lemmas.

Every check returns a :class:`Report`. A failed report always carries a
counterexample that replays deterministically: the serialized graph, the
parameters and the offending vertex set. Violated hypotheses raise
:class:`PreconditionError` instead of producing a failed report.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import AbstractSet, Any, Callable, Dict, Iterable, Iterator, List, Optional

import numpy as np

from .constructions import ConstructionSpec, random_min_degree_graph
from .graph import (
    Graph,
    degree_in,
    induced_is_clique,
    min_degree,
    serialize_edge_list,
    to_mask,
)
from .percolation import check_threshold, closure_mask, is_closed
from .solver import (
    BudgetExhausted,
    SearchStats,
    exists_percolating_of_size,
    find_complete_bipartite,
    greedy_upper_bound,
)

CSV_FIELDS = ("suite", "n", "r", "seed", "outcome", "witness_size", "closures_used")


class PreconditionError(ValueError):
    """The graph or parameters do not meet a check's hypotheses."""


@dataclass
class Report:
    suite: str
    instances_checked: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    inconclusive: int = 0
    notes: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    @property
    def status(self) -> str:
        if not self.passed:
            return "failed"
        return "inconclusive" if self.inconclusive else "passed"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "status": self.status,
            "passed": self.passed,
            "instances_checked": self.instances_checked,
            "inconclusive": self.inconclusive,
            "counterexample": self.counterexample,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()


def _counterexample(g: Graph, params: Dict[str, Any], offending: Iterable[int]) -> Dict[str, Any]:
    return {"graph": serialize_edge_list(g), "parameters": params, "set": sorted(offending)}


def _row(suite: str, n: int, r: int, seed: Any, outcome: str,
         witness_size: Any = "", closures_used: Any = "") -> Dict[str, Any]:
    return {"suite": suite, "n": n, "r": r, "seed": seed, "outcome": outcome,
            "witness_size": witness_size, "closures_used": closures_used}


# ---------------------------------------------------------------------------
# closed-set size gap

def gap_polynomial(n: int, r: int, ell: int) -> int:
    """Edge-balance quadratic; a closed set of size ``ell`` forces a value >= 0."""
    if n < 1 or r < 3:
        raise ValueError(f"need n >= 1 and r >= 3, got n={n}, r={r}")
    k = max(1, r - 3)
    return ell * ell - ell * (n // 2 + k + r) + (r - 1) * n


@dataclass(frozen=True)
class GapIntervals:
    n: int
    r: int
    k: int
    small_max: int
    large_min: int

    def allows(self, size: int) -> bool:
        return size <= self.small_max or size >= self.large_min


def allowed_closed_sizes(n: int, r: int) -> GapIntervals:
    """Sizes a closed set may have when ``n >= 10r`` and the degree bound holds."""
    if r < 3:
        raise PreconditionError(f"need r >= 3, got {r}")
    if n < 10 * r:
        raise PreconditionError(f"need n >= 10r = {10 * r}, got n={n}")
    return GapIntervals(
        n=n, r=r, k=max(1, r - 3),
        small_max=2 * (r - 1),
        large_min=n // 2 - min(1, r - 3),
    )


def _sample_subsets(n: int, size: int, sample_count: int, seed: int) -> Iterator[tuple]:
    """All ``size``-subsets if there are at most ``sample_count``, else seeded samples."""
    if math.comb(n, size) <= sample_count:
        yield from itertools.combinations(range(n), size)
        return
    rng = np.random.default_rng(seed)
    for _ in range(sample_count):
        yield tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))


def check_closure_gap(g: Graph, r: int, sample_count: int = 1000, seed: int = 0) -> Report:
    """Sampled ``r``-subset closures must avoid the forbidden middle sizes."""
    r = check_threshold(r)
    gaps = allowed_closed_sizes(g.n, r)
    need = g.n // 2 + gaps.k
    if min_degree(g) < need:
        raise PreconditionError(f"min degree {min_degree(g)} < floor(n/2) + {gaps.k} = {need}")

    report = Report("closure-gap")
    params = {"n": g.n, "r": r, "sample_count": sample_count, "seed": seed}
    for subset in _sample_subsets(g.n, r, sample_count, seed):
        report.instances_checked += 1
        size = closure_mask(g.masks, to_mask(subset), r).bit_count()
        if not gaps.allows(size):
            report.counterexample = _counterexample(g, {**params, "closure_size": size}, subset)
            break
    report.notes.append(f"allowed sizes: <= {gaps.small_max} or >= {gaps.large_min}")
    report.rows.append(_row(report.suite, g.n, r, seed, report.status))
    return report


def check_big_sets_percolate(g: Graph, r: int, k: int, sample_count: int = 1000,
                             seed: int = 0) -> Report:
    """Sets of size ``ceil(n/2) + r - k - 1`` percolate once ``delta >= floor(n/2) + k``."""
    r = check_threshold(r)
    if k < 1:
        raise PreconditionError(f"need k >= 1, got {k}")
    need = g.n // 2 + k
    if min_degree(g) < need:
        raise PreconditionError(f"min degree {min_degree(g)} < floor(n/2) + {k} = {need}")
    size = (g.n + 1) // 2 + r - k - 1
    if not 0 <= size <= g.n:
        raise PreconditionError(f"set size {size} outside [0, {g.n}]")

    report = Report("big-sets")
    params = {"n": g.n, "r": r, "k": k, "size": size, "sample_count": sample_count, "seed": seed}
    for subset in _sample_subsets(g.n, size, sample_count, seed):
        report.instances_checked += 1
        if closure_mask(g.masks, to_mask(subset), r) != g.full_mask:
            report.counterexample = _counterexample(g, params, subset)
            break
    report.rows.append(_row(report.suite, g.n, r, seed, report.status))
    return report


def check_all_r_sets_percolate(g: Graph, r: int, k: int) -> Report:
    """Exhaustively confirm every ``r``-subset percolates when ``delta >= n - k``."""
    r = check_threshold(r)
    if min_degree(g) < g.n - k:
        raise PreconditionError(f"min degree {min_degree(g)} < n - k = {g.n - k}")
    if g.n < k * (r + 1) - 1:
        raise PreconditionError(f"need n >= k(r+1) - 1 = {k * (r + 1) - 1}, got n={g.n}")

    report = Report("all-r-sets")
    for subset in itertools.combinations(range(g.n), r):
        report.instances_checked += 1
        if closure_mask(g.masks, to_mask(subset), r) != g.full_mask:
            report.counterexample = _counterexample(g, {"n": g.n, "r": r, "k": k}, subset)
            break
    report.rows.append(_row(report.suite, g.n, r, "", report.status))
    return report


def check_closed_set_structure(g: Graph, a: AbstractSet[int], r: int) -> Report:
    """A closed set of size ``ceil(n/2) + r - 3`` leaves a clique outside it,
    each outside vertex having exactly ``r - 1`` neighbours inside."""
    r = check_threshold(r)
    a = g.vertex_set(a)
    n = g.n
    if r < 4 or n < 2 * r:
        raise PreconditionError(f"need r >= 4 and n >= 2r, got r={r}, n={n}")
    if len(a) != (n + 1) // 2 + r - 3:
        raise PreconditionError(f"|A| = {len(a)} != ceil(n/2) + r - 3 = {(n + 1) // 2 + r - 3}")
    if min_degree(g) < n // 2 + 1:
        raise PreconditionError(f"min degree {min_degree(g)} < floor(n/2) + 1")
    if not is_closed(g, a, r):
        raise PreconditionError("A is not closed")

    report = Report("closed-structure", instances_checked=1)
    outside = frozenset(range(n)) - a
    params = {"n": n, "r": r, "closed_set": sorted(a)}
    if not induced_is_clique(g, outside):
        report.counterexample = _counterexample(g, {**params, "defect": "complement not a clique"},
                                                outside)
    else:
        bad = sorted(v for v in outside if degree_in(g, v, a) != r - 1)
        if bad:
            report.counterexample = _counterexample(
                g, {**params, "defect": "outside vertex without exactly r-1 neighbours in A"}, bad)
    report.rows.append(_row(report.suite, n, r, "", report.status))
    return report


# ---------------------------------------------------------------------------
# extremal constructions

EXTREMAL_FAMILIES = ("double-clique-matching", "clique-pair-bipartite", "odd-deletion")


def expected_min_degree(spec: ConstructionSpec) -> int:
    if spec.family == "double-clique-matching":
        return spec.n // 2
    return spec.n // 2 + spec.r - 4


def verify_construction_extremal(spec: ConstructionSpec, r: Optional[int] = None,
                                 budget: Optional[int] = None) -> Report:
    """Build an extremal graph, check its exact minimum degree and that no
    ``r``-subset percolates (``r`` defaults to 3 for the double clique)."""
    if spec.family not in EXTREMAL_FAMILIES:
        raise PreconditionError(f"family must be one of {EXTREMAL_FAMILIES}, got {spec.family!r}")
    if r is None:
        r = 3 if spec.family == "double-clique-matching" else spec.r
    r = check_threshold(r)
    g = spec.build()
    report = Report("construction")
    params = {"spec": spec.to_dict(), "r": r}

    delta, want = min_degree(g), expected_min_degree(spec)
    report.notes.append(f"min degree {delta} (expected {want})")
    if delta != want:
        report.counterexample = _counterexample(g, {**params, "min_degree": delta}, [])
        report.rows.append(_row(report.suite, g.n, r, spec.seed, report.status))
        return report

    stats = SearchStats()
    try:
        witness = exists_percolating_of_size(g, r, r, budget, stats)
    except BudgetExhausted:
        report.inconclusive = 1
        report.notes.append(f"budget of {budget} closure calls exhausted")
        witness = None
    report.instances_checked = stats.subsets
    if witness is not None:
        report.counterexample = _counterexample(g, params, witness)
    elif not report.inconclusive:
        report.notes.append(f"all {math.comb(g.n, r)} {r}-subsets fail to percolate")
    report.rows.append(_row(report.suite, g.n, r, spec.seed, report.status,
                            len(witness) if witness else "", stats.closures))
    return report


# ---------------------------------------------------------------------------
# theorem sweeps

def degree_threshold(n: int, r: int) -> int:
    return n // 2 + (1 if r == 3 else r - 3)


def instance_seed(seed: int, n: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, n, trial]).generate_state(1, dtype=np.uint64)[0])


def find_percolating_r_set(g: Graph, r: int, budget: Optional[int] = None,
                           stats: Optional[SearchStats] = None):
    """Search for a percolating ``r``-set, cheapest strategy first.

    The ``r`` side of a ``K_{r,r-1}`` is tried first, then a greedy set,
    then exhaustive search. Returns the witness or ``None``; raises
    :class:`BudgetExhausted` only from the exhaustive stage.
    """
    if stats is None:
        stats = SearchStats()
    kb = find_complete_bipartite(g, r - 1, r)
    if kb is not None:
        stats.closures += 1
        if closure_mask(g.masks, to_mask(kb[1]), r) == g.full_mask:
            return kb[1]
    size, witness = greedy_upper_bound(g, r)
    if size == r:
        return witness
    remaining = None if budget is None else max(budget - stats.closures, 0)
    sub = SearchStats()
    try:
        return exists_percolating_of_size(g, r, r, remaining, sub)
    finally:
        stats.closures += sub.closures
        stats.subsets += sub.subsets


def _sweep_instance(args) -> Dict[str, Any]:
    r, n, trial, seed, edge_prob, budget = args
    s = instance_seed(seed, n, trial)
    g = random_min_degree_graph(n, degree_threshold(n, r), edge_prob, s)
    stats = SearchStats()
    try:
        witness = find_percolating_r_set(g, r, budget, stats)
    except BudgetExhausted:
        outcome, witness = "inconclusive", None
    else:
        outcome = "pass" if witness is not None else "fail"
    row = _row("sweep", n, r, s, outcome, len(witness) if witness else "", stats.closures)
    row["trial"] = trial
    if outcome == "fail":
        row["graph"] = serialize_edge_list(g)
    return row


def iter_main_theorem_sweep(r: int, n_range: Iterable[int], trials: int, seed: int = 0,
                            edge_prob: float = 0.55, budget: Optional[int] = None,
                            workers: int = 1) -> Iterator[Dict[str, Any]]:
    """Yield one result row per instance, in (n, trial) order."""
    if r < 3:
        raise PreconditionError(f"need r >= 3, got {r}")
    tasks = [(r, n, t, seed, edge_prob, budget) for n in n_range for t in range(trials)]
    if workers <= 1:
        yield from map(_sweep_instance, tasks)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_sweep_instance, tasks, chunksize=max(1, len(tasks) // (4 * workers)))


def verify_main_theorem_sweep(r: int, n_range: Iterable[int], trials: int, seed: int = 0,
                              edge_prob: float = 0.55, budget: Optional[int] = None,
                              workers: int = 1,
                              on_row: Optional[Callable[[Dict[str, Any]], None]] = None) -> Report:
    """Random graphs at the degree threshold must all have a percolating ``r``-set."""
    n_range = list(n_range)
    report = Report("sweep")
    for row in iter_main_theorem_sweep(r, n_range, trials, seed, edge_prob, budget, workers):
        graph_text = row.pop("graph", None)
        trial = row.pop("trial")
        report.instances_checked += 1
        report.rows.append(row)
        if on_row is not None:
            on_row(row)
        if row["outcome"] == "inconclusive":
            report.inconclusive += 1
        elif row["outcome"] == "fail" and report.counterexample is None:
            report.counterexample = {
                "graph": graph_text,
                "parameters": {"n": row["n"], "r": r, "trial": trial, "instance_seed": row["seed"],
                               "min_degree": degree_threshold(row["n"], r),
                               "edge_prob": edge_prob},
                "set": [],
            }
    small = [n for n in n_range if r == 3 and n < 30]
    if small:
        report.notes.append(f"n below the r=3 range n >= 30: {small}")
    if r >= 4:
        lemma_n = (r - 1) * 2 ** (r - 1) + 4
        report.notes.append(
            f"no explicit n threshold for r={r}; K_(r,r-1) existence guaranteed from n >= {lemma_n}")
    fails = sum(row["outcome"] == "fail" for row in report.rows)
    report.notes.append(f"{fails} failures, {report.inconclusive} inconclusive of "
                        f"{report.instances_checked} instances")
    return report
