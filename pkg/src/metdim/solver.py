"""Exact metric dimension by branch-and-bound over the hitting-set formulation.

A set ``W`` resolves ``G`` exactly when it meets the distinguisher set of every
vertex pair, so the minimum resolving set is a minimum hitting set. Pair sets
and per-vertex cover sets are held as Python integer bitmasks.
"""

from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from .graphs import Graph, GraphError
from .metric import DistanceMatrix, distance_matrix, twin_classes


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_subsets: int | None = None
    max_seconds: float | None = None

    def __post_init__(self) -> None:
        if self.max_subsets is not None and self.max_subsets < 0:
            raise ValueError("max_subsets must be non-negative")
        if self.max_seconds is not None and self.max_seconds < 0:
            raise ValueError("max_seconds must be non-negative")


DEFAULT_BUDGET = SearchBudget(max_subsets=10**8, max_seconds=300.0)
UNLIMITED = SearchBudget()


@dataclass(frozen=True)
class LowerBound:
    value: int
    source: str  # "twin", "diameter-count" or "trivial"


@dataclass
class SearchStats:
    subsets_examined: dict[int, int] = field(default_factory=dict)
    prunes: dict[int, int] = field(default_factory=dict)
    witness_nodes: int = 0
    canonical_witness: bool = True
    wall_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "subsets_examined": {str(k): v for k, v in sorted(self.subsets_examined.items())},
            "prunes": {str(k): v for k, v in sorted(self.prunes.items())},
            "witness_nodes": self.witness_nodes,
            "canonical_witness": self.canonical_witness,
        }


@dataclass
class DimensionReport:
    """Result of :func:`metric_dimension_exact`.

    ``lower == upper`` means the value is exact; otherwise the budget ran out
    and ``[lower, upper]`` is a proven interval with ``witness`` attaining
    ``upper``.
    """

    graph: str
    n: int
    lower: int
    upper: int
    witness: tuple[int, ...]
    lower_bound: LowerBound
    stats: SearchStats
    proven_infeasible: tuple[int, ...] = ()

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def dimension(self) -> int | None:
        return self.lower if self.exact else None

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "graph": self.graph,
            "n": self.n,
            "dim": self.dimension,
            "exact": self.exact,
            "interval": [self.lower, self.upper],
            "witness": list(self.witness),
            "lower_bound": {"value": self.lower_bound.value, "source": self.lower_bound.source},
            "proven_infeasible_sizes": list(self.proven_infeasible),
            "stats": self.stats.to_dict(),
        }
        if timing:
            out["timing"] = {"wall_seconds": round(self.stats.wall_seconds, 6)}
        return out


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_from_bools(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class HittingSetInstance:
    """Distinguisher sets of all pairs, sorted by ascending size.

    Bit ``i`` of a pair mask is the ``i``-th pair in that order, so the lowest
    set bit of an uncovered-pair mask is always the smallest uncovered pair.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    dist: tuple[int, ...]   # pair index -> vertex mask
    cover: tuple[int, ...]  # vertex -> pair mask

    @property
    def all_pairs(self) -> int:
        return (1 << len(self.pairs)) - 1

    @classmethod
    def from_distances(cls, dm: DistanceMatrix) -> HittingSetInstance:
        dm.require_connected()
        d = dm.d
        n = dm.n
        raw = []
        for u in range(n - 1):
            diff = d[:, u : u + 1] != d[:, u + 1 :]
            for j in range(n - u - 1):
                m = _mask_from_bools(diff[:, j])
                raw.append((m.bit_count(), u, u + 1 + j, m))
        raw.sort()
        cover = [0] * n
        for i, (_, _, _, m) in enumerate(raw):
            for x in _bits(m):
                cover[x] |= 1 << i
        return cls(
            n,
            tuple((u, v) for _, u, v, _ in raw),
            tuple(m for *_, m in raw),
            tuple(cover),
        )

    def covered_by(self, vertices) -> int:
        out = 0
        for x in vertices:
            out |= self.cover[x]
        return out


class _Search:
    """Depth-limited hitting-set search, branching on the smallest uncovered pair."""

    def __init__(self, inst: HittingSetInstance, max_nodes: int | None, deadline: float | None):
        self.dist = inst.dist
        self.cover = inst.cover
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        self.prunes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted("subset budget exhausted")
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExhausted("time budget exhausted")

    def solve(self, uncovered: int, allowed: int, r: int) -> list[int] | None:
        """Up to ``r`` vertices from ``allowed`` covering every pair in ``uncovered``."""
        if not uncovered:
            return []
        if r <= 0:
            self.prunes += 1
            return None
        self._tick()
        low = uncovered & -uncovered
        cand = self.dist[low.bit_length() - 1] & allowed
        cover = self.cover
        if r == 1:
            for x in _bits(cand):
                if not uncovered & ~cover[x]:
                    return [x]
            self.prunes += 1
            return None
        if not cand:
            self.prunes += 1
            return None
        while cand:
            b = cand & -cand
            x = b.bit_length() - 1
            rest = self.solve(uncovered & ~cover[x], allowed, r - 1)
            if rest is not None:
                return [x] + rest
            # x is excluded from all later branches
            allowed &= ~b
            cand ^= b
        return None


_worker_instance: HittingSetInstance | None = None


def _init_worker(inst: HittingSetInstance) -> None:
    global _worker_instance
    _worker_instance = inst


def _solve_task(uncovered: int, allowed: int, r: int, max_nodes, deadline):
    search = _Search(_worker_instance, max_nodes, deadline)
    try:
        found = search.solve(uncovered, allowed, r)
    except BudgetExhausted:
        return "budget", None, search.nodes, search.prunes
    return "done", found, search.nodes, search.prunes


def _parallel_solve(inst, pool, uncovered, allowed, r, max_nodes, deadline):
    """Split on the first branching pair and farm the branches out.

    Returns ``(found, nodes, prunes)``; raises :class:`BudgetExhausted` if any
    branch ran out before a solution turned up.
    """
    if not uncovered:
        return [], 0, 0
    if r <= 0:
        return None, 0, 1
    low = uncovered & -uncovered
    cand = inst.dist[low.bit_length() - 1] & allowed
    futures = {}
    for x in _bits(cand):
        fut = pool.submit(_solve_task, uncovered & ~inst.cover[x], allowed, r - 1, max_nodes, deadline)
        futures[fut] = x
        allowed &= ~(1 << x)
    nodes, prunes = 1, 0
    exhausted = False
    found = None
    pending = set(futures)
    while pending and found is None:
        done, pending = wait(pending, return_when=FIRST_COMPLETED)
        for fut in done:
            status, res, k, p = fut.result()
            nodes += k
            prunes += p
            if status == "budget":
                exhausted = True
            elif res is not None and found is None:
                found = [futures[fut]] + res
    for fut in pending:
        fut.cancel()
    if found is None and exhausted:
        raise BudgetExhausted("budget exhausted in a parallel branch")
    return found, nodes, prunes


def forced_twins(g: Graph) -> tuple[int, ...]:
    """All but the largest member of each twin class.

    Every resolving set holds all but one vertex of each twin class, and
    swapping twins is an automorphism, so some lexicographically smallest
    minimum resolving set omits exactly the largest member of each class.
    """
    out = []
    for cls in twin_classes(g):
        out.extend(cls[:-1])
    return tuple(sorted(out))


def lower_bound(g: Graph, dm: DistanceMatrix | None = None) -> LowerBound:
    """Max of the twin bound, the code-counting bound and 1."""
    if dm is None:
        dm = distance_matrix(g)
    twin = sum(len(c) - 1 for c in twin_classes(g))
    count = 1
    diam = dm.diameter()
    if diam != float("inf") and g.n > 1:
        b = 0
        while b + diam**b < g.n:
            b += 1
        count = b
    best = LowerBound(1, "trivial")
    for value, source in ((count, "diameter-count"), (twin, "twin")):
        if value >= best.value:
            best = LowerBound(value, source)
    return best


def greedy_upper_bound(g: Graph, dm: DistanceMatrix | None = None) -> tuple[int, tuple[int, ...]]:
    """Greedy resolving set: repeatedly take the vertex splitting most unresolved pairs."""
    if dm is None:
        dm = distance_matrix(g)
    inst = HittingSetInstance.from_distances(dm)
    return _greedy(inst)


def _greedy(inst: HittingSetInstance) -> tuple[int, tuple[int, ...]]:
    uncovered = inst.all_pairs
    chosen: list[int] = []
    while uncovered:
        best, gain = -1, 0
        for x in range(inst.n):
            c = (uncovered & inst.cover[x]).bit_count()
            if c > gain:
                best, gain = x, c
        chosen.append(best)
        uncovered &= ~inst.cover[best]
    return len(chosen), tuple(sorted(chosen))


def minimal_resolving_sets_of_size(
    g: Graph, s: int, dm: DistanceMatrix | None = None
) -> Iterator[tuple[int, ...]]:
    """Every resolving ``s``-subset, in lexicographic order, by direct code comparison.

    Deliberately independent of the hitting-set machinery, so an empty stream
    is a separate certificate that no resolving set of size ``s`` exists.
    """
    if dm is None:
        dm = distance_matrix(g)
    dm.require_connected()
    if not 0 <= s <= g.n:
        raise GraphError(f"subset size {s} outside 0..{g.n}")
    columns = [tuple(dm.d[:, w].tolist()) for w in range(g.n)]
    n = g.n
    for ws in combinations(range(n), s):
        if len(set(zip(*(columns[w] for w in ws)))) == n:
            yield ws


def metric_dimension_exact(
    g: Graph,
    budget: SearchBudget | None = None,
    dm: DistanceMatrix | None = None,
    threads: int = 1,
) -> DimensionReport:
    """Exact metric dimension with the lexicographically smallest minimum witness.

    Sizes are tried upward from one below the combinatorial lower bound, so
    the size ``dim - 1`` is always refuted by exhausted search. If the budget
    trips, the report carries an interval and the greedy witness.
    """
    start = time.monotonic()
    budget = budget or DEFAULT_BUDGET
    if dm is None:
        dm = distance_matrix(g)
    dm.require_connected()
    if g.n < 2:
        raise GraphError("metric dimension needs at least two vertices")

    lb = lower_bound(g, dm)
    inst = HittingSetInstance.from_distances(dm)
    greedy_size, greedy_set = _greedy(inst)
    forced = forced_twins(g)
    forced_mask = sum(1 << f for f in forced)
    everyone = (1 << g.n) - 1
    base_uncovered = inst.all_pairs & ~inst.covered_by(forced)
    free = everyone & ~forced_mask

    deadline = None if budget.max_seconds is None else start + budget.max_seconds
    stats = SearchStats()
    used = 0

    def remaining() -> int | None:
        return None if budget.max_subsets is None else max(budget.max_subsets - used, 0)

    lower = lb.value
    proven: list[int] = []
    found: list[int] | None = None
    size = greedy_size
    pool = None
    if threads > 1:
        pool = ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(inst,))
    try:
        for s in range(max(lb.value - 1, 0), greedy_size):
            r = s - len(forced)
            if r < 0:
                stats.subsets_examined[s] = 0
                stats.prunes[s] = 1
                proven.append(s)
                continue
            if pool is not None:
                res, nodes, prunes = _parallel_solve(
                    inst, pool, base_uncovered, free, r, remaining(), deadline
                )
                used += nodes
                stats.subsets_examined[s] = nodes
                stats.prunes[s] = prunes
            else:
                search = _Search(inst, remaining(), deadline)
                try:
                    res = search.solve(base_uncovered, free, r)
                finally:
                    stats.subsets_examined[s] = search.nodes
                    stats.prunes[s] = search.prunes
                    used += search.nodes
            if res is not None:
                found, size = sorted(res + list(forced)), s
                break
            proven.append(s)
            lower = max(lower, s + 1)
    except BudgetExhausted:
        stats.wall_seconds = time.monotonic() - start
        return DimensionReport(
            g.name, g.n, lower, greedy_size, greedy_set, lb, stats, tuple(proven)
        )
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)

    lower = size
    search = _Search(inst, remaining(), deadline)
    try:
        witness = _lex_smallest(search, inst, base_uncovered, forced, size)
    except BudgetExhausted:
        stats.canonical_witness = False
        witness = tuple(found) if found is not None else greedy_set
    stats.witness_nodes = search.nodes
    stats.wall_seconds = time.monotonic() - start
    return DimensionReport(g.name, g.n, size, size, witness, lb, stats, tuple(proven))


def _lex_smallest(
    search: _Search, inst: HittingSetInstance, uncovered: int, forced: tuple[int, ...], size: int
) -> tuple[int, ...]:
    """Fix the free picks one at a time, smallest feasible vertex first."""
    n = inst.n
    forced_set = set(forced)
    forced_mask = sum(1 << f for f in forced)
    r = size - len(forced)
    picks: list[int] = []
    last = -1
    while r > 0:
        for v in range(last + 1, n):
            if v in forced_set:
                continue
            allowed = ((1 << n) - 1) & ~((1 << (v + 1)) - 1) & ~forced_mask
            after = uncovered & ~inst.cover[v]
            if search.solve(after, allowed, r - 1) is not None:
                picks.append(v)
                uncovered, r, last = after, r - 1, v
                break
        else:
            raise AssertionError("no completion although a witness of this size exists")
    return tuple(sorted(picks + list(forced)))


def find_resolving_set(
    g: Graph, s: int, dm: DistanceMatrix | None = None, budget: SearchBudget | None = None
) -> tuple[int, ...] | None:
    """Some resolving set of at most ``s`` vertices, or ``None`` if none exists.

    Raises :class:`BudgetExhausted` when the search is cut short.
    """
    budget = budget or DEFAULT_BUDGET
    if dm is None:
        dm = distance_matrix(g)
    inst = HittingSetInstance.from_distances(dm)
    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    found = _Search(inst, budget.max_subsets, deadline).solve(inst.all_pairs, (1 << g.n) - 1, s)
    return None if found is None else tuple(sorted(found))
