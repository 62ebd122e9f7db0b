"""Decision procedures for "can V be split into three dominating sets?".

Every solver returns a :class:`SolveOutcome`; a ``found`` verdict always
carries a partition that :func:`~domatic.graph.verify_three_partition`
accepts.  The exact solvers are

* :func:`solve_brute_force` - label-by-label enumeration (oracle),
* :func:`domatic_number_dp` - domatic number by DP over vertex subsets (oracle),
* :func:`solve_branching` - the gap-driven branch-and-reduce search,
* :func:`solve_max_deg2` - polynomial rule for max degree <= 2,
* :func:`solve_bounded_det` - neighbourhood-enumeration search for bounded degree,

plus the one-sided Monte-Carlo :func:`solve_bounded_rand`.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Callable

import numpy as np

from .combinatorics import SolverRefusal, rand_base_r
from .graph import Graph, connected_components, members, minimal_dominating_sets
from .state import INDICES, ContractViolation, PartitionState

BRUTE_FORCE_LIMIT = 16
DP_LIMIT = 24
DEFAULT_MAX_RUNS = 1_000_000

Partition = tuple[frozenset[int], frozenset[int], frozenset[int]]


class Verdict(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"


class Precheck(str, Enum):
    DEFINITELY_NO = "definitely_no"
    UNKNOWN = "unknown"


@dataclass
class SearchStats:
    nodes: int = 0
    assigns: int = 0
    maxgap_trace: list[int | None] = field(default_factory=list)
    surplus_trace: list[int] = field(default_factory=list)
    # (gap(v, i) just before the assignment, resulting surplus change)
    assign_trace: list[tuple[int | None, int]] = field(default_factory=list)
    runs: int = 0
    elapsed: float = 0.0

    def as_dict(self, traces: bool = False) -> dict:
        out = {
            "nodes": self.nodes,
            "assigns": self.assigns,
            "runs": self.runs,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }
        if traces:
            out["maxgap_trace"] = list(self.maxgap_trace)
            out["surplus_trace"] = list(self.surplus_trace)
        return out


@dataclass
class SolveOutcome:
    verdict: Verdict
    partition: Partition | None
    stats: SearchStats
    note: str | None = None

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND

    def to_json(self, stats: bool = False, traces: bool = False) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.partition is not None:
            out["partition"] = partition_to_json(self.partition)
        if self.note:
            out["note"] = self.note
        if stats:
            out["stats"] = self.stats.as_dict(traces)
        return out


class SolveTimeout(Exception):
    """Raised when a search passes its deadline; ``stats`` holds the partial counts."""

    def __init__(self, stats: SearchStats):
        super().__init__("deadline exceeded")
        self.stats = stats


def partition_to_json(p: Partition) -> dict[str, list[int]]:
    return {f"D{k + 1}": sorted(p[k]) for k in range(3)}


def _check_deadline(deadline: float | None, stats: SearchStats) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise SolveTimeout(stats)


def _finish(verdict: Verdict, partition, stats: SearchStats, t0: float, note: str | None = None) -> SolveOutcome:
    stats.elapsed = time.perf_counter() - t0
    return SolveOutcome(verdict, partition, stats, note)


_EMPTY: Partition = (frozenset(), frozenset(), frozenset())


def _per_component(g: Graph, solve_connected: Callable[[Graph], Partition | None]) -> Partition | None:
    """Solve each component independently and merge the blocks."""
    blocks: list[set[int]] = [set(), set(), set()]
    for comp in connected_components(g):
        h, old = g.induced_subgraph(comp)
        part = solve_connected(h)
        if part is None:
            return None
        for k in range(3):
            blocks[k].update(old[v] for v in part[k])
    return tuple(frozenset(b) for b in blocks)


def precheck(g: Graph) -> Precheck:
    """A vertex of degree <= 1 caps the domatic number at 2."""
    if g.n >= 1 and g.min_degree() <= 1:
        return Precheck.DEFINITELY_NO
    return Precheck.UNKNOWN


# ---------------------------------------------------------------------------
# oracles

def solve_brute_force(g: Graph, deadline: float | None = None) -> SolveOutcome:
    """Try labels 1, 2, 3 for vertices 0, 1, ... in order.

    A prefix is abandoned only once some vertex has its whole closed
    neighbourhood labelled and still misses a label, so the first complete
    labelling reached is the lexicographically first witness.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise SolverRefusal(f"brute force refuses n={g.n} > {BRUTE_FORCE_LIMIT}")
    t0 = time.perf_counter()
    stats = SearchStats(nodes=1)
    n = g.n
    closed = g.closed
    # closers[k]: vertices whose closed neighbourhood is complete once k is labelled
    closers: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        closers[closed[u].bit_length() - 1].append(u)
    d = [0, 0, 0]

    def extend(k: int) -> bool:
        if k == n:
            return True
        bit = 1 << k
        for lab in range(3):
            stats.nodes += 1
            if not stats.nodes & 0x3FF:
                _check_deadline(deadline, stats)
            d[lab] |= bit
            d0, d1, d2 = d
            if all(closed[u] & d0 and closed[u] & d1 and closed[u] & d2 for u in closers[k]):
                if extend(k + 1):
                    return True
            d[lab] &= ~bit
        return False

    if extend(0):
        part = tuple(frozenset(members(m)) for m in d)
        return _finish(Verdict.FOUND, part, stats, t0)
    return _finish(Verdict.NOT_FOUND, None, stats, t0)


def _domatic_dp(g: Graph, deadline: float | None = None, stats: SearchStats | None = None) -> list[int]:
    """Maximum family of disjoint dominating sets covering V, as masks.

    ``f(S) = max over dominating T <= S of 1 + f(S - T)``.  Domination is
    upward closed, so ``f`` is monotone and restricting ``T`` to minimal
    dominating sets loses nothing.
    """
    if g.n == 0:
        raise ValueError("domatic number of the empty graph is not defined")
    if g.n > DP_LIMIT:
        raise SolverRefusal(f"subset DP refuses n={g.n} > {DP_LIMIT}")
    stats = stats if stats is not None else SearchStats()
    minimal = minimal_dominating_sets(g)
    cap = g.min_degree() + 1
    memo: dict[int, tuple[int, int]] = {0: (0, 0)}

    def f(s: int) -> int:
        hit = memo.get(s)
        if hit is not None:
            return hit[0]
        stats.nodes += 1
        if not stats.nodes & 0xFF:
            _check_deadline(deadline, stats)
        best, choice = 0, 0
        for t in minimal:
            if t & s == t:
                val = 1 + f(s ^ t)
                if val > best:
                    best, choice = val, t
                    if best == cap:
                        break
        memo[s] = (best, choice)
        return best

    f(g.full)
    blocks = []
    s = g.full
    while memo[s][0] > 0:
        t = memo[s][1]
        blocks.append(t)
        s ^= t
    # leftover vertices join the first block; supersets still dominate
    blocks[0] |= s
    return blocks


def domatic_number_dp(g: Graph) -> int:
    """Domatic number of ``g`` (``n >= 1``, ``n <= 24``)."""
    return len(_domatic_dp(g))


def solve_dp(g: Graph, deadline: float | None = None) -> SolveOutcome:
    """Three-way decision read off the subset DP."""
    t0 = time.perf_counter()
    stats = SearchStats()
    if g.n == 0:
        stats.nodes = 1
        return _finish(Verdict.FOUND, _EMPTY, stats, t0)
    blocks = _domatic_dp(g, deadline, stats)
    stats.nodes = max(stats.nodes, 1)
    if len(blocks) < 3:
        return _finish(Verdict.NOT_FOUND, None, stats, t0)
    merged = blocks[2]
    for b in blocks[3:]:
        merged |= b
    part = (frozenset(members(blocks[0])), frozenset(members(blocks[1])), frozenset(members(merged)))
    return _finish(Verdict.FOUND, part, stats, t0)


# ---------------------------------------------------------------------------
# gap-driven branching

def find_critical_case(state: PartitionState) -> tuple[int, int] | None:
    """First vertex (by id) that triggers a forced case, as ``(case, vertex)``.

    case 2: negative balance (dead end); case 3: an unassigned vertex already
    excluded from two sets; case 4: balance zero with an open set.
    """
    balance = state.balance
    opens = state._open
    for v in range(state.n):
        b = balance[v]
        if b < 0:
            return 2, v
        if state.in_r(v) and state.aux_count(v) == 2:
            return 3, v
        if b == 0 and opens[v]:
            return 4, v
    return None


class BranchingSearch:
    """Recursive gap-driven search on one connected graph.

    Mutations made by a call are undone before it returns, and so are the
    auxiliary-set entries it adds, so sibling calls see the parent's state.
    """

    def __init__(self, graph: Graph, stats: SearchStats | None = None, deadline: float | None = None):
        self.graph = graph
        self.stats = stats if stats is not None else SearchStats()
        self.deadline = deadline

    def run(self) -> Partition | None:
        return self.dominate(PartitionState(self.graph))

    def dominate(self, state: PartitionState) -> Partition | None:
        stats = self.stats
        stats.nodes += 1
        stats.maxgap_trace.append(state.graph_maxgap())
        stats.surplus_trace.append(state.surplus)
        if not stats.nodes & 0xFF:
            _check_deadline(self.deadline, stats)
        if state.all_dominating():
            return state.partition(pour_rest=True)
        handled, result = self.handle_critical_vertex(state)
        if handled:
            return result
        choice = state.select_branch_vertex()
        if choice is None:
            return None
        v, i = choice
        result = self.assign(state, v, i)
        if result is not None:
            return result
        token = state.add_aux(v, i)
        result = self.dominate(state)
        state.undo(token)
        return result

    def assign(self, state: PartitionState, v: int, i: int) -> Partition | None:
        gap = state.gap_of(v, i)
        before = state.surplus
        token = state.assign(v, i)
        self.stats.assigns += 1
        self.stats.assign_trace.append((gap, state.surplus - before))
        result = self.dominate(state)
        state.undo(token)
        return result

    def handle_critical_vertex(self, state: PartitionState) -> tuple[bool, Partition | None]:
        """``(handled, partition)``; ``handled`` is False when no vertex is forced."""
        hit = find_critical_case(state)
        if hit is None:
            return False, None
        case, v = hit
        if case == 2:
            return True, None
        if case == 3:
            i = next(i for i in INDICES if not (state.a[i - 1] >> v) & 1)
            return True, self.assign(state, v, i)
        u = (state.graph.closed[v] & state.r)
        u = (u & -u).bit_length() - 1
        for i in sorted(state.open_sets(v)):
            if (state.a[i - 1] >> u) & 1:
                continue
            result = self.assign(state, u, i)
            if result is not None:
                return True, result
        return True, None


def solve_branching(g: Graph, deadline: float | None = None) -> SolveOutcome:
    """Exact decision by the gap-driven branch-and-reduce search."""
    t0 = time.perf_counter()
    stats = SearchStats()
    if g.n == 0:
        stats.nodes = 1
        stats.maxgap_trace.append(None)
        stats.surplus_trace.append(0)
        return _finish(Verdict.FOUND, _EMPTY, stats, t0)
    if precheck(g) is Precheck.DEFINITELY_NO:
        fresh = PartitionState(g)
        stats.nodes = 1
        stats.maxgap_trace.append(fresh.graph_maxgap())
        stats.surplus_trace.append(0)
        return _finish(Verdict.NOT_FOUND, None, stats, t0, note="precheck")
    part = _per_component(g, lambda h: BranchingSearch(h, stats, deadline).run())
    if part is None:
        return _finish(Verdict.NOT_FOUND, None, stats, t0)
    return _finish(Verdict.FOUND, part, stats, t0)


# ---------------------------------------------------------------------------
# bounded degree

def solve_max_deg2(g: Graph) -> SolveOutcome:
    """Max degree <= 2: yes iff every component is a cycle of length divisible by 3."""
    if g.max_degree() > 2:
        raise ContractViolation("solve_max_deg2 needs max degree <= 2")
    t0 = time.perf_counter()
    stats = SearchStats(nodes=1 if g.n == 0 else 0)
    blocks: list[set[int]] = [set(), set(), set()]
    for comp in connected_components(g):
        stats.nodes += 1
        if len(comp) % 3 or any(g.degree(v) != 2 for v in comp):
            return _finish(Verdict.NOT_FOUND, None, stats, t0)
        start = min(comp)
        prev, cur = start, min(g.adj[start])
        order = [start]
        while cur != start:
            order.append(cur)
            a, b = g.adj[cur]
            prev, cur = cur, (b if a == prev else a)
        for idx, v in enumerate(order):
            blocks[idx % 3].add(v)
    return _finish(Verdict.FOUND, tuple(frozenset(b) for b in blocks), stats, t0)


def _pick_open_vertex(state: PartitionState) -> int | None:
    """Lowest vertex touched by the partition but not yet dominated by all three
    sets; failing that, the lowest vertex with any open set."""
    fallback = None
    for v, o in enumerate(state._open):
        if o:
            if o != 0b111:
                return v
            if fallback is None:
                fallback = v
    return fallback


def solve_bounded_det(g: Graph, deadline: float | None = None) -> SolveOutcome:
    """Exact search that settles one closed neighbourhood per step."""
    t0 = time.perf_counter()
    stats = SearchStats()
    if g.n == 0:
        stats.nodes = 1
        return _finish(Verdict.FOUND, _EMPTY, stats, t0)
    if precheck(g) is Precheck.DEFINITELY_NO:
        stats.nodes = 1
        return _finish(Verdict.NOT_FOUND, None, stats, t0, note="precheck")
    if g.max_degree() <= 2:
        out = solve_max_deg2(g)
        out.note = "max-deg<=2"
        return out

    def search(state: PartitionState) -> Partition | None:
        stats.nodes += 1
        if not stats.nodes & 0xFF:
            _check_deadline(deadline, stats)
        if state.all_dominating():
            return state.partition(pour_rest=True)
        if min(state.balance) < 0:
            return None
        v = _pick_open_vertex(state)
        need = state.open_sets(v)
        cand = list(members(state.graph.closed[v] & state.r))
        for labels in product(INDICES, repeat=len(cand)):
            if not need.issubset(labels):
                continue
            tokens = [state.assign(u, i) for u, i in zip(cand, labels)]
            stats.assigns += len(tokens)
            result = search(state)
            for t in reversed(tokens):
                state.undo(t)
            if result is not None:
                return result
        return None

    def connected(h: Graph) -> Partition | None:
        state = PartitionState(h)
        state.assign(0, 1)
        stats.assigns += 1
        return search(state)

    part = _per_component(g, connected)
    if part is None:
        return _finish(Verdict.NOT_FOUND, None, stats, t0)
    return _finish(Verdict.FOUND, part, stats, t0)


def repetitions(n: int, max_degree: int, c: float) -> int:
    """Independent runs needed for error at most ``exp(-c)``: ``ceil(c * r**(n/2))``."""
    r = rand_base_r(max_degree)
    return math.ceil(c * float(r) ** (n / 2))


def _random_run(h: Graph, rng: np.random.Generator, stats: SearchStats) -> Partition | None:
    state = PartitionState(h)
    state.assign(0, 1)
    stats.assigns += 1
    closed = h.closed
    while True:
        stats.nodes += 1
        if state.all_dominating():
            return state.partition(pour_rest=True)
        v = _pick_open_vertex(state)
        if state.balance[v] < 0:
            return None
        cand = list(members(closed[v] & state.r))
        opens = sorted(state.open_sets(v))
        if len(opens) == 1:
            state.assign(cand[rng.integers(len(cand))], opens[0])
            stats.assigns += 1
        elif len(opens) == 2:
            # an ordered pair is an unordered pair plus a uniform bijection onto the open sets
            x, y = rng.choice(len(cand), size=2, replace=False)
            state.assign(cand[x], opens[0])
            state.assign(cand[y], opens[1])
            stats.assigns += 2
        else:
            state.assign(cand[rng.integers(len(cand))], opens[rng.integers(3)])
            stats.assigns += 1


def solve_bounded_rand(
    g: Graph,
    c: float = 3.0,
    seed: int = 0,
    max_runs: int = DEFAULT_MAX_RUNS,
    deadline: float | None = None,
) -> SolveOutcome:
    """Monte-Carlo search; ``not_found`` is wrong with probability at most ``exp(-c)``.

    Run ``j`` draws from ``SeedSequence(seed, spawn_key=(j,))`` so results are
    reproducible.  Components are treated separately, each with confidence
    ``c + ln(#components)`` so the union bound keeps the overall error below
    ``exp(-c)``.
    """
    if c <= 0:
        raise ValueError("confidence c must be positive")
    t0 = time.perf_counter()
    stats = SearchStats()
    if g.n == 0:
        stats.nodes = 1
        return _finish(Verdict.FOUND, _EMPTY, stats, t0)
    if precheck(g) is Precheck.DEFINITELY_NO:
        stats.nodes = 1
        return _finish(Verdict.NOT_FOUND, None, stats, t0, note="precheck")
    max_degree = g.max_degree()
    if max_degree < 3:
        raise ContractViolation("solve_bounded_rand needs max degree >= 3")
    comps = connected_components(g)
    c_eff = c + math.log(len(comps))
    entropy = seed & (2**64 - 1)
    budget = max_runs
    run_index = 0
    blocks: list[set[int]] = [set(), set(), set()]
    for comp in comps:
        h, old = g.induced_subgraph(comp)
        part = None
        for _ in range(repetitions(len(comp), max_degree, c_eff)):
            if budget == 0:
                return _finish(Verdict.NOT_FOUND, None, stats, t0, note="budget-capped")
            _check_deadline(deadline, stats)
            budget -= 1
            rng = np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(run_index,)))
            run_index += 1
            stats.runs += 1
            part = _random_run(h, rng, stats)
            if part is not None:
                break
        if part is None:
            return _finish(Verdict.NOT_FOUND, None, stats, t0)
        for k in range(3):
            blocks[k].update(old[v] for v in part[k])
    return _finish(Verdict.FOUND, tuple(frozenset(b) for b in blocks), stats, t0)


def solve_auto(g: Graph, deadline: float | None = None) -> SolveOutcome:
    """Route to the cheapest exact method: cycle rule, precheck, else branching."""
    if g.max_degree() <= 2:
        return solve_max_deg2(g)
    if precheck(g) is Precheck.DEFINITELY_NO:
        return SolveOutcome(Verdict.NOT_FOUND, None, SearchStats(nodes=1), note="precheck")
    return solve_branching(g, deadline)
