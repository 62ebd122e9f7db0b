import itertools
import time

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domatic.combinatorics import SolverRefusal, gamma_brute
from domatic.graph import Graph, complete_graph, cycle_graph, path_graph, verify_three_partition
from domatic.solvers import (
    BranchingSearch,
    Precheck,
    SolveTimeout,
    Verdict,
    domatic_number_dp,
    find_critical_case,
    precheck,
    repetitions,
    solve_auto,
    solve_bounded_det,
    solve_bounded_rand,
    solve_branching,
    solve_brute_force,
    solve_dp,
    solve_max_deg2,
)
from domatic.state import ContractViolation, PartitionState
from helpers import dominates, first_witness, graphs

STAR = Graph(4, [(0, 1), (0, 2), (0, 3)])
PRISM = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
K4_MINUS_EDGE = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
C5_CHORD = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
PETERSEN = Graph(10, nx.petersen_graph().edges())


def domatic_by_enumeration(g: Graph) -> int:
    """Largest k admitting a k-labelling whose classes all dominate (tiny n only)."""
    best = 1
    for k in range(2, g.n + 1):
        if any(
            all(dominates(g, {v for v in range(g.n) if lab[v] == c}) for c in range(k))
            for lab in itertools.product(range(k), repeat=g.n)
        ):
            best = k
        else:
            break
    return best


def check_outcome(g, out):
    if out.found:
        assert verify_three_partition(g, *out.partition)
    else:
        assert out.partition is None


class TestPrecheck:
    def test_star(self):
        assert precheck(STAR) is Precheck.DEFINITELY_NO

    def test_c4(self):
        assert precheck(cycle_graph(4)) is Precheck.UNKNOWN

    def test_single_vertex(self):
        assert precheck(Graph(1)) is Precheck.DEFINITELY_NO

    def test_empty(self):
        assert precheck(Graph(0)) is Precheck.UNKNOWN


class TestBruteForce:
    def test_triangle(self):
        out = solve_brute_force(complete_graph(3))
        assert out.partition == (frozenset({0}), frozenset({1}), frozenset({2}))

    def test_c4(self):
        assert first_witness(cycle_graph(4)) is None
        assert solve_brute_force(cycle_graph(4)).verdict is Verdict.NOT_FOUND

    def test_c6_first_witness(self):
        expected = first_witness(cycle_graph(6))
        assert expected == (frozenset({0, 3}), frozenset({1, 4}), frozenset({2, 5}))
        assert solve_brute_force(cycle_graph(6)).partition == expected

    def test_refuses_large(self):
        with pytest.raises(SolverRefusal):
            solve_brute_force(cycle_graph(17))

    def test_empty_graph(self):
        out = solve_brute_force(Graph(0))
        assert out.found and out.partition == (frozenset(), frozenset(), frozenset())

    @given(graphs(max_n=7))
    @settings(max_examples=150, deadline=None)
    def test_matches_full_enumeration(self, g):
        out = solve_brute_force(g)
        assert out.partition == first_witness(g)


class TestDP:
    def test_examples(self):
        assert domatic_number_dp(complete_graph(3)) == 3
        assert domatic_number_dp(cycle_graph(4)) == 2
        assert domatic_number_dp(STAR) == 2
        assert domatic_number_dp(complete_graph(4)) == 4
        assert domatic_number_dp(C5_CHORD) == 2

    def test_k4_minus_edge_has_three(self):
        # the two degree-2 vertices together dominate everything
        assert verify_three_partition(K4_MINUS_EDGE, {0}, {1}, {2, 3})
        assert domatic_number_dp(K4_MINUS_EDGE) == 3

    def test_empty_graph_rejected(self):
        with pytest.raises(ValueError):
            domatic_number_dp(Graph(0))

    def test_refuses_large(self):
        with pytest.raises(SolverRefusal):
            domatic_number_dp(cycle_graph(25))

    @given(graphs(min_n=1, max_n=6))
    @settings(max_examples=80, deadline=None)
    def test_matches_enumeration(self, g):
        assert domatic_number_dp(g) == domatic_by_enumeration(g)

    @given(graphs(min_n=1, max_n=9))
    @settings(max_examples=80, deadline=None)
    def test_upper_bounds(self, g):
        delta = domatic_number_dp(g)
        gamma, _ = gamma_brute(g)
        assert delta <= g.min_degree() + 1
        assert delta <= g.n // gamma

    @given(graphs(max_n=9))
    @settings(max_examples=60, deadline=None)
    def test_solve_dp_partition(self, g):
        out = solve_dp(g)
        check_outcome(g, out)
        if g.n:
            assert out.found == (domatic_number_dp(g) >= 3)


class _Recorder(BranchingSearch):
    """Records the partition seen by each child call and fails it."""

    def __init__(self, graph):
        super().__init__(graph)
        self.children = []

    def dominate(self, state):
        self.children.append(tuple(frozenset(v for v in range(state.n) if m >> v & 1) for m in state.d))
        return None


class TestHandleCritical:
    def test_negative_balance(self):
        s = PartitionState.from_sets(complete_graph(3), [{0, 1}, (), ()])
        assert find_critical_case(s) == (2, 0)
        rec = _Recorder(s.graph)
        assert rec.handle_critical_vertex(s) == (True, None)
        assert rec.children == []

    def test_two_auxiliary_sets(self):
        s = PartitionState.from_sets(complete_graph(4), a=[{0}, {0}, ()])
        assert find_critical_case(s) == (3, 0)
        rec = _Recorder(s.graph)
        assert rec.handle_critical_vertex(s) == (True, None)
        assert rec.children == [(frozenset(), frozenset(), frozenset({0}))]

    def test_six_cycle_fresh(self):
        s = PartitionState(cycle_graph(6))
        assert find_critical_case(s) == (4, 0)
        rec = _Recorder(s.graph)
        assert rec.handle_critical_vertex(s) == (True, None)
        e, z = frozenset(), frozenset({0})
        assert rec.children == [(z, e, e), (e, z, e), (e, e, z)]

    def test_no_critical(self):
        s = PartitionState(complete_graph(4))
        assert find_critical_case(s) is None
        assert _Recorder(s.graph).handle_critical_vertex(s) == (False, None)

    def test_case4_skips_auxiliary(self):
        s = PartitionState.from_sets(cycle_graph(6), a=[{0}, (), ()])
        rec = _Recorder(s.graph)
        rec.handle_critical_vertex(s)
        e, z = frozenset(), frozenset({0})
        assert rec.children == [(e, z, e), (e, e, z)]

    def test_state_restored_after_handling(self):
        s = PartitionState(cycle_graph(6))
        before = (s.sets(), s.derived())
        BranchingSearch(s.graph).handle_critical_vertex(s)
        assert (s.sets(), s.derived()) == before


class TestBranching:
    def test_c9(self):
        g = cycle_graph(9)
        out = solve_branching(g)
        assert out.found
        assert verify_three_partition(g, *out.partition)

    def test_c5(self):
        assert solve_brute_force(cycle_graph(5)).verdict is Verdict.NOT_FOUND
        assert solve_branching(cycle_graph(5)).verdict is Verdict.NOT_FOUND

    def test_petersen(self):
        assert solve_branching(PETERSEN).found == (domatic_number_dp(PETERSEN) >= 3)

    def test_stats(self):
        out = solve_branching(PETERSEN)
        st_ = out.stats
        assert st_.nodes >= 1
        assert len(st_.maxgap_trace) == len(st_.surplus_trace) == st_.nodes
        assert st_.assigns == len(st_.assign_trace)
        assert st_.elapsed > 0

    def test_surplus_grows_with_large_gaps(self):
        for g in (PETERSEN, PRISM, complete_graph(5), cycle_graph(12)):
            for gap, delta in solve_branching(g).stats.assign_trace:
                assert delta == gap - 3
                if gap > 3:
                    assert delta > 0

    def test_precheck_short_circuit(self):
        out = solve_branching(STAR)
        assert not out.found and out.note == "precheck"
        assert out.stats.nodes == 1

    def test_disconnected(self):
        both = cycle_graph(3).disjoint_union(cycle_graph(6))
        out = solve_branching(both)
        assert out.found and verify_three_partition(both, *out.partition)
        assert not solve_branching(cycle_graph(3).disjoint_union(cycle_graph(4))).found

    def test_empty_graph(self):
        assert solve_branching(Graph(0)).found

    def test_timeout(self):
        with pytest.raises(SolveTimeout) as exc:
            solve_branching(PETERSEN, deadline=time.monotonic() - 1)
        assert exc.value.stats.nodes > 0

    @given(graphs(max_n=8))
    @settings(max_examples=200, deadline=None)
    def test_matches_oracle(self, g):
        out = solve_branching(g)
        check_outcome(g, out)
        assert out.found == (first_witness(g) is not None)


class TestMaxDeg2:
    def test_c6(self):
        out = solve_max_deg2(cycle_graph(6))
        assert out.partition == (frozenset({0, 3}), frozenset({1, 4}), frozenset({2, 5}))

    def test_c5(self):
        assert not solve_max_deg2(cycle_graph(5)).found

    def test_p4(self):
        assert not solve_max_deg2(path_graph(4)).found

    def test_contract(self):
        with pytest.raises(ContractViolation):
            solve_max_deg2(complete_graph(4))

    def test_components(self):
        g = cycle_graph(3).disjoint_union(cycle_graph(9))
        out = solve_max_deg2(g)
        assert out.found and verify_three_partition(g, *out.partition)
        assert not solve_max_deg2(cycle_graph(3).disjoint_union(Graph(1))).found

    def test_empty(self):
        assert solve_max_deg2(Graph(0)).found


class TestBoundedDet:
    def test_prism(self):
        out = solve_bounded_det(PRISM)
        assert out.found and verify_three_partition(PRISM, *out.partition)
        # the hand partition {a0,b1},{a1,b2},{a2,b0}
        assert verify_three_partition(PRISM, {0, 4}, {1, 5}, {2, 3})

    def test_k4(self):
        assert domatic_number_dp(complete_graph(4)) == 4
        assert solve_bounded_det(complete_graph(4)).found

    def test_star(self):
        out = solve_bounded_det(STAR)
        assert not out.found and out.note == "precheck"

    def test_low_degree_fallback(self):
        out = solve_bounded_det(cycle_graph(6))
        assert out.found and out.note == "max-deg<=2"

    @given(graphs(max_n=8))
    @settings(max_examples=200, deadline=None)
    def test_matches_oracle(self, g):
        out = solve_bounded_det(g)
        check_outcome(g, out)
        assert out.found == (first_witness(g) is not None)


class TestBoundedRand:
    def test_repetitions(self):
        assert repetitions(4, 3, 3.0) == 48
        assert repetitions(6, 3, 3.0) == 192

    def test_prism_and_k4(self):
        for g in (PRISM, complete_graph(4)):
            hits = sum(solve_bounded_rand(g, 3.0, seed).found for seed in range(20))
            assert hits >= 19

    def test_never_found_without_partition(self):
        for seed in range(20):
            assert not solve_bounded_rand(C5_CHORD, 3.0, seed).found

    def test_seeded(self):
        a = solve_bounded_rand(PETERSEN, 1.0, 123)
        b = solve_bounded_rand(PETERSEN, 1.0, 123)
        assert a.verdict == b.verdict and a.partition == b.partition
        assert (a.stats.nodes, a.stats.runs, a.stats.assigns) == (b.stats.nodes, b.stats.runs, b.stats.assigns)

    def test_budget_capped(self):
        out = solve_bounded_rand(C5_CHORD, 3.0, 0, max_runs=1)
        assert not out.found and out.note == "budget-capped"
        assert out.stats.runs == 1

    def test_contract(self):
        with pytest.raises(ContractViolation):
            solve_bounded_rand(cycle_graph(6), 3.0, 0)
        with pytest.raises(ValueError):
            solve_bounded_rand(PRISM, 0.0, 0)

    def test_negative_seed(self):
        assert solve_bounded_rand(PRISM, 3.0, -5).found

    @given(graphs(min_n=4, max_n=8), st.integers(0, 2**63))
    @settings(max_examples=80, deadline=None)
    def test_one_sided(self, g, seed):
        if g.max_degree() < 3:
            return
        out = solve_bounded_rand(g, 1.0, seed, max_runs=2000)
        check_outcome(g, out)
        if first_witness(g) is None:
            assert not out.found


class TestAuto:
    def test_routes(self):
        assert solve_auto(cycle_graph(6)).found
        assert not solve_auto(cycle_graph(5)).found
        out = solve_auto(Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]))
        assert out.note == "precheck"
        assert solve_auto(PRISM).found
