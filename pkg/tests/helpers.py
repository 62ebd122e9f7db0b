"""Independent reference helpers shared by the test modules."""

import itertools
import random

from hypothesis import strategies as st

from domatic.graph import Graph
from domatic.state import PartitionState


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, keep in zip(pairs, chosen) if keep])


def dominates(g: Graph, d) -> bool:
    """Set-based domination check kept independent of the bitmask code."""
    d = set(d)
    return all(v in d or g.adj[v] & d for v in range(g.n))


def all_labelings(n):
    return itertools.product((0, 1, 2), repeat=n)


def first_witness(g: Graph):
    """Lexicographically first labelling giving three dominating blocks, by full enumeration."""
    for labels in all_labelings(g.n):
        blocks = [{v for v in range(g.n) if labels[v] == k} for k in range(3)]
        if all(dominates(g, b) for b in blocks):
            return tuple(frozenset(b) for b in blocks)
    return None


def gamma_by_enumeration(g: Graph) -> int:
    for size in range(g.n + 1):
        if any(dominates(g, c) for c in itertools.combinations(range(g.n), size)):
            return size
    raise AssertionError("unreachable")


def prop2_by_enumeration(g: Graph) -> tuple[bool, bool]:
    """Both existence properties from a 3^n sweep over labellings."""
    if g.n == 0:
        return False, False
    blocks = set()
    for labels in all_labelings(g.n):
        parts = [frozenset(v for v in range(g.n) if labels[v] == k) for k in range(3)]
        if all(dominates(g, b) for b in parts):
            blocks.update(parts)
    if not blocks:
        return False, False
    gamma = gamma_by_enumeration(g)
    minimum = [frozenset(c) for c in itertools.combinations(range(g.n), gamma) if dominates(g, c)]
    return any(m not in blocks for m in minimum), all(len(b) > gamma for b in blocks)


def random_ops(g: Graph, rng: random.Random, steps: int):
    """Random walk of assign / add_aux / undo, checking invariants after each step."""
    s = PartitionState(g)
    fresh = (s.sets(), s.derived())
    stack = []
    for _ in range(steps):
        r = [v for v in range(g.n) if s.in_r(v)]
        roll = rng.random()
        if stack and (roll < 0.25 or not r):
            s.undo(stack.pop())
        elif roll < 0.4 and r:
            v = rng.choice(r)
            free = [i for i in (1, 2, 3) if not s.a[i - 1] >> v & 1]
            if free:
                stack.append(s.add_aux(v, rng.choice(free)))
        elif roll < 0.5 and r:
            # two open neighbours of a balance-zero vertex into the same set
            zero = [u for u in range(g.n) if s.balance[u] == 0 and s.open_neighbors[u] >= 2]
            if zero:
                u = rng.choice(zero)
                x, y = rng.sample(sorted(s.open_neighbor_set(u)), 2)
                i = rng.choice((1, 2, 3))
                stack.append(s.assign(x, i))
                stack.append(s.assign(y, i))
                assert s.balance[u] < 0
        elif r:
            v = rng.choice(r)
            choices = [i for i in (1, 2, 3) if s.gap_of(v, i) is not None]
            if choices:
                i = rng.choice(choices)
                gap = s.gap_of(v, i)
                area, surplus = s.area, s.surplus
                others = {(u, j): s.gap_of(u, j) for u in r if u != v for j in (1, 2, 3)}
                stack.append(s.assign(v, i))
                assert s.area - area == gap
                assert s.surplus - surplus == gap - 3
                for (u, j), old in others.items():
                    new = s.gap_of(u, j)
                    if j == i:
                        assert old is None and new is None or new <= old
                    else:
                        assert new == old
        assert s.derived() == s.copy().derived()
    while stack:
        s.undo(stack.pop())
    assert (s.sets(), s.derived()) == fresh
