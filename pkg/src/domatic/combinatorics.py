"""Closed-form counts, minimum dominating sets and the counterexample checker."""

from __future__ import annotations

import math
import random
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from itertools import combinations

from .graph import (
    Graph,
    connected_components,
    dominates_mask,
    dominating_table,
    mask_of,
    members,
    random_bounded_degree,
)

GAMMA_LIMIT = 24
PROP2_LIMIT = 12


class SolverRefusal(ValueError):
    """Input is larger than an exhaustive routine is willing to enumerate."""


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind via the alternating-sum closed form."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k == 0:
        return 1 if n == 0 else 0
    if k > n:
        return 0  # the truncated sum misses the 0**0 term when n == 0
    total = sum((-1) ** i * math.comb(k, i) * (k - i) ** n for i in range(k))
    q, rem = divmod(total, math.factorial(k))
    assert rem == 0
    return q


def stirling2_recurrence(n: int, k: int) -> int:
    """Same numbers from ``S(n, k) = k S(n-1, k) + S(n-1, k-1)``; independent check."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    row = [1] + [0] * k  # S(0, j)
    for _ in range(n):
        new = [0] * (k + 1)
        for j in range(1, k + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def branch_count_d(max_degree: int) -> int:
    """Worst-case number of ways to spread one closed neighbourhood over the
    three sets when exactly one of its vertices is already placed."""
    if max_degree < 3:
        raise ValueError("defined for max degree >= 3")
    dd = max_degree
    return sum(
        math.comb(dd, a) * sum(math.comb(dd - a, b) for b in range(1, dd - a))
        for a in range(dd - 1)
    )


def rand_base_r(max_degree: int) -> Fraction:
    """Reciprocal per-step success rate of the randomized solver, exact."""
    return Fraction(branch_count_d(max_degree), 3 ** (max_degree - 2))


def round_half_up(x: float | Fraction, places: int = 4) -> Decimal:
    q = Decimal(1).scaleb(-places)
    return Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP)


def growth_bases(max_degree: int) -> tuple[Decimal, Decimal]:
    """Per-vertex growth bases ``(d**(1/Δ), r**(1/2))`` rounded to 4 places."""
    d = branch_count_d(max_degree)
    r = rand_base_r(max_degree)
    return round_half_up(d ** (1 / max_degree)), round_half_up(math.sqrt(r))


def gamma_brute(g: Graph) -> tuple[int, frozenset[int]]:
    """Domination number and the lexicographically first minimum dominating set."""
    if g.n > GAMMA_LIMIT:
        raise SolverRefusal(f"gamma_brute refuses n={g.n} > {GAMMA_LIMIT}")
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            if dominates_mask(g, mask_of(combo)):
                return size, frozenset(combo)
    raise AssertionError("unreachable: V always dominates")


def three_partitions(g: Graph) -> list[tuple[int, int, int]]:
    """Every ordered partition of V into three dominating sets, as masks."""
    dom = dominating_table(g)
    full = g.full
    dom_sets = [int(m) for m in dom.nonzero()[0]]
    out = []
    for d1 in dom_sets:
        rest = full & ~d1
        # enumerate submasks of rest for d2
        d2 = rest
        while True:
            if dom[d2] and dom[rest & ~d2]:
                out.append((d1, d2, rest & ~d2))
            if d2 == 0:
                break
            d2 = (d2 - 1) & rest
    return out


def prop2_property_check(g: Graph) -> tuple[bool, bool]:
    """``(prop_a, prop_b)``.

    prop_a: three-domatic, and some minimum dominating set is not a block of
    any three-way dominating partition.
    prop_b: three-domatic, and every block of every such partition is strictly
    larger than the domination number.
    """
    if g.n > PROP2_LIMIT:
        raise SolverRefusal(f"prop2 check refuses n={g.n} > {PROP2_LIMIT}")
    if g.n == 0:
        return False, False
    parts = three_partitions(g)
    if not parts:
        return False, False
    gamma, _ = gamma_brute(g)
    blocks = {b for p in parts for b in p}
    minimum = [mask_of(c) for c in combinations(range(g.n), gamma) if dominates_mask(g, mask_of(c))]
    prop_a = any(m not in blocks for m in minimum)
    prop_b = all(b.bit_count() > gamma for b in blocks)
    return prop_a, prop_b


def prop2_candidates(seed: int):
    """Endless stream of ``(seed, graph)`` candidates: connected, n in 7..9, min-deg >= 2."""
    s = seed
    while True:
        rng = random.Random(s)
        n = rng.randint(7, 9)
        max_degree = rng.randint(2, n - 1)
        g = random_bounded_degree(n, max_degree, s)
        if g.min_degree() >= 2 and len(connected_components(g)) == 1:
            yield s, g
        s += 1


def search_prop2_witnesses(start_seed: int = 0, max_candidates: int = 20000) -> dict[str, tuple[int, Graph]]:
    """First candidate satisfying each property; keys ``"a"`` and ``"b"``."""
    found: dict[str, tuple[int, Graph]] = {}
    stream = prop2_candidates(start_seed)
    for _ in range(max_candidates):
        s, g = next(stream)
        a, b = prop2_property_check(g)
        if a and "a" not in found:
            found["a"] = (s, g)
        if b and "b" not in found:
            found["b"] = (s, g)
        if len(found) == 2:
            break
    return found


def blocks_as_sets(parts: list[tuple[int, int, int]]) -> list[tuple[frozenset[int], ...]]:
    return [tuple(frozenset(members(b)) for b in p) for p in parts]
