"""Simple undirected graphs over dense vertex ids, plus domination predicates.

Vertex sets are exposed as ``frozenset[int]``; internally every closed
neighbourhood is also kept as an int bitmask so the solvers can do set
algebra with ``&``/``|`` and ``int.bit_count``.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Iterator, Sequence


class GraphFormatError(ValueError):
    """Raised for malformed edge-list documents; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "closed", "full", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)
        # closed[v] is the bitmask of N[v]
        self.closed: tuple[int, ...] = tuple(mask_of(s) | (1 << v) for v, s in enumerate(nbrs))
        self.full = (1 << n) - 1
        self._edges: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> Graph:
        return cls(len(adj), ((u, v) for u, nb in enumerate(adj) for v in nb if u < v))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v
            )
        return self._edges

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def min_degree(self) -> int:
        return min((len(s) for s in self.adj), default=0)

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Relabelled induced subgraph and the map from new ids back to old ids."""
        old = sorted(vertices)
        new_id = {v: i for i, v in enumerate(old)}
        edges = [
            (new_id[u], new_id[v])
            for u in old
            for v in self.adj[u]
            if v in new_id and u < v
        ]
        return Graph(len(old), edges), old

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        edges = list(self.edges()) + [(u + shift, v + shift) for u, v in other.edges()]
        return Graph(self.n + other.n, edges)


# ---------------------------------------------------------------------------
# edge-list I/O

def parse_graph(text: str) -> Graph:
    """Parse a DIMACS-like edge list (``c``/``p edge n m``/``e u v``, 1-based ids)."""
    n: int | None = None
    declared_m = 0
    p_line = 0
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError(lineno, "duplicate problem line")
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError(lineno, "expected 'p edge <n> <m>'")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer vertex or edge count") from None
            if n < 0 or declared_m < 0:
                raise GraphFormatError(lineno, "negative vertex or edge count")
            p_line = lineno
        elif tag == "e":
            if n is None:
                raise GraphFormatError(lineno, "edge before problem line")
            if len(parts) != 3:
                raise GraphFormatError(lineno, "expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer vertex id") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(lineno, f"vertex id out of range 1..{n}")
            if u == v:
                raise GraphFormatError(lineno, f"self-loop on vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(lineno, f"duplicate edge {key[0]} {key[1]}")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise GraphFormatError(0, "missing 'p edge' problem line")
    if len(edges) != declared_m:
        raise GraphFormatError(p_line, f"declared {declared_m} edges, found {len(edges)}")
    return Graph(n, edges)


def write_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.num_edges}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generators

def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("a path needs at least 1 vertex")
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("a complete graph needs at least 1 vertex")
    return Graph(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


def random_bounded_degree(n: int, max_degree: int, seed: int) -> Graph:
    """Uniform edge insertion with rejection; ``10 * n * max_degree`` attempts."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if not 0 <= max_degree <= max(n - 1, 0):
        raise ValueError(f"max degree must lie in 0..{max(n - 1, 0)}")
    rng = random.Random(seed)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for _ in range(10 * n * max_degree):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or v in nbrs[u]:
            continue
        if len(nbrs[u]) >= max_degree or len(nbrs[v]) >= max_degree:
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph.from_adjacency(nbrs)


def random_regular(n: int, degree: int, seed: int) -> Graph:
    """Uniformly random ``degree``-regular graph (networkx pairing model)."""
    import networkx as nx

    h = nx.random_regular_graph(degree, n, seed=seed)
    return Graph(n, h.edges())


def generate(kind: str, **params) -> Graph:
    """Dispatch on ``kind``: ``cycle``/``path``/``complete`` take ``k``;
    ``random`` takes ``n``, ``max_degree``, ``seed``; ``regular`` takes
    ``n``, ``degree``, ``seed``."""
    if kind == "cycle":
        return cycle_graph(params["k"])
    if kind == "path":
        return path_graph(params["k"])
    if kind == "complete":
        return complete_graph(params["k"])
    if kind == "random":
        return random_bounded_degree(params["n"], params["max_degree"], params["seed"])
    if kind == "regular":
        return random_regular(params["n"], params["degree"], params["seed"])
    raise ValueError(f"unknown graph kind {kind!r}")


# ---------------------------------------------------------------------------
# domination

def closed_neighborhood_mask(g: Graph, s: int) -> int:
    out = 0
    for v in members(s):
        out |= g.closed[v]
    return out


def closed_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    return frozenset(members(closed_neighborhood_mask(g, mask_of(s))))


def dominates_mask(g: Graph, d: int) -> bool:
    return closed_neighborhood_mask(g, d) == g.full


def is_dominating_set(g: Graph, d: Iterable[int]) -> bool:
    return dominates_mask(g, mask_of(d))


def verify_three_partition(g: Graph, d1: Iterable[int], d2: Iterable[int], d3: Iterable[int]) -> bool:
    parts = [list(d1), list(d2), list(d3)]
    masks = []
    for p in parts:
        if any(not (0 <= v < g.n) for v in p):
            return False
        m = mask_of(p)
        if m.bit_count() != len(p):
            return False
        masks.append(m)
    a, b, c = masks
    if a & b or a & c or b & c or (a | b | c) != g.full:
        return False
    return all(dominates_mask(g, m) for m in masks)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def dominating_table(g: Graph):
    """Boolean numpy array over all ``2**n`` vertex masks: does the mask dominate?"""
    import numpy as np

    if g.n > 30:
        raise ValueError("subset table limited to n <= 30")
    nb = np.zeros(1 << g.n, dtype=np.uint32)
    for v in range(g.n):
        half = 1 << v
        nb[half:2 * half] = nb[:half] | g.closed[v]
    return nb == g.full


def minimal_dominating_sets(g: Graph) -> list[int]:
    """Masks of all inclusion-minimal dominating sets, in increasing mask order."""
    dom = dominating_table(g)
    minimal = dom.copy()
    for v in range(g.n):
        half = 1 << v
        view = minimal.reshape(-1, 2, half)
        view[:, 1, :] &= ~dom.reshape(-1, 2, half)[:, 0, :]
    return [int(m) for m in minimal.nonzero()[0]]
