"""Search state for three-way dominating partitions.

A :class:`PartitionState` holds the partition ``(D1, D2, D3, R)`` of the
vertex set, the auxiliary sets ``A1, A2, A3`` recording failed placements,
and every per-vertex quantity the branching search consults: gaps, their
max/min/sum, open neighbours, open sets and balance.  Set indices are
1-based throughout the public API (``i in (1, 2, 3)``).

Derived values are maintained incrementally by :meth:`PartitionState.assign`
and :meth:`PartitionState.add_aux`, touching only the vertices whose values
can change.  :meth:`PartitionState.recalculate_gaps` recomputes everything
from the raw sets and is the reference the incremental path is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, closed_neighborhood_mask, mask_of, members

INDICES = (1, 2, 3)

# vertex-level derived tuple: (gaps, maxgap, mingap, sumgap, open_neighbors, open_sets, balance)
_VertexRow = tuple


class ContractViolation(ValueError):
    """A caller broke an operation's precondition."""


@dataclass(frozen=True, slots=True)
class UndoToken:
    kind: str  # "assign" or "aux"
    vertex: int
    index: int
    seq: int
    prev_area: int
    prev_dom: int
    saved: tuple[tuple[int, _VertexRow], ...]


class PartitionState:
    """Mutable, single-owner partition ``(D1, D2, D3, R)`` with auxiliary sets."""

    def __init__(self, graph: Graph):
        self.graph = graph
        n = graph.n
        self.n = n
        self.d = [0, 0, 0]
        self.r = graph.full
        self.a = [0, 0, 0]
        # dom[i-1] is the bitmask of N[D_i]
        self.dom = [0, 0, 0]
        self.area = 0
        self.gap: list[list[int | None] | None] = [None] * n
        self.maxgap_v: list[int | None] = [None] * n
        self.mingap_v: list[int | None] = [None] * n
        self.sumgap_v: list[int | None] = [None] * n
        self.open_neighbors = [0] * n
        self._open = [0] * n  # open sets as a 3-bit mask, bit i-1 for D_i
        self.balance = [0] * n
        self._seq = 0
        self.recalculate_gaps()

    @classmethod
    def from_sets(
        cls,
        graph: Graph,
        d: Iterable[Iterable[int]] = ((), (), ()),
        a: Iterable[Iterable[int]] = ((), (), ()),
    ) -> PartitionState:
        """Build a state with the given D and A sets, derived values from scratch."""
        st = cls.__new__(cls)
        st.graph = graph
        st.n = graph.n
        st.d = [mask_of(s) for s in d]
        st.a = [mask_of(s) for s in a]
        if len(st.d) != 3 or len(st.a) != 3:
            raise ValueError("need exactly three D sets and three A sets")
        x, y, z = st.d
        if x & y or x & z or y & z:
            raise ContractViolation("D sets must be pairwise disjoint")
        st.r = graph.full & ~(x | y | z)
        st.gap = [None] * st.n
        st.maxgap_v = [None] * st.n
        st.mingap_v = [None] * st.n
        st.sumgap_v = [None] * st.n
        st.open_neighbors = [0] * st.n
        st._open = [0] * st.n
        st.balance = [0] * st.n
        st._seq = 0
        st.recalculate_gaps()
        return st

    def copy(self) -> PartitionState:
        """Independent state over the same sets, derived values recomputed."""
        return PartitionState.from_sets(
            self.graph,
            [list(members(m)) for m in self.d],
            [list(members(m)) for m in self.a],
        )

    # -- derived values -------------------------------------------------

    def _row(self, v: int) -> _VertexRow:
        closed = self.graph.closed[v]
        on = (closed & self.r).bit_count()
        osets = 0
        for k in range(3):
            if not (self.dom[k] >> v) & 1:
                osets |= 1 << k
        bal = on - osets.bit_count()
        if not (self.r >> v) & 1:
            return (None, None, None, None, on, osets, bal)
        gaps: list[int | None] = [None, None, None]
        defined = []
        for k in range(3):
            if not (self.a[k] >> v) & 1:
                g = (closed & ~self.dom[k]).bit_count()
                gaps[k] = g
                defined.append(g)
        if defined:
            return (gaps, max(defined), min(defined), sum(defined), on, osets, bal)
        return (gaps, None, None, None, on, osets, bal)

    def _store(self, v: int, row: _VertexRow) -> None:
        (self.gap[v], self.maxgap_v[v], self.mingap_v[v], self.sumgap_v[v],
         self.open_neighbors[v], self._open[v], self.balance[v]) = row

    def _load(self, v: int) -> _VertexRow:
        g = self.gap[v]
        return (None if g is None else list(g), self.maxgap_v[v], self.mingap_v[v],
                self.sumgap_v[v], self.open_neighbors[v], self._open[v], self.balance[v])

    def recalculate_gaps(self) -> None:
        """Recompute every derived quantity from D, R and A."""
        g = self.graph
        self.dom = [closed_neighborhood_mask(g, m) for m in self.d]
        self.area = sum(m.bit_count() for m in self.dom)
        for v in range(self.n):
            self._store(v, self._row(v))

    def derived(self) -> dict:
        """Snapshot of all derived values, for equality checks."""
        return {
            "dom": tuple(self.dom),
            "area": self.area,
            "surplus": self.surplus,
            "gap": tuple(None if x is None else tuple(x) for x in self.gap),
            "maxgap": tuple(self.maxgap_v),
            "mingap": tuple(self.mingap_v),
            "sumgap": tuple(self.sumgap_v),
            "open_neighbors": tuple(self.open_neighbors),
            "open_sets": tuple(self._open),
            "balance": tuple(self.balance),
        }

    def sets(self) -> dict:
        return {"d": tuple(self.d), "r": self.r, "a": tuple(self.a)}

    @property
    def assigned(self) -> int:
        return self.n - self.r.bit_count()

    @property
    def surplus(self) -> int:
        return self.area - 3 * self.assigned

    def gap_of(self, v: int, i: int) -> int | None:
        g = self.gap[v]
        return None if g is None else g[i - 1]

    def open_sets(self, v: int) -> frozenset[int]:
        o = self._open[v]
        return frozenset(k + 1 for k in range(3) if (o >> k) & 1)

    def open_neighbor_set(self, v: int) -> frozenset[int]:
        return frozenset(members(self.graph.closed[v] & self.r))

    def open_set_count(self, v: int) -> int:
        return self._open[v].bit_count()

    def aux_count(self, v: int) -> int:
        return sum((m >> v) & 1 for m in self.a)

    def in_r(self, v: int) -> bool:
        return bool((self.r >> v) & 1)

    def is_critical(self, v: int) -> bool:
        return self.balance[v] <= 0 and self._open[v] != 0

    def all_dominating(self) -> bool:
        full = self.graph.full
        return self.dom[0] == full and self.dom[1] == full and self.dom[2] == full

    def graph_maxgap(self) -> int | None:
        vals = [x for x in self.maxgap_v if x is not None]
        return max(vals) if vals else None

    def graph_mingap(self) -> int | None:
        vals = [x for x in self.mingap_v if x is not None]
        return min(vals) if vals else None

    def select_branch_vertex(self) -> tuple[int, int] | None:
        """Vertex of maximum gap, ties by maximum sumgap then lowest id; set index
        is the lowest one achieving that vertex's maxgap.  ``None`` if no gap is
        defined anywhere."""
        best = None
        best_key = None
        for v in members(self.r):
            mg = self.maxgap_v[v]
            if mg is None:
                continue
            key = (mg, self.sumgap_v[v])
            if best_key is None or key > best_key:
                best, best_key = v, key
        if best is None:
            return None
        gaps = self.gap[best]
        i = next(k + 1 for k in range(3) if gaps[k] == best_key[0])
        return best, i

    def partition(self, pour_rest: bool = False) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        d1 = self.d[0] | (self.r if pour_rest else 0)
        return (frozenset(members(d1)), frozenset(members(self.d[1])), frozenset(members(self.d[2])))

    # -- mutation ---------------------------------------------------------

    def assign(self, v: int, i: int) -> UndoToken:
        """Move ``v`` from R into ``D_i`` and refresh affected derived values."""
        if not (self.r >> v) & 1:
            raise ContractViolation(f"vertex {v} is not in R")
        if i not in INDICES:
            raise ContractViolation(f"set index must be 1, 2 or 3, got {i}")
        k = i - 1
        g = self.graph
        closed = g.closed[v]
        newly = closed & ~self.dom[k]
        affected = closed_neighborhood_mask(g, newly) | closed
        saved = tuple((u, self._load(u)) for u in members(affected))
        self._seq += 1
        token = UndoToken("assign", v, i, self._seq, self.area, self.dom[k], saved)
        self.d[k] |= 1 << v
        self.r &= ~(1 << v)
        self.dom[k] |= newly
        self.area += newly.bit_count()
        for u in members(affected):
            self._store(u, self._row(u))
        return token

    def add_aux(self, v: int, i: int) -> UndoToken:
        """Record that ``v`` may no longer go into ``D_i`` (``A_i += v``)."""
        if i not in INDICES:
            raise ContractViolation(f"set index must be 1, 2 or 3, got {i}")
        k = i - 1
        if (self.a[k] >> v) & 1:
            raise ContractViolation(f"vertex {v} is already in A_{i}")
        self._seq += 1
        token = UndoToken("aux", v, i, self._seq, self.area, self.dom[k], ((v, self._load(v)),))
        self.a[k] |= 1 << v
        self._store(v, self._row(v))
        return token

    def undo(self, token: UndoToken) -> None:
        """Revert the most recent ``assign``/``add_aux``; tokens must be undone LIFO."""
        if token.seq != self._seq:
            raise ContractViolation("undo tokens must be applied in reverse order")
        k = token.index - 1
        bit = 1 << token.vertex
        if token.kind == "assign":
            self.d[k] &= ~bit
            self.r |= bit
            self.dom[k] = token.prev_dom
            self.area = token.prev_area
        else:
            self.a[k] &= ~bit
        for u, row in token.saved:
            self._store(u, row)
        self._seq -= 1
