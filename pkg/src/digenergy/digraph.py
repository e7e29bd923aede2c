"""Digraph and graph models, edge-list I/O, walk counts, and reductions.

Vertices are dense 0-based integers.  Digraphs have no loops and no multiple
arcs; a graph is identified with the symmetric digraph obtained by replacing
each edge with the two opposite arcs.  All types are immutable after
construction and every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import DigraphValidationError, EdgeListParseError


@dataclass(frozen=True)
class Digraph:
    """A digraph on vertices 0..n-1: no loops, no multiple arcs."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", frozenset((int(i), int(j)) for i, j in arcs))
        self._validate()

    def _validate(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise DigraphValidationError(f"vertex count must be a non-negative integer, got {self.n!r}")
        for i, j in self.arcs:
            if i == j:
                raise DigraphValidationError(f"loop ({i},{i}) is not allowed")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise DigraphValidationError(f"arc ({i},{j}) out of range for n={self.n}")

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def sorted_arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arcs))

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Bit j of entry i is set iff (i, j) is an arc."""
        rows = [0] * self.n
        for i, j in self.arcs:
            rows[i] |= 1 << j
        return tuple(rows)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i, j in self.arcs:
            rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def is_symmetric(self) -> bool:
        """True iff the arc set is closed under reversal."""
        return all((j, i) in self.arcs for i, j in self.arcs)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph; edges stored as (i, j) with i < j."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "n", n)
        norm = frozenset((min(i, j), max(i, j)) for i, j in ((int(i), int(j)) for i, j in edges))
        object.__setattr__(self, "edges", norm)
        if n < 0:
            raise DigraphValidationError(f"vertex count must be non-negative, got {n}")
        for i, j in norm:
            if i == j:
                raise DigraphValidationError(f"loop ({i},{i}) is not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise DigraphValidationError(f"edge ({i},{j}) out of range for n={n}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i, j in self.edges:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.neighbor_masks)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(_bits(self.neighbor_masks[v]))

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges:
            a[i, j] = 1
            a[j, i] = 1
        return a

    def component_vertex_sets(self) -> tuple[tuple[int, ...], ...]:
        """Connected components, ordered by smallest member vertex."""
        seen = 0
        comps = []
        for start in range(self.n):
            if (seen >> start) & 1:
                continue
            frontier = 1 << start
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                m = frontier
                while m:
                    v = (m & -m).bit_length() - 1
                    nxt |= self.neighbor_masks[v]
                    m &= m - 1
                frontier = nxt & ~comp
            seen |= comp
            comps.append(tuple(_bits(comp)))
        return tuple(comps)


@dataclass(frozen=True)
class ClosedWalkProfile:
    """Per-vertex closed-2-walk data and its exact integer aggregates.

    ``c2_seq[i]`` counts the vertices doubly adjacent to i (equivalently the
    closed walks of length 2 through i); ``t2_seq[i]`` sums ``c2_seq[j]``
    over those vertices.
    """

    c2_seq: tuple[int, ...]
    t2_seq: tuple[int, ...]
    a: int
    c2_total: int
    sum_c2_sq: int
    sum_t2_sq: int

    @property
    def n(self) -> int:
        return len(self.c2_seq)


@dataclass(frozen=True)
class SccPartition:
    """Strong components as dense ids, ordered by smallest member vertex."""

    component_id: tuple[int, ...]
    component_count: int

    def members(self, cid: int) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.component_id) if c == cid)


def _bits(mask: int):
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


def parse_edge_list(text: str) -> Digraph:
    """Parse the edge-list format: a line with n, then one ``i j`` per arc.

    ``#`` starts a comment, blank lines are ignored, duplicate arc lines
    collapse.  Raises EdgeListParseError (with line number) on malformed
    input and DigraphValidationError on loops or out-of-range vertices.
    """
    n: Optional[int] = None
    arcs: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1:
                raise EdgeListParseError("expected a single vertex count", lineno)
            try:
                n = int(tokens[0])
            except ValueError:
                raise EdgeListParseError(f"vertex count is not an integer: {tokens[0]!r}", lineno) from None
            if n < 0:
                raise EdgeListParseError(f"vertex count must be non-negative, got {n}", lineno)
            continue
        if len(tokens) != 2:
            raise EdgeListParseError(f"expected 'i j', got {line!r}", lineno)
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer vertex in {line!r}", lineno) from None
        if i == j:
            raise DigraphValidationError(f"line {lineno}: loop ({i},{i}) is not allowed")
        if not (0 <= i < n and 0 <= j < n):
            raise DigraphValidationError(f"line {lineno}: arc ({i},{j}) out of range for n={n}")
        arcs.add((i, j))
    if n is None:
        raise EdgeListParseError("empty input: no vertex count line", 1)
    return Digraph(n, arcs)


def serialize_edge_list(d: Digraph) -> str:
    """Inverse of parse_edge_list: n, then arcs in lexicographic order."""
    lines = [str(d.n)]
    lines.extend(f"{i} {j}" for i, j in d.sorted_arcs)
    return "\n".join(lines) + "\n"


def adjacency_matrix(d: Digraph) -> np.ndarray:
    """0-1 adjacency matrix with zero diagonal; entry (i,j)=1 iff (i,j) is an arc."""
    a = np.zeros((d.n, d.n), dtype=np.int64)
    for i, j in d.arcs:
        a[i, j] = 1
    return a


def geometric_symmetrization(m: np.ndarray) -> np.ndarray:
    """Entrywise sqrt(m_ij * m_ji); symmetric, and 0-1 for 0-1 input."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    prod = m * m.T
    if np.issubdtype(prod.dtype, np.integer) and prod.max(initial=0) <= 1:
        return prod
    return np.sqrt(prod.astype(float))


def walk_profile(d: Digraph) -> ClosedWalkProfile:
    """Closed-2-walk sequences and their exact aggregates.

    ``c2_seq`` equals the row sums of the geometric symmetrization of the
    adjacency matrix, and ``t2_seq`` equals that matrix applied to
    ``c2_seq``; the sequence totals satisfy sum(t2) == sum(c2**2).
    """
    c2, t2 = kernels.walk_counts(d.n, d.out_masks, d.in_masks)
    return ClosedWalkProfile(
        c2_seq=tuple(c2),
        t2_seq=tuple(t2),
        a=d.arc_count,
        c2_total=sum(c2),
        sum_c2_sq=sum(c * c for c in c2),
        sum_t2_sq=sum(t * t for t in t2),
    )


def strongly_connected_components(d: Digraph) -> SccPartition:
    ids, count = kernels.scc_ids(d.n, d.out_masks)
    return SccPartition(component_id=tuple(ids), component_count=count)


def cycle_arc_reduction(d: Digraph) -> Digraph:
    """Delete every arc that lies on no directed cycle.

    An arc lies on a directed cycle iff both endpoints share a strong
    component, so this keeps exactly the intra-component arcs.  The result
    has the same geometric symmetrization and the same characteristic
    polynomial as the input.
    """
    scc = strongly_connected_components(d)
    cid = scc.component_id
    return Digraph(d.n, (arc for arc in d.arcs if cid[arc[0]] == cid[arc[1]]))


def underlying_graph_if_symmetric(d: Digraph) -> Optional[Graph]:
    """The graph G with d equal to its symmetric digraph, if one exists."""
    if not d.is_symmetric:
        return None
    return Graph(d.n, ((i, j) for i, j in d.arcs if i < j))


def from_graph(g: Graph) -> Digraph:
    """The symmetric digraph of g: each edge becomes two opposite arcs."""
    arcs = []
    for i, j in g.edges:
        arcs.append((i, j))
        arcs.append((j, i))
    return Digraph(g.n, arcs)
