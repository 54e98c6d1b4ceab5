"""Finite multi-digraphs with stable edge identifiers.

Vertices and edge identifiers are arbitrary hashable values (strings in the
text format).  Parallel edges are allowed and distinguished by their edge id;
loops are either rejected or silently dropped at construction time.  Edge ids
are never renumbered: contraction and vertex identification keep the ids of
all surviving edges, which is what makes cut edge sets comparable across a
digraph and its quotients.

The line-oriented text format::

    # comment
    vertex a
    edge e1 a b
    edge e2 b c cap=2

``vertex`` lines are only needed for isolated vertices; edge endpoints are
added implicitly.  A missing ``cap`` means capacity 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Tuple

from .errors import FormatError

VertexId = Hashable
EdgeId = Hashable


def sort_key(value):
    """Deterministic ordering for mixed vertex / edge identifiers."""
    return (type(value).__name__, value)


class Digraph:
    """An immutable finite multi-digraph.

    Construct with an iterable of vertices and an iterable of
    ``(edge_id, tail, head)`` triples.  Instances hash and compare by
    content, so two independently built copies of the same digraph are equal.
    """

    __slots__ = (
        "_vertices",
        "_edges",
        "_edge_order",
        "_out",
        "_in",
        "_hash",
        "_weak_cache",
        "_strong_cache",
    )

    def __init__(
        self,
        vertices: Iterable[VertexId] = (),
        edges: Iterable[Tuple[EdgeId, VertexId, VertexId]] = (),
        on_loop: str = "reject",
    ):
        if on_loop not in ("reject", "drop"):
            raise ValueError("on_loop must be 'reject' or 'drop'")
        vertex_set = set(vertices)
        edge_map: Dict[EdgeId, Tuple[VertexId, VertexId]] = {}
        for eid, tail, head in edges:
            if tail == head:
                if on_loop == "reject":
                    raise ValueError(f"loop edge {eid!r} at {tail!r}")
                vertex_set.add(tail)
                continue
            if eid in edge_map:
                raise ValueError(f"duplicate edge id {eid!r}")
            edge_map[eid] = (tail, head)
            vertex_set.add(tail)
            vertex_set.add(head)
        self._vertices: FrozenSet[VertexId] = frozenset(vertex_set)
        self._edges = edge_map
        self._edge_order: Tuple[EdgeId, ...] = tuple(sorted(edge_map, key=sort_key))
        out: Dict[VertexId, List[EdgeId]] = {v: [] for v in vertex_set}
        inc: Dict[VertexId, List[EdgeId]] = {v: [] for v in vertex_set}
        for eid in self._edge_order:
            tail, head = edge_map[eid]
            out[tail].append(eid)
            inc[head].append(eid)
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}
        self._hash: Optional[int] = None
        self._weak_cache = None
        self._strong_cache = None

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> FrozenSet[VertexId]:
        return self._vertices

    @property
    def edge_ids(self) -> Tuple[EdgeId, ...]:
        return self._edge_order

    def __contains__(self, eid: EdgeId) -> bool:
        return eid in self._edges

    def tail(self, eid: EdgeId) -> VertexId:
        return self._edges[eid][0]

    def head(self, eid: EdgeId) -> VertexId:
        return self._edges[eid][1]

    def endpoints(self, eid: EdgeId) -> Tuple[VertexId, VertexId]:
        return self._edges[eid]

    def out_edges(self, v: VertexId) -> Tuple[EdgeId, ...]:
        return self._out[v]

    def in_edges(self, v: VertexId) -> Tuple[EdgeId, ...]:
        return self._in[v]

    def incident_edges(self, v: VertexId) -> Tuple[EdgeId, ...]:
        return self._out[v] + self._in[v]

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self._vertices, tuple((e, self._edges[e]) for e in self._edge_order))
            )
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph({len(self._vertices)} vertices, {len(self._edges)} edges)"

    # -- structure ---------------------------------------------------------

    def weak_components(self) -> Tuple[FrozenSet[VertexId], ...]:
        """Vertex sets of the components of the underlying multigraph."""
        if self._weak_cache is None:
            seen = set()
            comps = []
            for start in sorted(self._vertices, key=sort_key):
                if start in seen:
                    continue
                comp = {start}
                stack = [start]
                seen.add(start)
                while stack:
                    v = stack.pop()
                    for eid in self.incident_edges(v):
                        tail, head = self._edges[eid]
                        w = head if tail == v else tail
                        if w not in seen:
                            seen.add(w)
                            comp.add(w)
                            stack.append(w)
                comps.append(frozenset(comp))
            self._weak_cache = tuple(comps)
        return self._weak_cache

    def is_weakly_connected(self) -> bool:
        return len(self.weak_components()) <= 1

    def strong_components(self) -> Tuple[FrozenSet[VertexId], ...]:
        """Strongly connected components, iterative Tarjan."""
        if self._strong_cache is not None:
            return self._strong_cache
        index: Dict[VertexId, int] = {}
        low: Dict[VertexId, int] = {}
        on_stack = set()
        stack: List[VertexId] = []
        comps: List[FrozenSet[VertexId]] = []
        counter = 0
        for root in sorted(self._vertices, key=sort_key):
            if root in index:
                continue
            work = [(root, iter(self._out[root]))]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                v, it = work[-1]
                advanced = False
                for eid in it:
                    w = self._edges[eid][1]
                    if w not in index:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self._out[w])))
                        advanced = True
                        break
                    if w in on_stack:
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.add(w)
                        if w == v:
                            break
                    comps.append(frozenset(comp))
        comps.sort(key=lambda c: min(sort_key(v) for v in c))
        self._strong_cache = tuple(comps)
        return self._strong_cache

    def is_strongly_connected(self) -> bool:
        return len(self.strong_components()) <= 1

    # -- derived digraphs ----------------------------------------------------

    def identify(self, groups: Iterable[Iterable[VertexId]]) -> Tuple["Digraph", Dict[VertexId, VertexId]]:
        """Identify each group of vertices to a single vertex and drop loops.

        The new vertex is the group's smallest member, so no fresh names are
        invented and edge ids are untouched.  Returns the quotient digraph and
        the full vertex projection map.
        """
        projection = {v: v for v in self._vertices}
        grouped = set()
        for group in groups:
            members = sorted(set(group), key=sort_key)
            if not members:
                continue
            rep = members[0]
            for v in members:
                if v not in self._vertices:
                    raise ValueError(f"unknown vertex {v!r}")
                if v in grouped:
                    raise ValueError(f"vertex {v!r} appears in two groups")
                grouped.add(v)
                projection[v] = rep
        edges = [
            (eid, projection[tail], projection[head])
            for eid, (tail, head) in self._edges.items()
        ]
        vertices = {projection[v] for v in self._vertices}
        return Digraph(vertices, edges, on_loop="drop"), projection


@dataclass(frozen=True)
class Bipartition:
    """An ordered pair of disjoint vertex sets covering V(D)."""

    x: FrozenSet[VertexId]
    y: FrozenSet[VertexId]

    def __post_init__(self):
        object.__setattr__(self, "x", frozenset(self.x))
        object.__setattr__(self, "y", frozenset(self.y))
        if self.x & self.y:
            raise ValueError("bipartition sides overlap")

    @property
    def vertex_set(self) -> FrozenSet[VertexId]:
        return self.x | self.y

    def is_trivial(self) -> bool:
        return not self.x or not self.y

    def swapped(self) -> "Bipartition":
        return Bipartition(self.y, self.x)


class Capacity:
    """A finitary capacity: every edge gets a non-negative integer."""

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[EdgeId, int]):
        vals = dict(values)
        for eid, c in vals.items():
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise ValueError(f"capacity of {eid!r} must be a non-negative int, got {c!r}")
        self._values = vals

    @classmethod
    def unit(cls, d: Digraph) -> "Capacity":
        return cls({eid: 1 for eid in d.edge_ids})

    def check_covers(self, d: Digraph) -> None:
        missing = [eid for eid in d.edge_ids if eid not in self._values]
        if missing:
            raise ValueError(f"capacity missing for edges {missing!r}")

    def __getitem__(self, eid: EdgeId) -> int:
        return self._values[eid]

    def get(self, eid: EdgeId, default: int = 1) -> int:
        return self._values.get(eid, default)

    def total(self, edge_set: Iterable[EdgeId]) -> int:
        return sum(self._values[eid] for eid in edge_set)

    def is_unit(self, d: Digraph) -> bool:
        return all(self._values.get(eid) == 1 for eid in d.edge_ids)

    def as_dict(self) -> Dict[EdgeId, int]:
        return dict(self._values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Capacity):
            return NotImplemented
        return self._values == other._values

    def __repr__(self) -> str:
        return f"Capacity({self._values!r})"


def capacity_of(d: Digraph, capacity: Optional[Capacity]) -> Capacity:
    """Normalise an optional capacity: ``None`` means all ones."""
    if capacity is None:
        return Capacity.unit(d)
    capacity.check_covers(d)
    return capacity


# -- text format -----------------------------------------------------------


def parse_digraph(text: str, on_loop: str = "reject") -> Tuple[Digraph, Capacity]:
    """Parse the line-oriented digraph format; returns digraph and capacity."""
    vertices: List[str] = []
    edges: List[Tuple[str, str, str]] = []
    caps: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: expected 'vertex <name>'")
            vertices.append(parts[1])
        elif parts[0] == "edge":
            if len(parts) not in (4, 5):
                raise FormatError(
                    f"line {lineno}: expected 'edge <id> <tail> <head> [cap=<n>]'"
                )
            eid, tail, head = parts[1:4]
            cap = 1
            if len(parts) == 5:
                if not parts[4].startswith("cap="):
                    raise FormatError(f"line {lineno}: unknown field {parts[4]!r}")
                try:
                    cap = int(parts[4][4:])
                except ValueError:
                    raise FormatError(f"line {lineno}: bad capacity {parts[4]!r}") from None
                if cap < 0:
                    raise FormatError(f"line {lineno}: negative capacity")
            if eid in caps:
                raise FormatError(f"line {lineno}: duplicate edge id {eid!r}")
            edges.append((eid, tail, head))
            caps[eid] = cap
        else:
            raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    d = Digraph(vertices, edges, on_loop=on_loop)
    return d, Capacity({eid: caps[eid] for eid in d.edge_ids})


def format_digraph(d: Digraph, capacity: Optional[Capacity] = None) -> str:
    """Serialize to the text format; ``cap=`` is written only when not 1."""
    lines = [f"vertex {v}" for v in sorted(d.vertices, key=sort_key)]
    for eid in d.edge_ids:
        tail, head = d.endpoints(eid)
        line = f"edge {eid} {tail} {head}"
        if capacity is not None and capacity.get(eid) != 1:
            line += f" cap={capacity[eid]}"
        lines.append(line)
    return "\n".join(lines) + "\n"
