"""Dicuts, dibonds, quotients, and the two-dijoin orientation trick.

A dicut is a cut all of whose edges point into one common side, the
*in-shore*.  Dicuts with in-shore Y correspond exactly to the non-trivial
vertex sets Y that are closed under out-edges, so enumeration walks the
closed sets of the strongly-connected-component condensation.

A ``Dicut`` stores one explicit representation: its in-shore.  In a weakly
disconnected digraph the same edge set can appear with several in-shores
(whole components untouched by the cut may sit on either side); enumeration
keeps them apart unless deduplication by edge set is requested, because the
shore identity matters to the corner and contraction constructions.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .digraph import Bipartition, Digraph, EdgeId, VertexId, sort_key
from .errors import NoDicut, NotADicut, NotBridgeless, TooLarge

DEFAULT_CLOSED_SET_CAP = 2 ** 20


class Dicut:
    """A dicut of a digraph together with its explicit in-shore.

    The directedness invariants are checked on construction: every edge of
    the cut has its head in the in-shore and its tail outside, and no edge
    of the digraph leaves the in-shore.
    """

    __slots__ = ("digraph", "edge_ids", "in_shore", "_hash")

    def __init__(self, digraph: Digraph, in_shore: Iterable[VertexId]):
        shore = frozenset(in_shore)
        if not shore <= digraph.vertices:
            raise NotADicut("in-shore contains unknown vertices")
        if not shore or shore == digraph.vertices:
            raise NotADicut("in-shore must be a non-trivial subset of the vertices")
        cut = []
        for eid in digraph.edge_ids:
            tail, head = digraph.endpoints(eid)
            if tail in shore and head not in shore:
                raise NotADicut(f"edge {eid!r} leaves the in-shore")
            if head in shore and tail not in shore:
                cut.append(eid)
        self.digraph = digraph
        self.in_shore: FrozenSet[VertexId] = shore
        self.edge_ids: FrozenSet[EdgeId] = frozenset(cut)
        self._hash: Optional[int] = None

    @property
    def out_shore(self) -> FrozenSet[VertexId]:
        return self.digraph.vertices - self.in_shore

    def size(self) -> int:
        return len(self.edge_ids)

    def is_empty(self) -> bool:
        return not self.edge_ids

    def bipartition(self) -> Bipartition:
        return Bipartition(self.out_shore, self.in_shore)

    def sort_token(self) -> Tuple:
        return tuple(sorted((sort_key(v) for v in self.in_shore)))

    def touched_components(self) -> Tuple[FrozenSet[VertexId], ...]:
        """Weak components of the digraph carrying at least one cut edge."""
        touched = []
        for comp in self.digraph.weak_components():
            if any(self.digraph.head(eid) in comp for eid in self.edge_ids):
                touched.append(comp)
        return tuple(touched)

    def cells(self) -> Tuple[FrozenSet[VertexId], ...]:
        """The finest partition of V every representation refines.

        Within a touched weak component the two sides are forced (up to
        swapping); an untouched component can sit wholly on either side.  Two
        vertices are separable by this cut exactly when they lie in
        different cells.
        """
        out = []
        for comp in self.digraph.weak_components():
            inside = comp & self.in_shore
            outside = comp - self.in_shore
            touched = any(self.digraph.head(eid) in comp for eid in self.edge_ids)
            if touched:
                if inside:
                    out.append(inside)
                if outside:
                    out.append(outside)
            else:
                out.append(comp)
        return tuple(out)

    def separates(self, v: VertexId, w: VertexId) -> bool:
        """True if some representation of this cut splits v from w."""
        for cell in self.cells():
            if v in cell:
                return w not in cell
        raise ValueError(f"unknown vertex {v!r}")

    def representations(self, max_free: int = 16) -> Tuple[Bipartition, ...]:
        """All in-shore-oriented representations of this dicut.

        Obtained from the stored in-shore by toggling whole untouched weak
        components; exponential in their number, so only for desk scale.
        """
        touched = set()
        for comp in self.touched_components():
            touched |= comp
        free = [comp for comp in self.digraph.weak_components() if not (comp & touched)]
        if len(free) > max_free:
            raise TooLarge(f"{len(free)} untouched components; 2^{len(free)} representations")
        base = self.in_shore.difference(*free)
        reps = []
        for mask in range(2 ** len(free)):
            shore = set(base)
            for i, comp in enumerate(free):
                if mask >> i & 1:
                    shore |= comp
            if shore and shore != set(self.digraph.vertices):
                reps.append(Bipartition(self.digraph.vertices - shore, frozenset(shore)))
        return tuple(reps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dicut):
            return NotImplemented
        return (
            self.in_shore == other.in_shore
            and self.edge_ids == other.edge_ids
            and self.digraph == other.digraph
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.digraph, self.in_shore))
        return self._hash

    def __repr__(self) -> str:
        shore = ",".join(str(v) for v in sorted(self.in_shore, key=sort_key))
        edges = ",".join(str(e) for e in sorted(self.edge_ids, key=sort_key))
        return f"Dicut(in_shore={{{shore}}}, edges={{{edges}}})"


def dicut_from_inshore(d: Digraph, y: Iterable[VertexId]) -> Dicut:
    """The dicut with in-shore ``y``; raises NotADicut if an edge leaves y."""
    return Dicut(d, y)


def _closed_shores(d: Digraph, cap: int) -> List[FrozenSet[VertexId]]:
    """All non-trivial out-closed vertex sets, output-sensitively.

    Works on the SCC condensation: a set is out-closed iff it is a union of
    components closed under condensation successors.  Components are decided
    in reverse topological order so a component may only be included once
    all of its successors are in.
    """
    comps = d.strong_components()
    n = len(comps)
    comp_of: Dict[VertexId, int] = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    succ = [0] * n
    pred: List[Set[int]] = [set() for _ in range(n)]
    for eid in d.edge_ids:
        a, b = comp_of[d.tail(eid)], comp_of[d.head(eid)]
        if a != b:
            succ[a] |= 1 << b
            pred[b].add(a)
    # reverse topological order of the condensation: successors first
    outdeg = [bin(m).count("1") for m in succ]
    ready = [i for i in range(n) if outdeg[i] == 0]
    order: List[int] = []
    while ready:
        i = ready.pop()
        order.append(i)
        for p in pred[i]:
            outdeg[p] -= 1
            if outdeg[p] == 0:
                ready.append(p)
    assert len(order) == n

    shores: List[FrozenSet[VertexId]] = []
    full = (1 << n) - 1

    def extend(pos: int, mask: int) -> None:
        if pos == len(order):
            if mask and mask != full:
                if len(shores) >= cap:
                    raise TooLarge(
                        f"more than {cap} closed sets; raise the cap to proceed"
                    )
                shore = frozenset().union(*(comps[i] for i in range(n) if mask >> i & 1))
                shores.append(shore)
            return
        i = order[pos]
        extend(pos + 1, mask)
        if succ[i] & mask == succ[i]:
            extend(pos + 1, mask | (1 << i))

    extend(0, 0)
    return shores


def enumerate_dicuts(
    d: Digraph,
    include_empty: bool = False,
    dedupe_by_edge_set: bool = False,
    max_closed_sets: int = DEFAULT_CLOSED_SET_CAP,
) -> List[Dicut]:
    """Every dicut of ``d``, one per out-closed in-shore.

    Empty dicuts (possible only in weakly disconnected digraphs) are skipped
    unless ``include_empty``.  The result is ordered lexicographically by
    sorted in-shore; ``dedupe_by_edge_set`` keeps only the first dicut of
    each edge set in that order.
    """
    dicuts = [Dicut(d, shore) for shore in _closed_shores(d, max_closed_sets)]
    if not include_empty:
        dicuts = [b for b in dicuts if not b.is_empty()]
    dicuts.sort(key=Dicut.sort_token)
    if dedupe_by_edge_set:
        seen = set()
        unique = []
        for b in dicuts:
            if b.edge_ids not in seen:
                seen.add(b.edge_ids)
                unique.append(b)
        dicuts = unique
    return dicuts


def enumerate_dibonds(
    d: Digraph,
    dedupe_by_edge_set: bool = False,
    max_closed_sets: int = DEFAULT_CLOSED_SET_CAP,
) -> List[Dicut]:
    """The minimal non-empty dicuts of ``d`` (subset-minimal edge sets)."""
    dicuts = enumerate_dicuts(d, max_closed_sets=max_closed_sets)
    edge_sets = sorted({b.edge_ids for b in dicuts}, key=len)
    minimal = set()
    for es in edge_sets:
        if not any(other < es for other in minimal):
            minimal.add(es)
    dibonds = [b for b in dicuts if b.edge_ids in minimal]
    if dedupe_by_edge_set:
        seen = set()
        unique = []
        for b in dibonds:
            if b.edge_ids not in seen:
                seen.add(b.edge_ids)
                unique.append(b)
        dibonds = unique
    return dibonds


# -- quotient ----------------------------------------------------------------


def quotient(d: Digraph, cls: Sequence[Dicut]) -> Tuple[Digraph, Dict[VertexId, VertexId]]:
    """Identify vertices no class dicut separates; drop loops.

    Every dicut (dibond) of the class stays a dicut (dibond) of the quotient,
    and quotienting by the class of all dicuts leaves no directed cycle.
    """
    for b in cls:
        if b.digraph != d:
            raise ValueError("class dicut belongs to a different digraph")
    cell_index: List[Dict[VertexId, int]] = []
    for b in cls:
        lookup = {}
        for i, cell in enumerate(b.cells()):
            for v in cell:
                lookup[v] = i
        cell_index.append(lookup)
    groups: Dict[Tuple[int, ...], List[VertexId]] = {}
    for v in d.vertices:
        signature = tuple(lookup[v] for lookup in cell_index)
        groups.setdefault(signature, []).append(v)
    return d.identify(groups.values())


# -- the two disjoint dijoins of a bridgeless digraph -------------------------


def _orient_strongly(d: Digraph) -> Dict[EdgeId, Tuple[VertexId, VertexId]]:
    """A strongly connected orientation of each underlying component.

    Depth-first search: tree edges point away from the root, every other
    edge points from the later-discovered endpoint back to the earlier one.
    Raises NotBridgeless when a bridge makes this impossible.
    """
    disc: Dict[VertexId, int] = {}
    low: Dict[VertexId, int] = {}
    orientation: Dict[EdgeId, Tuple[VertexId, VertexId]] = {}
    counter = 0
    for root in sorted(d.vertices, key=sort_key):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack: List[Tuple[VertexId, Optional[EdgeId], Iterable[EdgeId]]] = [
            (root, None, iter(d.incident_edges(root)))
        ]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == via or eid in orientation:
                    continue
                tail, head = d.endpoints(eid)
                w = head if tail == v else tail
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    orientation[eid] = (v, w)
                    stack.append((w, eid, iter(d.incident_edges(w))))
                    advanced = True
                    break
                orientation[eid] = (v, w)
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    raise NotBridgeless(f"edge {via!r} is a bridge")
    return orientation


def _induced(d: Digraph, comp: FrozenSet[VertexId]) -> Digraph:
    return Digraph(comp, [(e, *d.endpoints(e)) for e in d.edge_ids if d.tail(e) in comp])


def robbins_two_dijoins(d: Digraph) -> Tuple[FrozenSet[EdgeId], FrozenSet[EdgeId]]:
    """Two disjoint dijoins of a bridgeless digraph with a non-empty dicut.

    Orients the underlying multigraph strongly and splits E(d) into the
    edges agreeing and disagreeing with that orientation.  Any non-empty
    dicut is crossed both ways by a strong orientation, so both sets meet it.
    """
    orientation = _orient_strongly(d)
    if all(_induced(d, comp).is_strongly_connected() for comp in d.weak_components()):
        raise NoDicut("every weak component is strongly connected")
    agree = frozenset(eid for eid in d.edge_ids if orientation[eid] == d.endpoints(eid))
    disagree = frozenset(d.edge_ids) - agree
    oriented = Digraph(d.vertices, [(e, a, b) for e, (a, b) in orientation.items()])
    for comp in oriented.weak_components():
        if not _induced(oriented, comp).is_strongly_connected():
            raise AssertionError("orientation is not strongly connected (internal bug)")
    return agree, disagree
