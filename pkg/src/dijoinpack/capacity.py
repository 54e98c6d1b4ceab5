"""The two reductions between capacitated and uncapacitated packing questions.

``hat_transform`` replaces every edge by capacity-many parallel clones
(capacity-0 edges vanish), turning capacities into plain disjointness;
``tilde_transform`` adds one capacity-0 apex vertex per vertex subset,
turning every mapped dicut into a dibond of the enlarged digraph while
preserving its capacity.  ``capacitated_equivalence_check`` runs the
brute-force oracle on an instance and on both transformed instances and
reports whether the verdicts agree (they must).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .digraph import Capacity, Digraph, EdgeId, VertexId, capacity_of, sort_key
from .dicuts import Dicut
from .classes import ClassLike, resolve_class
from .errors import CapExceeded, DijoinError, TooManyVertices


@dataclass(frozen=True)
class HatResult:
    """Parallel-edge expansion: digraph, clone maps, and the class image."""

    digraph: Digraph
    edge_map: Dict[EdgeId, Tuple[EdgeId, ...]]
    clone_parent: Dict[EdgeId, EdgeId]
    class_map: Dict[Dicut, Dicut]

    def trace(self, clone_set: Iterable[EdgeId]) -> FrozenSet[EdgeId]:
        """Original edges having at least one clone in the set."""
        return frozenset(self.clone_parent[c] for c in clone_set)

    def trace_family(self, family: Sequence[Iterable[EdgeId]]) -> Tuple[FrozenSet[EdgeId], ...]:
        return tuple(self.trace(f) for f in family)

    def assign_clones(
        self, family: Sequence[Iterable[EdgeId]]
    ) -> Tuple[FrozenSet[EdgeId], ...]:
        """Greedy clone choice turning a c-disjoint family into disjoint sets.

        Processes the family in order, giving each occurrence of an edge its
        smallest still-unused clone; fails if an edge appears more often
        than it has clones, i.e. if the family was not c-disjoint.
        """
        used: Dict[EdgeId, int] = {}
        out: List[FrozenSet[EdgeId]] = []
        for f in family:
            chosen = []
            for eid in sorted(f, key=sort_key):
                clones = self.edge_map.get(eid, ())
                index = used.get(eid, 0)
                if index >= len(clones):
                    raise DijoinError(
                        f"edge {eid!r} appears in more dijoins than its capacity"
                    )
                chosen.append(clones[index])
                used[eid] = index + 1
            out.append(frozenset(chosen))
        return tuple(out)


def _clone_names(
    d: Digraph, cap: Capacity
) -> Tuple[Dict[EdgeId, Tuple[EdgeId, ...]], Dict[EdgeId, EdgeId]]:
    sep = "#"
    while True:
        edge_map: Dict[EdgeId, Tuple[EdgeId, ...]] = {}
        parent: Dict[EdgeId, EdgeId] = {}
        names: set = set()
        clash = False
        for eid in d.edge_ids:
            n = cap[eid]
            if n == 1:
                clones: Tuple[EdgeId, ...] = (eid,)
            else:
                clones = tuple(f"{eid}{sep}{i}" for i in range(n))
            for c in clones:
                if c in names:
                    clash = True
                    break
                names.add(c)
            if clash:
                break
            edge_map[eid] = clones
            for c in clones:
                parent[c] = eid
        if not clash:
            return edge_map, parent
        sep += "#"


def hat_transform(
    d: Digraph,
    capacity: Optional[Capacity],
    cls: ClassLike = (),
    max_clones: int = 100_000,
) -> HatResult:
    """Replace each edge e by capacity-of-e parallel clones.

    Unit-capacity edges keep their id, so an all-ones capacity returns a
    digraph identical to the input.  Each mapped dicut keeps its in-shore
    and has exactly its original capacity many edges.
    """
    cap = capacity_of(d, capacity)
    total = sum(cap[eid] for eid in d.edge_ids)
    if total > max_clones:
        raise CapExceeded(f"{total} clones exceed the cap of {max_clones}")
    edge_map, parent = _clone_names(d, cap)
    edges = []
    for eid in d.edge_ids:
        tail, head = d.endpoints(eid)
        for c in edge_map[eid]:
            edges.append((c, tail, head))
    hat = Digraph(d.vertices, edges)
    class_map: Dict[Dicut, Dicut] = {}
    for b in resolve_class(d, cls, cap):
        image = Dicut(hat, b.in_shore)
        if len(image.edge_ids) != cap.total(b.edge_ids):
            raise AssertionError("clone count of a mapped dicut is off (internal bug)")
        class_map[b] = image
    return HatResult(hat, edge_map, parent, class_map)


@dataclass(frozen=True)
class TildeResult:
    """Subset-apex construction: digraph, its 0/1 capacity, and the class image."""

    digraph: Digraph
    capacity: Capacity
    subset_vertex: Dict[FrozenSet[VertexId], VertexId]
    class_map: Dict[Dicut, Dicut]


def tilde_transform(d: Digraph, cls: ClassLike = (), max_vertices: int = 16) -> TildeResult:
    """Add an apex vertex v_S with capacity-0 edges into S, for every subset S.

    Original edges get capacity 1.  A dicut with in-shore Y maps to the set
    of edges entering Y together with all v_S with S inside Y; that image is
    a dibond of the new digraph and its capacity equals the size of the
    original dicut.
    """
    n = d.num_vertices()
    if n > max_vertices:
        raise TooManyVertices(f"{n} vertices would create 2^{n} apex vertices")
    base = sorted(d.vertices, key=sort_key)
    prefix = "S"
    existing_names = {str(v) for v in d.vertices}
    while True:
        subset_vertex = {}
        for mask in range(1 << n):
            members = frozenset(base[i] for i in range(n) if mask >> i & 1)
            name = prefix + "".join(f"_{v}" for v in sorted(members, key=sort_key))
            subset_vertex[members] = name
        names = set(subset_vertex.values())
        if len(names) == len(subset_vertex) and not (names & existing_names):
            break
        prefix += "S"
    edges = [(eid, *d.endpoints(eid)) for eid in d.edge_ids]
    caps: Dict[EdgeId, int] = {eid: 1 for eid in d.edge_ids}
    existing_edges = {str(e) for e in d.edge_ids}
    for members, name in sorted(subset_vertex.items(), key=lambda kv: kv[1]):
        for v in sorted(members, key=sort_key):
            eid = f"{name}>{v}"
            while eid in existing_edges:
                eid = "_" + eid
            existing_edges.add(eid)
            edges.append((eid, name, v))
            caps[eid] = 0
    tilde = Digraph(set(d.vertices) | set(subset_vertex.values()), edges)
    capacity = Capacity(caps)
    class_map: Dict[Dicut, Dicut] = {}
    for b in resolve_class(d, cls):
        shore = set(b.in_shore)
        for members, name in subset_vertex.items():
            if members <= b.in_shore:
                shore.add(name)
        image = Dicut(tilde, shore)
        if capacity.total(image.edge_ids) != b.size():
            raise AssertionError("capacity of a mapped dibond is off (internal bug)")
        class_map[b] = image
    return TildeResult(tilde, capacity, subset_vertex, class_map)


@dataclass(frozen=True)
class EquivalenceReport:
    """Oracle verdicts on an instance and on its hat and tilde transforms."""

    direct: "WoodallReport"
    hat: "WoodallReport"
    tilde: Optional["WoodallReport"]

    @property
    def agree(self) -> bool:
        reports = [self.direct, self.hat]
        if self.tilde is not None:
            reports.append(self.tilde)
        return (
            len({r.min_size for r in reports}) == 1
            and len({r.max_packing for r in reports}) == 1
        )

    def as_json(self) -> dict:
        return {
            "direct": self.direct.as_json(),
            "hat": self.hat.as_json(),
            "tilde": self.tilde.as_json() if self.tilde is not None else None,
            "agree": self.agree,
        }


def capacitated_equivalence_check(
    d: Digraph,
    capacity: Optional[Capacity],
    cls: ClassLike,
    tilde_vertex_cap: int = 10,
    max_positive_edges: int = 14,
) -> EquivalenceReport:
    """Run the oracle directly, on the hat instance, and on the tilde of the hat.

    The three verdicts must agree: capacities and sizes correspond exactly
    under both constructions.  The tilde leg is skipped when the hat digraph
    has more than ``tilde_vertex_cap`` vertices.
    """
    from .oracle import max_disjoint_dijoins

    cap = capacity_of(d, capacity)
    resolved = resolve_class(d, cls, cap)
    direct = max_disjoint_dijoins(d, resolved, cap, max_positive_edges=max_positive_edges)
    hat = hat_transform(d, cap, resolved)
    hat_cls = [hat.class_map[b] for b in resolved]
    # the hat instance has one positive edge per clone, so its edge budget
    # is the clone count; the direct cap already vetted the instance
    clone_budget = max(max_positive_edges, hat.digraph.num_edges())
    hat_report = max_disjoint_dijoins(
        hat.digraph, hat_cls, None, max_positive_edges=clone_budget
    )
    tilde_report = None
    if hat.digraph.num_vertices() <= tilde_vertex_cap and all(
        not b.is_empty() for b in hat_cls
    ):
        tilde = tilde_transform(hat.digraph, hat_cls)
        tilde_cls = [tilde.class_map[b] for b in hat_cls]
        tilde_report = max_disjoint_dijoins(
            tilde.digraph,
            tilde_cls,
            tilde.capacity,
            max_positive_edges=clone_budget,
        )
    return EquivalenceReport(direct, hat_report, tilde_report)
