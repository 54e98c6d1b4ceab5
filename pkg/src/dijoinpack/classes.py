"""Dicut classes: nestedness, corners, closure, minimum class, classification.

Two bipartitions are nested when one side of the first contains or is
contained in one side of the second; equivalently one of their four
pairwise side intersections is empty.  Two dicuts are nested when *some*
choice of representations is nested, which in a weakly disconnected digraph
may require moving untouched components between sides, so the nestedness
helpers enumerate those choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .digraph import Bipartition, Capacity, Digraph, capacity_of
from .dicuts import Dicut, enumerate_dibonds, enumerate_dicuts
from .errors import (
    EmptyClass,
    EmptyCorner,
    MismatchedVertexSets,
    NoDicut,
    NotADicut,
    TooLarge,
)

CLASS_TAGS = ("all", "dibonds", "min", "atomic", "source_sink")


@dataclass(frozen=True)
class DicutClass:
    """Either an explicit tuple of dicuts or a symbolic tag to resolve later."""

    tag: Optional[str] = None
    dicuts: Optional[Tuple[Dicut, ...]] = None

    def __post_init__(self):
        if (self.tag is None) == (self.dicuts is None):
            raise ValueError("exactly one of tag / dicuts must be given")
        if self.tag is not None and self.tag not in CLASS_TAGS:
            raise ValueError(f"unknown class tag {self.tag!r}")

    @classmethod
    def explicit(cls, dicuts: Iterable[Dicut]) -> "DicutClass":
        return cls(dicuts=tuple(dicuts))

    @classmethod
    def symbolic(cls, tag: str) -> "DicutClass":
        return cls(tag=tag)

    def resolve(self, d: Digraph, capacity: Optional[Capacity] = None) -> Tuple[Dicut, ...]:
        if self.dicuts is not None:
            for b in self.dicuts:
                if b.digraph != d:
                    raise ValueError("class dicut belongs to a different digraph")
                if b.is_empty():
                    raise EmptyClass("classes may only contain non-empty dicuts")
            return self.dicuts
        if self.tag == "all":
            return tuple(enumerate_dicuts(d))
        if self.tag == "dibonds":
            return tuple(enumerate_dibonds(d))
        if self.tag == "min":
            return min_dicut_class(d, capacity).dicuts
        if self.tag == "atomic":
            return tuple(b for b in enumerate_dicuts(d) if classify_dicut(d, b).atomic)
        if self.tag == "source_sink":
            return tuple(
                b for b in enumerate_dicuts(d) if classify_dicut(d, b).source_sink
            )
        raise AssertionError(self.tag)


ClassLike = Union[DicutClass, Sequence[Dicut], str]


def resolve_class(
    d: Digraph, cls: ClassLike, capacity: Optional[Capacity] = None
) -> Tuple[Dicut, ...]:
    """Normalise a class given as DicutClass, tag string, or dicut sequence."""
    if isinstance(cls, DicutClass):
        return cls.resolve(d, capacity)
    if isinstance(cls, str):
        return DicutClass.symbolic(cls).resolve(d, capacity)
    return DicutClass.explicit(cls).resolve(d, capacity)


# -- nestedness ---------------------------------------------------------------


def is_nested_pair(b1: Bipartition, b2: Bipartition) -> bool:
    """True iff some orientation of b1 is comparable with one of b2.

    In the bipartition order (X,Y) <= (X',Y') iff X is contained in X' and
    Y contains Y'; on a common vertex set that reduces to one of the four
    side intersections being empty.
    """
    if b1.vertex_set != b2.vertex_set:
        raise MismatchedVertexSets("bipartitions of different vertex sets")
    return (
        not (b1.x & b2.x)
        or not (b1.x & b2.y)
        or not (b1.y & b2.x)
        or not (b1.y & b2.y)
    )


def are_nested_dicuts(b1: Dicut, b2: Dicut) -> bool:
    """True iff some representations of the two dicuts are nested."""
    for r1 in b1.representations():
        for r2 in b2.representations():
            if is_nested_pair(r1, r2):
                return True
    return False


def are_crossing(b1: Dicut, b2: Dicut) -> bool:
    return not are_nested_dicuts(b1, b2)


@dataclass
class NestedRepresentation:
    """One bipartition per class dicut, pairwise nested."""

    by_dicut: Dict[Dicut, Bipartition]

    def is_nested(self) -> bool:
        reps = list(self.by_dicut.values())
        return all(
            is_nested_pair(reps[i], reps[j])
            for i in range(len(reps))
            for j in range(i + 1, len(reps))
        )


def find_nested_representation(
    d: Digraph, cls: ClassLike, max_nodes: int = 2 ** 20
) -> Optional[NestedRepresentation]:
    """A pairwise nested set of representations for the class, or None.

    In a weakly connected digraph each dicut has a single representation, so
    this is just the pairwise test; otherwise a backtracking search assigns
    the untouched components of each dicut to a side.
    """
    resolved = resolve_class(d, cls)
    options = [b.representations() for b in resolved]
    chosen: List[Bipartition] = []
    nodes = 0

    def search(i: int) -> bool:
        nonlocal nodes
        if i == len(resolved):
            return True
        for rep in options[i]:
            nodes += 1
            if nodes > max_nodes:
                raise TooLarge("nested-representation search exceeded its cap")
            if all(is_nested_pair(rep, prev) for prev in chosen):
                chosen.append(rep)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    if not search(0):
        return None
    return NestedRepresentation(dict(zip(resolved, chosen)))


# -- corners ------------------------------------------------------------------


def _corner(b1: Dicut, b2: Dicut, shore: FrozenSet) -> Dicut:
    if b1.digraph != b2.digraph:
        raise ValueError("dicuts of different digraphs")
    if b1.is_empty() or b2.is_empty():
        raise ValueError("corners need non-empty dicuts")
    if not shore or shore == b1.digraph.vertices:
        raise EmptyCorner("corner shore is trivial; inputs were nested")
    try:
        return Dicut(b1.digraph, shore)
    except NotADicut as exc:  # unions/intersections of out-closed sets are out-closed
        raise AssertionError(f"corner shore not out-closed: {exc}") from exc


def meet(b1: Dicut, b2: Dicut) -> Dicut:
    """The dicut into in-shore(b1) & in-shore(b2)."""
    return _corner(b1, b2, b1.in_shore & b2.in_shore)


def join(b1: Dicut, b2: Dicut) -> Dicut:
    """The dicut into in-shore(b1) | in-shore(b2)."""
    return _corner(b1, b2, b1.in_shore | b2.in_shore)


def is_corner_closed(cls: Sequence[Dicut], max_pairs: int = 2 ** 20) -> bool:
    """Meet and join of every crossing pair are themselves class members."""
    members = set(cls)
    items = list(cls)
    if len(items) * len(items) > max_pairs:
        raise TooLarge("too many pairs for the corner-closure check")
    for i, b1 in enumerate(items):
        for b2 in items[i + 1 :]:
            if are_nested_dicuts(b1, b2):
                continue
            if meet(b1, b2) not in members or join(b1, b2) not in members:
                return False
    return True


def corner_closure(cls: Sequence[Dicut], max_size: int = 2 ** 16) -> Tuple[Dicut, ...]:
    """The smallest corner-closed superclass; terminates since dicuts are finite."""
    members = set(cls)
    fresh = list(cls)
    while fresh:
        additions = []
        items = sorted(members, key=Dicut.sort_token)
        for i, b1 in enumerate(items):
            for b2 in items[i + 1 :]:
                if are_nested_dicuts(b1, b2):
                    continue
                for corner in (meet(b1, b2), join(b1, b2)):
                    if corner not in members:
                        members.add(corner)
                        additions.append(corner)
                        if len(members) > max_size:
                            raise TooLarge("corner closure exceeded its size cap")
        fresh = additions
    return tuple(sorted(members, key=Dicut.sort_token))


# -- the minimum class ----------------------------------------------------------


def min_dicut_class(d: Digraph, capacity: Optional[Capacity] = None) -> DicutClass:
    """All dicuts of minimum capacity (minimum size under unit capacity).

    The result is corner-closed: the capacities of a crossing pair and of
    its two corners sum to the same value, so corners of minimum-capacity
    dicuts are again of minimum capacity.
    """
    cap = capacity_of(d, capacity)
    dicuts = enumerate_dicuts(d)
    if not dicuts:
        raise NoDicut("the digraph has no non-empty dicut")
    best = min(cap.total(b.edge_ids) for b in dicuts)
    return DicutClass.explicit(b for b in dicuts if cap.total(b.edge_ids) == best)


# -- classification -------------------------------------------------------------


@dataclass(frozen=True)
class DicutFlags:
    atomic: bool
    source_sided: bool
    sink_sided: bool

    @property
    def source_sink(self) -> bool:
        return self.source_sided or self.sink_sided


def classify_dicut(d: Digraph, b: Dicut) -> DicutFlags:
    """Atomic / source-sided / sink-sided flags of a dicut.

    Atomic means some representation has a singleton side, i.e. the cut is
    exactly the edge set at one vertex (a source or a sink of the cut); an
    untouched component pushed next to a singleton does not count.
    Source-sided means the in-shore contains no source component of d,
    sink-sided that the out-shore contains no sink component.  (The
    infinite-digraph versions of these notions also exclude rays; finite
    digraphs have none, so only the component clauses apply.)
    """
    if b.digraph != d:
        raise ValueError("dicut belongs to a different digraph")
    atomic = not b.is_empty() and any(
        frozenset(d.incident_edges(v)) == b.edge_ids for v in d.vertices
    )
    sccs = d.strong_components()
    comp_of = {v: i for i, comp in enumerate(sccs) for v in comp}
    has_external_in = [False] * len(sccs)
    has_external_out = [False] * len(sccs)
    for eid in d.edge_ids:
        a, c = comp_of[d.tail(eid)], comp_of[d.head(eid)]
        if a != c:
            has_external_out[a] = True
            has_external_in[c] = True
    source_comps = [sccs[i] for i in range(len(sccs)) if not has_external_in[i]]
    sink_comps = [sccs[i] for i in range(len(sccs)) if not has_external_out[i]]
    source_sided = not any(comp <= b.in_shore for comp in source_comps)
    sink_sided = not any(comp <= b.out_shore for comp in sink_comps)
    return DicutFlags(atomic, source_sided, sink_sided)
