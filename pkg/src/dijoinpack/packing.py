"""Constructive dijoin packings and their verification.

Three routes, all returning a ``Packing`` whose dijoins are pairwise
disjoint and whose count equals the minimum class dicut size:

* ``pack_nested`` — nested classes, through the balanced dicut hypergraph;
* ``pack_corner_closed_uniform`` — corner-closed classes of uniform size m,
  by recursion on the number of non-atomic class dicuts: contract the two
  shores of a non-atomic dicut B in turn, pack both quotients, and glue the
  two packings along the m edges of B;
* ``pack_min`` — the minimum-capacity class, which is corner-closed and
  uniform, going through the parallel-edge expansion when capacities are
  not all 1.

Every packing is verified internally before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .digraph import Capacity, Digraph, EdgeId, capacity_of, sort_key
from .dicuts import Dicut
from .classes import (
    ClassLike,
    classify_dicut,
    find_nested_representation,
    is_corner_closed,
    min_dicut_class,
    resolve_class,
)
from .errors import (
    DijoinError,
    EmptyClass,
    NoDicut,
    NotCornerClosed,
    NotNested,
    NotUniform,
)
from .hypergraph import dicut_hypergraph, pack_transversals


@dataclass(frozen=True)
class Packing:
    """k pairwise disjoint dijoins for a class with minimum dicut size k."""

    dijoins: Tuple[FrozenSet[EdgeId], ...]
    cls: Tuple[Dicut, ...]
    k: int

    def as_json(self) -> dict:
        return {
            "k": self.k,
            "dijoins": [sorted(f, key=sort_key) for f in self.dijoins],
            "class_size": len(self.cls),
        }


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_packing(
    d: Digraph,
    cls: ClassLike,
    p: Packing,
    capacity: Optional[Capacity] = None,
) -> VerificationResult:
    """Check count, (c-)disjointness and coverage; report the first violation."""
    cap = capacity_of(d, capacity)
    resolved = resolve_class(d, cls, capacity)
    if not resolved:
        return VerificationResult(False, "empty class")
    minimum = min(cap.total(b.edge_ids) for b in resolved)
    if len(p.dijoins) != p.k:
        return VerificationResult(
            False, f"declared k={p.k} but {len(p.dijoins)} dijoins present"
        )
    if p.k != minimum:
        return VerificationResult(
            False, f"k={p.k} does not equal the minimum class capacity {minimum}"
        )
    usage: Dict[EdgeId, int] = {}
    for dijoin in p.dijoins:
        for eid in dijoin:
            if eid not in d:
                return VerificationResult(False, f"unknown edge {eid!r} in a dijoin")
            usage[eid] = usage.get(eid, 0) + 1
    for eid in sorted(usage, key=sort_key):
        if usage[eid] > cap[eid]:
            return VerificationResult(
                False,
                f"edge {eid!r} used in {usage[eid]} dijoins but capacity is {cap[eid]}",
            )
    for i, dijoin in enumerate(p.dijoins):
        for b in resolved:
            if not (dijoin & b.edge_ids):
                shore = ",".join(str(v) for v in sorted(b.in_shore, key=sort_key))
                return VerificationResult(
                    False, f"dijoin {i} misses the dicut with in-shore {{{shore}}}"
                )
    return VerificationResult(True)


def trim_dijoins(
    targets: Sequence[FrozenSet[EdgeId]], dijoins: Sequence[FrozenSet[EdgeId]]
) -> Tuple[FrozenSet[EdgeId], ...]:
    """Shrink each dijoin to an inclusion-minimal subset still meeting each target.

    Colour classes partition the whole edge set; dropping the edges no class
    dicut needs gives the tidy witnesses (a single dicut of size m packs
    into its m singletons, for instance) without affecting disjointness.
    """
    trimmed = []
    for dijoin in dijoins:
        kept = set(dijoin)
        for eid in sorted(dijoin, key=sort_key):
            smaller = kept - {eid}
            if all(smaller & t for t in targets):
                kept = smaller
        trimmed.append(frozenset(kept))
    return tuple(trimmed)


def _checked(d: Digraph, resolved: Tuple[Dicut, ...], dijoins, k, capacity=None) -> Packing:
    targets = [b.edge_ids for b in resolved]
    p = Packing(trim_dijoins(targets, tuple(dijoins)), resolved, k)
    result = verify_packing(d, resolved, p, capacity)
    if not result:
        raise AssertionError(f"constructed packing failed verification: {result.violation}")
    return p


def pack_nested(d: Digraph, cls: ClassLike) -> Packing:
    """Pack a nested class through its balanced dicut hypergraph."""
    resolved = resolve_class(d, cls)
    if not resolved:
        raise EmptyClass("cannot pack an empty class")
    if find_nested_representation(d, resolved) is None:
        raise NotNested("the class has no nested representation")
    hypergraph = dicut_hypergraph(d, resolved)
    transversals = pack_transversals(hypergraph)
    k = hypergraph.min_hyperedge_size()
    return _checked(d, resolved, transversals, k)


# -- corner-closed uniform classes ---------------------------------------------


def _project_to_contraction(
    b: Dicut, identified: FrozenSet, contracted: Digraph, projection: Dict
) -> Optional[Dicut]:
    """The dicut b as a dicut of the contraction, or None if it is not one.

    ``identified`` is the vertex set that was merged to a single vertex.  b
    survives iff some representation of b keeps ``identified`` on one side;
    the stored in-shore is adjusted by moving whole untouched components
    when that is what it takes.
    """
    d = b.digraph
    free: Set = set()
    for comp in d.weak_components():
        if not any(d.head(eid) in comp for eid in b.edge_ids):
            free |= comp
    forced_in = b.in_shore - free
    forced_out = (d.vertices - b.in_shore) - free
    if not (identified & forced_out):
        # a representation with `identified` inside the in-shore
        moved = set(b.in_shore)
        for comp in d.weak_components():
            if comp <= free and comp & identified:
                moved |= comp
        shore = moved
    elif not (identified & forced_in):
        shore = set(b.in_shore)
        for comp in d.weak_components():
            if comp <= free and comp & identified:
                shore -= comp
    else:
        return None
    image = {projection[v] for v in shore}
    if not image or image == set(contracted.vertices):
        return None
    candidate = Dicut(contracted, image)
    if candidate.edge_ids != b.edge_ids:
        raise AssertionError("contraction changed a surviving dicut's edge set")
    return candidate


def _count_non_atomic(d: Digraph, cls: Sequence[Dicut]) -> int:
    return sum(1 for b in cls if not classify_dicut(d, b).atomic)


def pack_corner_closed_uniform(d: Digraph, cls: ClassLike, m: int) -> Packing:
    """Pack a corner-closed class whose dicuts all have exactly m edges.

    Recursion on the number of non-atomic class dicuts.  Base: an all-atomic
    class is nested, so the hypergraph route applies.  Step: pick the
    non-atomic dicut B with lexicographically smallest in-shore, contract
    its in-shore (D1) and its out-shore (D2), recurse on the class members
    surviving in each, and return the unions F1[i_e] | F2[j_e] over the m
    edges e of B, where i_e, j_e are the unique dijoins containing e.
    """
    resolved = resolve_class(d, cls)
    if not resolved:
        raise EmptyClass("cannot pack an empty class")
    if m <= 0:
        raise ValueError("m must be a positive integer")
    wrong = [b for b in resolved if b.size() != m]
    if wrong:
        raise NotUniform(f"{len(wrong)} class dicuts do not have size {m}")
    if not is_corner_closed(resolved):
        raise NotCornerClosed("class is not corner-closed")
    return _pack_ccu(d, resolved, m)


def _pack_ccu(d: Digraph, resolved: Tuple[Dicut, ...], m: int) -> Packing:
    non_atomic = sorted(
        (b for b in resolved if not classify_dicut(d, b).atomic), key=Dicut.sort_token
    )
    if not non_atomic:
        return pack_nested(d, resolved)
    b = non_atomic[0]
    total_non_atomic = len(non_atomic)

    packings: List[Packing] = []
    for identified in (b.in_shore, b.out_shore):
        contracted, projection = d.identify([identified])
        members = []
        for other in resolved:
            image = _project_to_contraction(other, identified, contracted, projection)
            if image is not None:
                members.append(image)
        members = tuple(dict.fromkeys(members))
        if _count_non_atomic(contracted, members) >= total_non_atomic:
            raise AssertionError("non-atomic count did not decrease (internal bug)")
        if not is_corner_closed(members):
            raise NotCornerClosed(
                "class stopped being corner-closed under contraction"
            )
        packings.append(_pack_ccu(contracted, members, m))

    pack1, pack2 = packings
    combined = []
    for eid in sorted(b.edge_ids, key=sort_key):
        hosts1 = [f for f in pack1.dijoins if eid in f]
        hosts2 = [f for f in pack2.dijoins if eid in f]
        if len(hosts1) != 1 or len(hosts2) != 1:
            raise DijoinError(
                f"edge {eid!r} not in exactly one dijoin per side (class-validation bug)"
            )
        combined.append(hosts1[0] | hosts2[0])
    for other in resolved:  # every class dicut must see all m colours
        assert all(f & other.edge_ids for f in combined), "packing not colourful"
    return _checked(d, resolved, combined, m)


def pack_min(d: Digraph, capacity: Optional[Capacity] = None) -> Packing:
    """Pack the class of minimum-capacity dicuts; k = that minimum.

    A minimum of 0 (some class dicut has only capacity-0 edges) gives the
    empty packing with k = 0 rather than an error.  With capacities other
    than all-1 the packing happens in the parallel-edge expansion and the
    dijoins are pulled back as traces, which makes them c-disjoint.
    """
    from .capacity import hat_transform  # local import to avoid a cycle

    cap = capacity_of(d, capacity)
    cls = min_dicut_class(d, cap)
    resolved = cls.dicuts
    k = min(cap.total(b.edge_ids) for b in resolved)
    if k == 0:
        return Packing((), resolved, 0)
    if cap.is_unit(d):
        return pack_corner_closed_uniform(d, resolved, k)
    hat = hat_transform(d, cap, resolved)
    hat_packing = pack_corner_closed_uniform(
        hat.digraph, tuple(hat.class_map.values()), k
    )
    traces = tuple(hat.trace(f) for f in hat_packing.dijoins)
    return _checked(d, resolved, traces, k, cap)
