"""Brute-force min-max oracle certifying the constructive packings.

``max_disjoint_dijoins`` exhaustively determines the largest number of
(capacity-)disjoint dijoins for a class by backtracking over slot
assignments of the (clone-expanded) edges, testing k = minimum class
capacity downward.  Symmetry between slots is broken by only opening slot
i+1 after slot i, so the returned witness is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .digraph import Capacity, Digraph, EdgeId, capacity_of, sort_key
from .dicuts import Dicut
from .classes import ClassLike, DicutClass, find_nested_representation, resolve_class
from .errors import CapExceeded, EmptyClass, OracleMismatch, TooLarge
from .hypergraph import Hypergraph
from .packing import trim_dijoins

DEFAULT_EDGE_CAP = 14
MAX_ORACLE_ELEMENTS = 400  # keeps the slot search depth well under Python's limit


@dataclass(frozen=True)
class WoodallReport:
    """Minimum class capacity versus maximum number of disjoint dijoins."""

    min_size: int
    max_packing: int
    witness: Tuple[FrozenSet[EdgeId], ...]

    @property
    def woodall(self) -> bool:
        return self.min_size == self.max_packing

    def __post_init__(self):
        if self.max_packing > self.min_size:
            raise AssertionError("more disjoint dijoins than a cheapest dicut allows")

    def as_json(self) -> dict:
        return {
            "min_size": self.min_size,
            "max_packing": self.max_packing,
            "woodall": self.woodall,
            "witness": [sorted(f, key=sort_key) for f in self.witness],
        }


def _pack_slots(
    n_elements: int,
    hyperedges: List[List[int]],
    k: int,
) -> Optional[List[int]]:
    """Assign each element a slot in 0..k (0 = unused) so that every
    hyperedge contains all of 1..k; returns the assignment or None.
    """
    member_of: List[List[int]] = [[] for _ in range(n_elements)]
    remaining = []
    for hi, h in enumerate(hyperedges):
        for x in h:
            member_of[x].append(hi)
        remaining.append(len(h))
    masks = [0] * len(hyperedges)
    full = (1 << (k + 1)) - 2  # bits 1..k
    slots = [0] * n_elements

    def colours_missing(hi: int) -> int:
        return k - bin(masks[hi] & full).count("1")

    for hi in range(len(hyperedges)):
        if colours_missing(hi) > remaining[hi]:
            return None

    def assign(x: int, used_max: int) -> bool:
        if x == n_elements:
            return all(masks[hi] & full == full for hi in range(len(hyperedges)))
        for slot in list(range(1, min(used_max + 1, k) + 1)) + [0]:
            slots[x] = slot
            bit = 1 << slot if slot else 0
            changed = []
            ok = True
            for hi in member_of[x]:
                remaining[hi] -= 1
                before = masks[hi]
                masks[hi] |= bit
                changed.append((hi, before))
                if colours_missing(hi) > remaining[hi]:
                    ok = False
            if ok and assign(x + 1, max(used_max, slot)):
                return True
            for hi, before in reversed(changed):
                masks[hi] = before
                remaining[hi] += 1
        slots[x] = 0
        return False

    return slots if assign(0, 0) else None


def max_disjoint_transversals(
    h: Hypergraph, max_elements: int = DEFAULT_EDGE_CAP
) -> Tuple[int, Tuple[FrozenSet, ...]]:
    """The largest number of pairwise disjoint transversals, exhaustively."""
    if len(h.ground) > max_elements:
        raise CapExceeded(f"ground set larger than {max_elements}")
    elements = sorted(h.ground, key=sort_key)
    index = {x: i for i, x in enumerate(elements)}
    hyperedges = [sorted(index[x] for x in edge) for edge in h.hyperedges]
    top = h.min_hyperedge_size()
    for k in range(top, 0, -1):
        slots = _pack_slots(len(elements), hyperedges, k)
        if slots is not None:
            witness = tuple(
                frozenset(elements[i] for i in range(len(elements)) if slots[i] == s)
                for s in range(1, k + 1)
            )
            return k, trim_dijoins(h.hyperedges, witness)
    return 0, ()


def _lenient_resolve(
    d: Digraph, cls: ClassLike, capacity: Optional[Capacity]
) -> Tuple[Dicut, ...]:
    """Resolve a class but tolerate empty dicuts in explicit sequences.

    Capacity-0 class members hat-map to empty dicuts; the oracle degenerates
    gracefully on them (minimum 0, maximum 0) instead of rejecting.
    """
    if isinstance(cls, (DicutClass, str)):
        return resolve_class(d, cls, capacity)
    resolved = tuple(cls)
    for b in resolved:
        if b.digraph != d:
            raise ValueError("class dicut belongs to a different digraph")
    return resolved


def max_disjoint_dijoins(
    d: Digraph,
    cls: ClassLike,
    capacity: Optional[Capacity] = None,
    max_positive_edges: int = DEFAULT_EDGE_CAP,
) -> WoodallReport:
    """Exhaustive maximum number of (c-)disjoint dijoins for the class.

    Each edge of positive capacity is expanded into at most k clones; an
    assignment of clones to k dijoin slots in which every class hyperedge
    sees every slot is a packing certificate.
    """
    cap = capacity_of(d, capacity)
    resolved = _lenient_resolve(d, cls, cap)
    if not resolved:
        raise EmptyClass("the oracle needs a non-empty class")
    minimum = min(cap.total(b.edge_ids) for b in resolved)
    positive = [eid for eid in d.edge_ids if cap[eid] > 0]
    if len(positive) > max_positive_edges:
        raise CapExceeded(
            f"{len(positive)} positive-capacity edges exceed the cap of {max_positive_edges}"
        )
    worst_clones = sum(min(cap[eid], minimum) for eid in positive)
    if worst_clones > MAX_ORACLE_ELEMENTS:
        raise CapExceeded(
            f"{worst_clones} capacity clones exceed the cap of {MAX_ORACLE_ELEMENTS}"
        )
    for k in range(minimum, 0, -1):
        elements: List[Tuple[EdgeId, int]] = []
        index: Dict[Tuple[EdgeId, int], int] = {}
        for eid in positive:
            for i in range(min(cap[eid], k)):
                index[(eid, i)] = len(elements)
                elements.append((eid, i))
        hyperedges = []
        empty_hyperedge = False
        for b in resolved:
            members = [
                index[(eid, i)]
                for eid in sorted(b.edge_ids, key=sort_key)
                if cap[eid] > 0
                for i in range(min(cap[eid], k))
            ]
            if not members:
                empty_hyperedge = True
                break
            hyperedges.append(sorted(members))
        if empty_hyperedge:
            break
        slots = _pack_slots(len(elements), hyperedges, k)
        if slots is not None:
            witness = tuple(
                frozenset(
                    elements[i][0] for i in range(len(elements)) if slots[i] == s
                )
                for s in range(1, k + 1)
            )
            witness = trim_dijoins([b.edge_ids for b in resolved], witness)
            return WoodallReport(minimum, k, witness)
    return WoodallReport(minimum, 0, ())


def check_woodall(
    d: Digraph,
    cls: ClassLike,
    capacity: Optional[Capacity] = None,
    max_positive_edges: int = DEFAULT_EDGE_CAP,
) -> WoodallReport:
    """Oracle verdict, cross-checked against the constructive packers.

    For the minimum class the count from ``pack_min`` must match the oracle
    maximum; for any other nested class (under unit capacity) the count from
    ``pack_nested`` must.  A mismatch raises OracleMismatch: it would mean a
    bug, not an interesting instance.
    """
    from .packing import pack_min, pack_nested

    cap = capacity_of(d, capacity)
    report = max_disjoint_dijoins(d, cls, cap, max_positive_edges)
    tag = cls.tag if isinstance(cls, DicutClass) else (cls if isinstance(cls, str) else None)
    if tag == "min":
        constructive = pack_min(d, cap).k
        if constructive != report.max_packing:
            raise OracleMismatch(
                f"pack_min built {constructive} dijoins, oracle found {report.max_packing}"
            )
    elif cap.is_unit(d):
        resolved = _lenient_resolve(d, cls, cap)
        if all(not b.is_empty() for b in resolved):
            try:
                nested = find_nested_representation(d, resolved)
            except TooLarge:
                nested = None
            if nested is not None:
                constructive = pack_nested(d, resolved).k
                if constructive != report.max_packing:
                    raise OracleMismatch(
                        f"pack_nested built {constructive} dijoins, "
                        f"oracle found {report.max_packing}"
                    )
    return report
