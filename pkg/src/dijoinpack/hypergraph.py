"""Balanced hypergraphs: Berge cycles, 2-colourings, transversal packing.

The dicut hypergraph of a digraph and a class of dicuts has the edges of the
digraph as ground set and the class edge sets as hyperedges; a transversal
is then exactly a dijoin for the class.  Balancedness (every odd Berge-cycle
is improper) guarantees that the minimum hyperedge size many pairwise
disjoint transversals exist, and ``pack_transversals`` constructs them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .digraph import sort_key
from .dicuts import Dicut
from .errors import EmptyClass, NotTwoColourable, TooLarge

Element = Hashable


class Hypergraph:
    """A finite hypergraph: ground set plus a set of non-empty hyperedges.

    Hyperedges are deduplicated and kept in a deterministic order.
    """

    __slots__ = ("ground", "hyperedges")

    def __init__(self, ground: Iterable[Element], hyperedges: Iterable[Iterable[Element]]):
        self.ground: FrozenSet[Element] = frozenset(ground)
        seen = set()
        edges = []
        for h in hyperedges:
            hs = frozenset(h)
            if not hs:
                raise ValueError("empty hyperedge")
            if not hs <= self.ground:
                raise ValueError("hyperedge not contained in ground set")
            if hs not in seen:
                seen.add(hs)
                edges.append(hs)
        edges.sort(key=lambda h: tuple(sorted(sort_key(x) for x in h)))
        self.hyperedges: Tuple[FrozenSet[Element], ...] = tuple(edges)

    def min_hyperedge_size(self) -> int:
        if not self.hyperedges:
            raise EmptyClass("hypergraph has no hyperedges")
        return min(len(h) for h in self.hyperedges)

    def induced(self, y: Iterable[Element]) -> "Hypergraph":
        """The subhypergraph induced on ``y``: traces ``h & y`` of hyperedges."""
        ys = frozenset(y)
        return Hypergraph(ys & self.ground, (h & ys for h in self.hyperedges if h & ys))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.ground == other.ground and set(self.hyperedges) == set(other.hyperedges)

    def __repr__(self) -> str:
        return f"Hypergraph({len(self.ground)} elements, {len(self.hyperedges)} hyperedges)"


def parse_hypergraph(text: str) -> Hypergraph:
    """One hyperedge per line, comma-separated element ids."""
    edges = []
    elements: Set[str] = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        h = [tok.strip() for tok in line.split(",") if tok.strip()]
        edges.append(h)
        elements.update(h)
    return Hypergraph(elements, edges)


@dataclass(frozen=True)
class BergeCycle:
    """An alternating cycle x1, h1, x2, ..., xn, hn, x1 with distinct xs, hs."""

    elements: Tuple[Element, ...]
    hyperedges: Tuple[FrozenSet[Element], ...]

    def __post_init__(self):
        n = len(self.elements)
        if n < 2 or len(self.hyperedges) != n:
            raise ValueError("Berge cycle needs n >= 2 elements and as many hyperedges")
        if len(set(self.elements)) != n or len(set(self.hyperedges)) != n:
            raise ValueError("Berge cycle elements and hyperedges must be distinct")
        for i in range(n):
            if self.elements[i] not in self.hyperedges[i]:
                raise ValueError("element x_i must lie in h_i")
            if self.elements[(i + 1) % n] not in self.hyperedges[i]:
                raise ValueError("element x_{i+1} must lie in h_i")

    @property
    def length(self) -> int:
        return len(self.elements)

    def is_odd(self) -> bool:
        return self.length % 2 == 1

    def is_improper(self) -> bool:
        """True if some h_i contains an x_j other than x_i, x_{i+1}."""
        n = self.length
        for i, h in enumerate(self.hyperedges):
            allowed = {self.elements[i], self.elements[(i + 1) % n]}
            if any(x in h for x in self.elements if x not in allowed):
                return True
        return False


@dataclass
class Colouring:
    """A map of the ground set into colours 1..k."""

    assignment: Dict[Element, int]
    k: int

    def colours_on(self, h: Iterable[Element]) -> Set[int]:
        return {self.assignment[x] for x in h}

    def colour_class(self, colour: int) -> FrozenSet[Element]:
        return frozenset(x for x, c in self.assignment.items() if c == colour)

    def is_valid_for(self, h: Hypergraph) -> bool:
        """No hyperedge of size >= 2 is monochromatic."""
        if set(self.assignment) != set(h.ground):
            return False
        if any(c < 1 or c > self.k for c in self.assignment.values()):
            return False
        return all(len(self.colours_on(e)) > 1 for e in h.hyperedges if len(e) > 1)


@dataclass(frozen=True)
class TwoColourFailure:
    """Witness that a 2-colouring attempt failed.

    ``kind`` is ``"odd_cycle"`` (an odd cycle among size-2 constraints of
    some induced subhypergraph) or ``"unextendable"`` (a vertex whose
    neighbourhood came back polychromatic; defensive, not expected for any
    input).
    """

    kind: str
    elements: Tuple[Element, ...]
    hyperedges: Tuple[FrozenSet[Element], ...] = field(default=())


def dicut_hypergraph(d, cls: Sequence[Dicut]) -> Hypergraph:
    """Ground set E(d); one hyperedge per class dicut edge set."""
    if not cls:
        raise EmptyClass("dicut hypergraph needs a non-empty class")
    for b in cls:
        if b.digraph != d:
            raise ValueError("class dicut belongs to a different digraph")
        if b.is_empty():
            raise EmptyClass("class contains an empty dicut")
    return Hypergraph(d.edge_ids, (b.edge_ids for b in cls))


# -- balancedness -------------------------------------------------------------


def check_balanced_exhaustive(
    h: Hypergraph, max_ground: int = 16, max_hyperedges: int = 32
) -> Optional[BergeCycle]:
    """Search every odd Berge-cycle; return a proper one, or None if balanced.

    A proper odd Berge-cycle on element set S exists iff the graph whose
    edges are the traces ``e & S`` of size exactly 2 has a Hamilton cycle on
    S, so the search enumerates odd subsets and looks for Hamilton cycles.
    """
    if len(h.ground) > max_ground:
        raise TooLarge(f"ground set larger than {max_ground}")
    if len(h.hyperedges) > max_hyperedges:
        raise TooLarge(f"more than {max_hyperedges} hyperedges")
    elements = sorted(h.ground, key=sort_key)
    n = len(elements)
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size < 3 or size % 2 == 0:
            continue
        subset = [elements[i] for i in range(n) if mask >> i & 1]
        witness = _proper_cycle_on(h, subset)
        if witness is not None:
            return witness
    return None


def _proper_cycle_on(h: Hypergraph, subset: List[Element]) -> Optional[BergeCycle]:
    """A proper odd Berge-cycle whose element set is exactly ``subset``."""
    sset = frozenset(subset)
    link: Dict[Element, Dict[Element, FrozenSet[Element]]] = {x: {} for x in subset}
    for edge in h.hyperedges:
        trace = edge & sset
        if len(trace) == 2:
            u, v = sorted(trace, key=sort_key)
            # one representative hyperedge per pair suffices for a witness
            if v not in link[u]:
                link[u][v] = edge
                link[v][u] = edge
    if any(len(nbrs) < 2 for nbrs in link.values()):
        return None
    start = subset[0]
    path = [start]
    used: Set[Element] = {start}

    def search() -> Optional[List[Element]]:
        if len(path) == len(subset):
            return path + [start] if start in link[path[-1]] else None
        for nxt in sorted(link[path[-1]], key=sort_key):
            if nxt in used:
                continue
            used.add(nxt)
            path.append(nxt)
            found = search()
            if found is not None:
                return found
            path.pop()
            used.remove(nxt)
        return None

    cycle = search()
    if cycle is None:
        return None
    elems = tuple(cycle[:-1])
    hyperedges = tuple(link[cycle[i]][cycle[i + 1]] for i in range(len(elems)))
    witness = BergeCycle(elems, hyperedges)
    assert witness.is_odd() and not witness.is_improper()
    return witness


# -- 2-colouring --------------------------------------------------------------


def _size2_graph(hyperedges: Sequence[FrozenSet[Element]], ground: FrozenSet[Element]):
    adj: Dict[Element, Set[Element]] = {x: set() for x in ground}
    for h in hyperedges:
        if len(h) == 2:
            u, v = h
            adj[u].add(v)
            adj[v].add(u)
    return adj


def _odd_cycle(adj: Dict[Element, Set[Element]]) -> Optional[List[Element]]:
    """An odd cycle of the graph, or None if bipartite (BFS layering)."""
    colour: Dict[Element, int] = {}
    parent: Dict[Element, Optional[Element]] = {}
    for root in sorted(adj, key=sort_key):
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = None
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w in sorted(adj[v], key=sort_key):
                if w not in colour:
                    colour[w] = colour[v] ^ 1
                    parent[w] = v
                    queue.append(w)
                elif colour[w] == colour[v]:
                    # walk both endpoints up to the meeting point
                    va, wa = v, w
                    apath, bpath = [va], [wa]
                    aset = {va}
                    while parent[va] is not None:
                        va = parent[va]
                        apath.append(va)
                        aset.add(va)
                    while wa not in aset:
                        wa = parent[wa]
                        bpath.append(wa)
                    cycle = apath[: apath.index(wa) + 1]
                    cycle.reverse()
                    cycle.extend(bpath[:-1])
                    return cycle
    return None


def _non_cut_vertices(adj: Dict[Element, Set[Element]]) -> List[Element]:
    """Vertices that are not articulation points of their component."""
    disc: Dict[Element, int] = {}
    low: Dict[Element, int] = {}
    cut: Set[Element] = set()
    counter = 0
    for root in sorted(adj, key=sort_key):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack: List[Tuple[Element, Optional[Element], Iterable[Element]]] = [
            (root, None, iter(sorted(adj[root], key=sort_key)))
        ]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(sorted(adj[w], key=sort_key))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if pv != root and low[v] >= disc[pv]:
                    cut.add(pv)
        if root_children > 1:
            cut.add(root)
    return [v for v in sorted(adj, key=sort_key) if v not in cut]


def two_colour(h: Hypergraph) -> Union[Colouring, TwoColourFailure]:
    """A 2-colouring with no hyperedge of size >= 2 monochromatic, or a witness.

    Recursion mirrors the minimal-counterexample argument for balanced
    hypergraphs: vertices lying in at most one size-2 constraint are peeled
    onto a stack (their colour is forced or free at the end); once every
    vertex lies in two size-2 constraints, that constraint graph must be
    bipartite, and removing a non-cut-vertex keeps its neighbourhood
    monochromatic so its colour can be flipped in afterwards.

    A failure certifies that some induced subhypergraph is not
    2-colourable, i.e. that the input is not balanced; for balanced inputs
    the recursion always succeeds.
    """
    result = _two_colour_rec(h.ground, h.hyperedges)
    if isinstance(result, TwoColourFailure):
        return result
    colouring = Colouring(result, 2)
    assert colouring.is_valid_for(h)
    return colouring


def _two_colour_rec(
    ground: FrozenSet[Element], hyperedges: Tuple[FrozenSet[Element], ...]
) -> Union[Dict[Element, int], TwoColourFailure]:
    ground = frozenset(ground)
    current = tuple(sorted({h for h in hyperedges}, key=lambda h: tuple(sorted(sort_key(x) for x in h))))
    stack: List[Tuple[Element, Optional[Element]]] = []

    while True:
        if not ground:
            colours: Dict[Element, int] = {}
            break
        size2: Dict[Element, List[FrozenSet[Element]]] = {x: [] for x in ground}
        for h in current:
            if len(h) == 2:
                for x in h:
                    size2[x].append(h)
        strippable = [x for x in sorted(ground, key=sort_key) if len(size2[x]) <= 1]
        if strippable:
            v = strippable[0]
            partner = None
            if size2[v]:
                (other,) = size2[v][0] - {v}
                partner = other
            stack.append((v, partner))
            ground = ground - {v}
            current = tuple(
                sorted(
                    {h - {v} for h in current if h - {v}},
                    key=lambda h: tuple(sorted(sort_key(x) for x in h)),
                )
            )
            continue
        # every vertex lies in >= 2 size-2 constraints
        adj = _size2_graph(current, ground)
        odd = _odd_cycle(adj)
        if odd is not None:
            pair_sets = tuple(
                frozenset({odd[i], odd[(i + 1) % len(odd)]}) for i in range(len(odd))
            )
            return TwoColourFailure("odd_cycle", tuple(odd), pair_sets)
        x = _non_cut_vertices(adj)[0]
        sub = _two_colour_rec(
            ground - {x},
            tuple(h - {x} for h in current if h - {x}),
        )
        if isinstance(sub, TwoColourFailure):
            return sub
        neighbour_colours = {sub[w] for w in adj[x]}
        if len(neighbour_colours) != 1:
            return TwoColourFailure("unextendable", (x,))
        colours = sub
        colours[x] = 3 - next(iter(neighbour_colours))
        break

    for v, partner in reversed(stack):
        colours[v] = 3 - colours[partner] if partner is not None else 1
    return colours


# -- transversal packing -------------------------------------------------------


def pack_transversals(h: Hypergraph, on_iteration=None) -> List[FrozenSet[Element]]:
    """k = min hyperedge size pairwise disjoint transversals of a balanced h.

    Size-1 hyperedges are permitted; they impose no colouring constraint
    but force k = 1, in which case a single greedy hitting set is returned.

    For k >= 2: starts from a 2-colouring read as a k-colouring and repeatedly
    recolours the union of two colour classes (one doubled on a deficient
    hyperedge, one absent from it) with a fresh 2-colouring; the total
    number of (hyperedge, colour) incidences strictly grows, so the loop
    ends with every colour class a transversal.  Raises NotTwoColourable if
    any induced 2-colouring fails, which signals a non-balanced input.
    """
    k = h.min_hyperedge_size()
    if k == 1:
        hitting = frozenset(min(edge, key=sort_key) for edge in h.hyperedges)
        return [hitting]

    first = two_colour(h)
    if isinstance(first, TwoColourFailure):
        raise NotTwoColourable("input hypergraph is not 2-colourable", first)
    colours = dict(first.assignment)

    def incidence_sum() -> int:
        return sum(len({colours[x] for x in edge}) for edge in h.hyperedges)

    total = incidence_sum()
    while True:
        if on_iteration is not None:
            on_iteration(total)
        deficient = None
        for edge in h.hyperedges:
            if len({colours[x] for x in edge}) < k:
                deficient = edge
                break
        if deficient is None:
            break
        counts: Dict[int, int] = {}
        for x in deficient:
            counts[colours[x]] = counts.get(colours[x], 0) + 1
        p = min(c for c, cnt in counts.items() if cnt >= 2)
        q = min(c for c in range(1, k + 1) if c not in counts)
        classes = {x for x, c in colours.items() if c in (p, q)}
        sub = two_colour(h.induced(classes))
        if isinstance(sub, TwoColourFailure):
            raise NotTwoColourable(
                "induced subhypergraph is not 2-colourable", sub
            )
        for x, c in sub.assignment.items():
            colours[x] = p if c == 1 else q
        new_total = incidence_sum()
        assert new_total > total, "incidence sum must strictly increase"
        total = new_total

    classes = [frozenset(x for x, c in colours.items() if c == i) for i in range(1, k + 1)]
    for edge in h.hyperedges:
        assert all(cls & edge for cls in classes)
    return classes
