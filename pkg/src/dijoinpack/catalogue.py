"""Instance generators backing the property and acceptance suites.

The exhaustive catalogue holds every weakly connected loop-free digraph up
to isomorphism with at most ``max_edges`` edges, allowing parallel edges,
over the vertex counts where that is affordable: all multi-digraphs on up
to 4 vertices.  Larger, sparser shapes are covered by the seeded random
instances (up to 8 vertices and 10 edges), generated Erdos-Renyi style with
a uniform orientation per chosen undirected edge and rejection sampling for
weak connectivity.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import List, Tuple

from .digraph import Digraph

DEFAULT_SEED = 271828


def _vertex_names(n: int) -> List[str]:
    return [f"v{i}" for i in range(n)]


def _build(n: int, arcs: Tuple[Tuple[int, int], ...]) -> Digraph:
    names = _vertex_names(n)
    edges = [(f"e{i}", names[a], names[b]) for i, (a, b) in enumerate(arcs)]
    return Digraph(names, edges)


def _is_weakly_connected(n: int, arcs: Tuple[Tuple[int, int], ...]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in arcs:
        parent[find(a)] = find(b)
    return len({find(i) for i in range(n)}) == 1


@lru_cache(maxsize=None)
def exhaustive_catalogue(max_edges: int = 7, max_vertices: int = 4) -> Tuple[Digraph, ...]:
    """Weakly connected multi-digraphs up to isomorphism, n <= max_vertices."""
    out: List[Digraph] = []
    for n in range(2, max_vertices + 1):
        arc_kinds = [(a, b) for a in range(n) for b in range(n) if a != b]
        perm_maps = []
        for perm in permutations(range(n)):
            perm_maps.append({arc: (perm[arc[0]], perm[arc[1]]) for arc in arc_kinds})
        for m in range(n - 1, max_edges + 1):
            for arcs in combinations_with_replacement(arc_kinds, m):
                touched = {v for arc in arcs for v in arc}
                if len(touched) != n:
                    continue
                canon = min(
                    tuple(sorted(pm[arc] for arc in arcs)) for pm in perm_maps
                )
                if canon != arcs:
                    continue
                if not _is_weakly_connected(n, arcs):
                    continue
                out.append(_build(n, arcs))
    return tuple(out)


def random_instances(
    count: int = 500,
    seed: int = DEFAULT_SEED,
    max_vertices: int = 8,
    max_edges: int = 10,
) -> Tuple[Digraph, ...]:
    """Seeded weakly connected random digraphs (simple, uniform orientation)."""
    rng = random.Random(seed)
    out: List[Digraph] = []
    while len(out) < count:
        n = rng.randint(2, max_vertices)
        p = rng.uniform(0.2, 0.9)
        arcs = []
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < p:
                    arcs.append((a, b) if rng.random() < 0.5 else (b, a))
        if not 1 <= len(arcs) <= max_edges:
            continue
        if not _is_weakly_connected(n, tuple(arcs)):
            continue
        out.append(_build(n, tuple(arcs)))
    return tuple(out)
