"""Bundled instances: the textbook examples plus the two literature fixtures.

``schrijver`` is the 12-vertex counterexample to the capacitated packing
question: two concentric 6-rings with alternating 0/1 capacities and three
solid spokes.  Its picture places ring positions 0 and 6 at the same angle;
positions are taken modulo 6 (index 6 *is* index 0), which is the reading
that reproduces the published verdict: cheapest dibond capacity 2, but no
two capacity-disjoint dijoins.

``ladder(n)`` is a finite truncation of the two-way infinite ladder whose
top row runs right, bottom row runs left, and rungs run down: 2n columns,
4n vertices, open ends (no wrap-around edges are invented).  Every dicut of
the truncation contains a full prefix R1..Rk of rungs, and the class of all
such dicuts is nested, with minimum size 2 once n >= 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .classes import DicutClass
from .digraph import Capacity, Digraph
from .dicuts import dicut_from_inshore
from .errors import UnknownFixture

FIXTURE_NAMES = ("schrijver", "diamond", "path3", "parallel2", "ladder(n)")
MAX_LADDER = 12


@dataclass(frozen=True)
class Fixture:
    name: str
    digraph: Digraph
    capacity: Capacity
    cls: DicutClass


def _diamond() -> Fixture:
    d = Digraph(
        "abcd",
        [("ab", "a", "b"), ("ac", "a", "c"), ("bd", "b", "d"), ("cd", "c", "d")],
    )
    return Fixture("diamond", d, Capacity.unit(d), DicutClass.symbolic("all"))


def _path3() -> Fixture:
    d = Digraph("abc", [("e1", "a", "b"), ("e2", "b", "c")])
    return Fixture("path3", d, Capacity.unit(d), DicutClass.symbolic("all"))


def _parallel2() -> Fixture:
    d = Digraph("uv", [("e1", "u", "v"), ("e2", "u", "v")])
    return Fixture("parallel2", d, Capacity.unit(d), DicutClass.symbolic("dibonds"))


def _schrijver() -> Fixture:
    edges = []
    caps = {}

    def add(eid, tail, head, cap):
        edges.append((eid, tail, head))
        caps[eid] = cap

    for x in (0, 2, 4):
        y, z = x + 1, (x + 2) % 6
        add(f"wv{x}", f"w{x}", f"v{x}", 0)  # dashed spokes
        add(f"wv{y}", f"w{y}", f"v{y}", 0)
        add(f"s{y}", f"w{y}", f"v{x}", 1)  # solid spoke
        for ring in ("v", "w"):
            add(f"{ring}b{y}", f"{ring}{y}", f"{ring}{x}", 0)  # dashed ring edge
            add(f"{ring}f{y}", f"{ring}{y}", f"{ring}{z}", 1)  # solid ring edge
    d = Digraph((), edges)
    return Fixture("schrijver", d, Capacity(caps), DicutClass.symbolic("dibonds"))


def _ladder(n: int) -> Fixture:
    cols = 2 * n
    edges = []
    for i in range(1, cols):
        edges.append((f"T{i}", f"t{i}", f"t{i + 1}"))
        edges.append((f"B{i}", f"b{i + 1}", f"b{i}"))
    for i in range(1, cols + 1):
        edges.append((f"R{i}", f"t{i}", f"b{i}"))
    d = Digraph((), edges)
    # the dicuts containing a full prefix of rungs, listed by in-shore:
    # cutting after top vertex i, cutting after bottom vertex j, or all rungs
    dicuts = []
    for i in range(1, cols):
        shore = {f"b{k}" for k in range(1, cols + 1)}
        shore |= {f"t{k}" for k in range(i + 1, cols + 1)}
        dicuts.append(dicut_from_inshore(d, shore))
    for j in range(1, cols):
        dicuts.append(dicut_from_inshore(d, {f"b{k}" for k in range(1, j + 1)}))
    dicuts.append(dicut_from_inshore(d, {f"b{k}" for k in range(1, cols + 1)}))
    dicuts.sort(key=lambda b: b.sort_token())
    return Fixture(f"ladder({n})", d, Capacity.unit(d), DicutClass.explicit(dicuts))


def fixture(name: str) -> Fixture:
    """Look up a bundled fixture by name; ladders are ``ladder(n)``, n <= 12."""
    plain = {
        "diamond": _diamond,
        "path3": _path3,
        "parallel2": _parallel2,
        "schrijver": _schrijver,
    }
    if name in plain:
        return plain[name]()
    match = re.fullmatch(r"ladder\((\d+)\)", name)
    if match:
        n = int(match.group(1))
        if not 1 <= n <= MAX_LADDER:
            raise UnknownFixture(f"ladder size must be between 1 and {MAX_LADDER}")
        return _ladder(n)
    raise UnknownFixture(f"no fixture named {name!r}; known: {', '.join(FIXTURE_NAMES)}")
