import pytest
from hypothesis import given, settings

from strategies import digraphs

from dijoinpack.digraph import Capacity, Digraph
from dijoinpack.dicuts import dicut_from_inshore, enumerate_dicuts
from dijoinpack.classes import (
    find_nested_representation,
    is_corner_closed,
    min_dicut_class,
    resolve_class,
)
from dijoinpack.errors import (
    EmptyClass,
    NoDicut,
    NotCornerClosed,
    NotNested,
    NotUniform,
)
from dijoinpack.oracle import max_disjoint_dijoins
from dijoinpack.packing import (
    Packing,
    pack_corner_closed_uniform,
    pack_min,
    pack_nested,
    verify_packing,
)

PATH = Digraph("abc", [("e1", "a", "b"), ("e2", "b", "c")])
DIAMOND = Digraph(
    "abcd", [("ab", "a", "b"), ("ac", "a", "c"), ("bd", "b", "d"), ("cd", "c", "d")]
)
PARALLEL2 = Digraph("uv", [("e1", "u", "v"), ("e2", "u", "v")])


def assert_valid(d, cls, p, capacity=None):
    result = verify_packing(d, cls, p, capacity)
    assert result.ok, result.violation


class TestPackNested:
    def test_ladder_class(self):
        from dijoinpack.fixtures import fixture

        fix = fixture("ladder(3)")
        p = pack_nested(fix.digraph, fix.cls)
        assert p.k == min(b.size() for b in fix.cls.dicuts) == 2
        assert_valid(fix.digraph, fix.cls.dicuts, p)

    def test_single_dicut_gives_singletons(self):
        b = dicut_from_inshore(DIAMOND, {"d"})
        p = pack_nested(DIAMOND, [b])
        assert sorted(map(sorted, p.dijoins)) == [["bd"], ["cd"]]

    def test_diamond_not_nested(self):
        with pytest.raises(NotNested):
            pack_nested(DIAMOND, "all")

    def test_empty_class(self):
        with pytest.raises(EmptyClass):
            pack_nested(DIAMOND, [])


class TestPackCornerClosedUniform:
    def test_diamond(self):
        p = pack_corner_closed_uniform(DIAMOND, "all", 2)
        assert sorted(map(sorted, p.dijoins)) == [["ab", "bd"], ["ac", "cd"]]
        assert_valid(DIAMOND, "all", p)

    def test_atomic_base_case(self):
        b = dicut_from_inshore(DIAMOND, {"d"})
        p = pack_corner_closed_uniform(DIAMOND, [b], 2)
        assert sorted(map(sorted, p.dijoins)) == [["bd"], ["cd"]]

    def test_parallel_dibond(self):
        p = pack_corner_closed_uniform(PARALLEL2, "dibonds", 2)
        assert sorted(map(sorted, p.dijoins)) == [["e1"], ["e2"]]

    def test_not_uniform(self):
        with pytest.raises(NotUniform):
            pack_corner_closed_uniform(PATH, "all", 2)

    def test_not_corner_closed(self):
        b1 = dicut_from_inshore(DIAMOND, {"b", "d"})
        b2 = dicut_from_inshore(DIAMOND, {"c", "d"})
        with pytest.raises(NotCornerClosed):
            pack_corner_closed_uniform(DIAMOND, [b1, b2], 2)

    def test_contraction_recursion_on_larger_uniform_class(self):
        # two diamonds glued in sequence still have a corner-closed
        # minimum class of size 2 exercising a two-level recursion
        d = Digraph(
            (),
            [
                ("ab", "a", "b"),
                ("ac", "a", "c"),
                ("bd", "b", "d"),
                ("cd", "c", "d"),
                ("de", "d", "e"),
                ("df", "d", "f"),
                ("eg", "e", "g"),
                ("fg", "f", "g"),
            ],
        )
        cls = min_dicut_class(d)
        assert len(cls.dicuts) == 8
        p = pack_corner_closed_uniform(d, cls, 2)
        assert p.k == 2
        assert_valid(d, cls, p)


class TestPackMin:
    def test_diamond(self):
        p = pack_min(DIAMOND)
        assert p.k == 2
        assert_valid(DIAMOND, "min", p)

    def test_path(self):
        p = pack_min(PATH)
        assert p.k == 1
        assert p.dijoins == (frozenset({"e1", "e2"}),)

    def test_single_edge_capacity_three(self):
        d = Digraph("uv", [("e", "u", "v")])
        cap = Capacity({"e": 3})
        p = pack_min(d, cap)
        assert p.k == 3
        assert list(p.dijoins) == [frozenset({"e"})] * 3
        assert_valid(d, "min", p, cap)

    def test_zero_capacity_minimum_gives_empty_packing(self):
        cap = Capacity({"e1": 0, "e2": 1})
        p = pack_min(PATH, cap)
        assert p.k == 0 and p.dijoins == ()
        assert_valid(PATH, "min", p, cap)

    def test_no_dicut(self):
        cyc = Digraph("uv", [("f1", "u", "v"), ("f2", "v", "u")])
        with pytest.raises(NoDicut):
            pack_min(cyc)

    def test_mixed_capacities(self):
        # min capacity dicut is {e2} at 2; two c-disjoint dijoins must reuse e2
        cap = Capacity({"e1": 3, "e2": 2})
        p = pack_min(PATH, cap)
        assert p.k == 2
        assert_valid(PATH, "min", p, cap)

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_vertices=5, max_edges=8))
    def test_matches_oracle(self, d):
        try:
            cls = min_dicut_class(d)
        except NoDicut:
            return
        p = pack_min(d)
        report = max_disjoint_dijoins(d, cls.dicuts)
        assert p.k == report.max_packing == report.min_size

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_vertices=5, max_edges=8))
    def test_uniform_corner_closed_classes_beyond_minimum(self, d):
        """The contraction recursion also handles corner-closed uniform
        classes whose common size is not the global minimum."""
        dicuts = enumerate_dicuts(d)
        by_size = {}
        for b in dicuts:
            by_size.setdefault(b.size(), []).append(b)
        for size, cls in sorted(by_size.items()):
            if not is_corner_closed(cls):
                continue
            p = pack_corner_closed_uniform(d, cls, size)
            assert p.k == size
            assert verify_packing(d, cls, p).ok
            assert max_disjoint_dijoins(d, cls).max_packing == size

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_vertices=5, max_edges=8))
    def test_greedy_maximal_nested_classes(self, d):
        from dijoinpack.classes import are_nested_dicuts

        chosen = []
        for b in enumerate_dicuts(d):
            if all(are_nested_dicuts(b, c) for c in chosen):
                chosen.append(b)
        if not chosen or find_nested_representation(d, chosen) is None:
            return
        p = pack_nested(d, chosen)
        assert p.k == min(b.size() for b in chosen)
        assert p.k == max_disjoint_dijoins(d, chosen).max_packing

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_vertices=4, max_edges=6))
    def test_matches_oracle_capacitated(self, d):
        cap = Capacity({eid: (i * 3 + 1) % 4 for i, eid in enumerate(d.edge_ids)})
        try:
            cls = min_dicut_class(d, cap)
        except NoDicut:
            return
        p = pack_min(d, cap)
        report = max_disjoint_dijoins(d, cls.dicuts, cap)
        assert p.k == report.max_packing == report.min_size
        assert_valid(d, cls.dicuts, p, cap)


class TestVerifyPacking:
    def test_good_packing(self):
        p = pack_min(DIAMOND)
        assert verify_packing(DIAMOND, "min", p).ok

    def test_missed_dicut_reported(self):
        cls = tuple(enumerate_dicuts(DIAMOND))
        bad = Packing((frozenset({"ab", "cd"}), frozenset({"ac", "bd"})), cls, 2)
        result = verify_packing(DIAMOND, cls, bad)
        assert not result.ok
        assert "misses" in result.violation

    def test_overused_edge_reported(self):
        cls = tuple(enumerate_dicuts(PATH))
        bad = Packing((frozenset({"e1"}), frozenset({"e1", "e2"})), cls, 1)
        result = verify_packing(PATH, cls, bad)
        assert not result.ok

    def test_wrong_count_reported(self):
        cls = tuple(enumerate_dicuts(PATH))
        bad = Packing((frozenset({"e1", "e2"}),), cls, 2)
        result = verify_packing(PATH, cls, bad)
        assert not result.ok and "k=2" in result.violation

    def test_empty_packing_ok_iff_minimum_zero(self):
        cap0 = Capacity({"e1": 0, "e2": 1})
        cls = resolve_class(PATH, "min", cap0)
        empty = Packing((), cls, 0)
        assert verify_packing(PATH, cls, empty, cap0).ok
        cls1 = resolve_class(PATH, "all")
        assert not verify_packing(PATH, cls1, Packing((), cls1, 0)).ok
