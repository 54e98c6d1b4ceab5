import pytest
from hypothesis import given, settings

from naive import naive_dibonds, naive_dicuts
from strategies import digraphs

from dijoinpack.digraph import Digraph
from dijoinpack.dicuts import (
    Dicut,
    dicut_from_inshore,
    enumerate_dibonds,
    enumerate_dicuts,
    quotient,
    robbins_two_dijoins,
)
from dijoinpack.errors import NoDicut, NotADicut, NotBridgeless, TooLarge

PATH = Digraph("abc", [("e1", "a", "b"), ("e2", "b", "c")])
DIAMOND = Digraph(
    "abcd", [("ab", "a", "b"), ("ac", "a", "c"), ("bd", "b", "d"), ("cd", "c", "d")]
)
TWO_CYCLE = Digraph("uv", [("f1", "u", "v"), ("f2", "v", "u")])
PARALLEL2 = Digraph("uv", [("e1", "u", "v"), ("e2", "u", "v")])


def shores(dicuts):
    return [frozenset(b.in_shore) for b in dicuts]


def edge_sets(dicuts):
    return [frozenset(b.edge_ids) for b in dicuts]


class TestEnumerateDicuts:
    def test_path(self):
        got = enumerate_dicuts(PATH)
        assert {(b.in_shore, b.edge_ids) for b in got} == {
            (frozenset("c"), frozenset({"e2"})),
            (frozenset("bc"), frozenset({"e1"})),
        }

    def test_strongly_connected_two_cycle(self):
        assert enumerate_dicuts(TWO_CYCLE) == []

    def test_diamond(self):
        got = enumerate_dicuts(DIAMOND)
        assert set(shores(got)) == {
            frozenset("d"),
            frozenset("bd"),
            frozenset("cd"),
            frozenset("bcd"),
        }

    def test_order_is_lexicographic_by_sorted_in_shore(self):
        got = enumerate_dicuts(DIAMOND)
        tokens = [tuple(sorted(b.in_shore)) for b in got]
        assert tokens == sorted(tokens)

    def test_empty_dicuts_only_when_requested(self):
        d = Digraph((), [("e", "a", "b"), ("f", "c", "d")])
        default = enumerate_dicuts(d)
        assert all(b.edge_ids for b in default)
        with_empty = enumerate_dicuts(d, include_empty=True)
        assert any(not b.edge_ids for b in with_empty)
        assert len(with_empty) > len(default)

    def test_dedupe_by_edge_set(self):
        d = Digraph((), [("e", "a", "b"), ("f", "c", "d")])
        full = enumerate_dicuts(d)
        deduped = enumerate_dicuts(d, dedupe_by_edge_set=True)
        assert len(set(edge_sets(deduped))) == len(deduped)
        assert len(full) > len(deduped)

    def test_cap(self):
        d = Digraph([f"v{i}" for i in range(6)], [("e", "v0", "v1")])
        with pytest.raises(TooLarge):
            enumerate_dicuts(d, max_closed_sets=3)

    @settings(max_examples=80, deadline=None)
    @given(digraphs())
    def test_matches_subset_bruteforce(self, d):
        got = [(b.in_shore, b.edge_ids) for b in enumerate_dicuts(d)]
        assert got == naive_dicuts(d)

    @settings(max_examples=40, deadline=None)
    @given(digraphs())
    def test_repeat_runs_identical(self, d):
        first = [(b.in_shore, b.edge_ids) for b in enumerate_dicuts(d)]
        second = [(b.in_shore, b.edge_ids) for b in enumerate_dicuts(d)]
        assert first == second

    @settings(max_examples=80, deadline=None)
    @given(digraphs())
    def test_matches_subset_bruteforce_with_empty(self, d):
        got = [(b.in_shore, b.edge_ids) for b in enumerate_dicuts(d, include_empty=True)]
        assert got == naive_dicuts(d, include_empty=True)


class TestEnumerateDibonds:
    def test_path_both_dicuts_are_dibonds(self):
        assert set(edge_sets(enumerate_dibonds(PATH))) == {
            frozenset({"e1"}),
            frozenset({"e2"}),
        }

    def test_parallel_edges_single_dibond(self):
        got = enumerate_dibonds(PARALLEL2)
        assert edge_sets(got) == [frozenset({"e1", "e2"})]

    def test_diamond_all_four(self):
        assert len(enumerate_dibonds(DIAMOND)) == 4

    @settings(max_examples=60, deadline=None)
    @given(digraphs())
    def test_matches_definition(self, d):
        dibonds = enumerate_dibonds(d, dedupe_by_edge_set=True)
        assert {b.edge_ids for b in dibonds} == naive_dibonds(d)

    @settings(max_examples=60, deadline=None)
    @given(digraphs())
    def test_subset_of_dicuts_and_minimal(self, d):
        dicut_ids = {(b.in_shore, b.edge_ids) for b in enumerate_dicuts(d)}
        dibonds = enumerate_dibonds(d)
        for b in dibonds:
            assert (b.in_shore, b.edge_ids) in dicut_ids
        sets = {b.edge_ids for b in dibonds}
        for es in sets:
            assert not any(other < es for other in sets)

    @settings(max_examples=60, deadline=None)
    @given(digraphs(connected=True))
    def test_connected_shores_criterion(self, d):
        """In a weakly connected digraph a dicut is minimal iff both shores
        induce weakly connected subdigraphs."""

        def induces_connected(vertices):
            sub = Digraph(
                vertices,
                [
                    (e, *d.endpoints(e))
                    for e in d.edge_ids
                    if d.tail(e) in vertices and d.head(e) in vertices
                ],
            )
            return sub.is_weakly_connected()

        dibond_sets = {b.edge_ids for b in enumerate_dibonds(d)}
        for b in enumerate_dicuts(d):
            expected = induces_connected(b.in_shore) and induces_connected(b.out_shore)
            assert (b.edge_ids in dibond_sets) == expected


class TestDicutFromInshore:
    def test_sink_vertex(self):
        assert dicut_from_inshore(PATH, {"c"}).edge_ids == {"e2"}

    def test_not_out_closed(self):
        with pytest.raises(NotADicut):
            dicut_from_inshore(PATH, {"b"})

    def test_diamond_crossing_pair(self):
        assert dicut_from_inshore(DIAMOND, {"b", "d"}).edge_ids == {"ab", "cd"}

    def test_trivial_shores_rejected(self):
        with pytest.raises(NotADicut):
            dicut_from_inshore(PATH, set())
        with pytest.raises(NotADicut):
            dicut_from_inshore(PATH, {"a", "b", "c"})

    def test_directedness_invariants_on_construction(self):
        b = dicut_from_inshore(DIAMOND, {"b", "d"})
        for eid in b.edge_ids:
            assert DIAMOND.head(eid) in b.in_shore
            assert DIAMOND.tail(eid) not in b.in_shore

    def test_separates(self):
        b = dicut_from_inshore(PATH, {"c"})
        assert b.separates("b", "c")
        assert not b.separates("a", "b")
        # untouched components can be put on either side of another cut
        d = Digraph((), [("e", "a", "b"), ("f", "c", "d")])
        cut = dicut_from_inshore(d, {"b"})
        assert cut.separates("a", "b")
        assert cut.separates("a", "c")
        assert cut.separates("b", "d")
        assert not cut.separates("c", "d")


class TestQuotient:
    def test_path_single_dicut(self):
        q, proj = quotient(PATH, [dicut_from_inshore(PATH, {"c"})])
        assert q.vertices == {"a", "c"}
        assert q.edge_ids == ("e2",)
        assert proj["b"] == proj["a"]

    @settings(max_examples=60, deadline=None)
    @given(digraphs(connected=True))
    def test_full_class_gives_strong_components(self, d):
        q, proj = quotient(d, enumerate_dicuts(d))
        classes = {}
        for v, rep in proj.items():
            classes.setdefault(rep, set()).add(v)
        assert set(map(frozenset, classes.values())) == set(d.strong_components())

    def test_empty_class(self):
        q, _ = quotient(PATH, [])
        assert q.num_vertices() == 1 and q.num_edges() == 0

    @settings(max_examples=40, deadline=None)
    @given(digraphs())
    def test_idempotent(self, d):
        cls = enumerate_dicuts(d)
        q, _ = quotient(d, cls)
        surviving = [Dicut(q, {v for v in b.in_shore if v in q.vertices}) for b in cls]
        q2, proj2 = quotient(q, surviving)
        assert q2 == q
        assert all(proj2[v] == v for v in q.vertices)

    @settings(max_examples=60, deadline=None)
    @given(digraphs(connected=True))
    def test_class_dicuts_survive(self, d):
        """Every class dicut is a dicut of the quotient with the same edges."""
        cls = enumerate_dicuts(d)
        q, proj = quotient(d, cls)
        for b in cls:
            image = Dicut(q, {proj[v] for v in b.in_shore})
            assert image.edge_ids == b.edge_ids

    @settings(max_examples=60, deadline=None)
    @given(digraphs())
    def test_full_class_quotient_acyclic(self, d):
        q, _ = quotient(d, enumerate_dicuts(d))
        assert all(len(c) == 1 for c in q.strong_components())


class TestRobbins:
    def test_diamond(self):
        agree, disagree = robbins_two_dijoins(DIAMOND)
        # the a-b-d-c-a orientation: agree follows a->b->d, disagree returns
        assert agree == {"ab", "bd"}
        assert disagree == {"ac", "cd"}
        for b in enumerate_dicuts(DIAMOND):
            assert agree & b.edge_ids and disagree & b.edge_ids

    def test_bridge(self):
        with pytest.raises(NotBridgeless):
            robbins_two_dijoins(PATH)

    def test_strongly_connected(self):
        with pytest.raises(NoDicut):
            robbins_two_dijoins(TWO_CYCLE)

    @settings(max_examples=120, deadline=None)
    @given(digraphs(max_vertices=6, max_edges=9))
    def test_properties_on_bridgeless_instances(self, d):
        try:
            agree, disagree = robbins_two_dijoins(d)
        except (NotBridgeless, NoDicut):
            return
        assert agree | disagree == set(d.edge_ids)
        assert not (agree & disagree)
        for b in enumerate_dicuts(d):
            assert agree & b.edge_ids
            assert disagree & b.edge_ids
