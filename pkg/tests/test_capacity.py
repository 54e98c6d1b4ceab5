import pytest
from hypothesis import given, settings

from strategies import digraphs

from dijoinpack.digraph import Capacity, Digraph
from dijoinpack.dicuts import enumerate_dibonds, enumerate_dicuts
from dijoinpack.classes import are_nested_dicuts, meet, join, min_dicut_class
from dijoinpack.capacity import (
    capacitated_equivalence_check,
    hat_transform,
    tilde_transform,
)
from dijoinpack.errors import CapExceeded, DijoinError, NoDicut, TooManyVertices

PATH = Digraph("abc", [("e1", "a", "b"), ("e2", "b", "c")])
DIAMOND = Digraph(
    "abcd", [("ab", "a", "b"), ("ac", "a", "c"), ("bd", "b", "d"), ("cd", "c", "d")]
)


def seeded_capacity(d, modulus=4):
    return Capacity({eid: (i * 3 + 1) % modulus for i, eid in enumerate(d.edge_ids)})


class TestHatTransform:
    def test_single_edge_capacity_three(self):
        d = Digraph("uv", [("e", "u", "v")])
        result = hat_transform(d, Capacity({"e": 3}), "dibonds")
        assert result.digraph.num_edges() == 3
        ((b, image),) = result.class_map.items()
        assert b.size() == 1 and image.size() == 3

    def test_capacity_zero_edge_vanishes(self):
        cap = Capacity({"e1": 0, "e2": 1})
        result = hat_transform(PATH, cap, "all")
        assert set(result.digraph.edge_ids) == {"e2"}
        images = {b.in_shore: img for b, img in result.class_map.items()}
        assert images[frozenset({"b", "c"})].is_empty()
        assert images[frozenset({"c"})].edge_ids == {"e2"}

    def test_unit_capacity_is_identity(self):
        result = hat_transform(PATH, None, "all")
        assert result.digraph == PATH
        assert all(b == img for b, img in result.class_map.items())

    def test_size_equals_capacity_exactly(self):
        cap = seeded_capacity(DIAMOND)
        result = hat_transform(DIAMOND, cap, "all")
        for b, image in result.class_map.items():
            assert image.size() == cap.total(b.edge_ids)

    def test_clone_cap(self):
        d = Digraph("uv", [("e", "u", "v")])
        with pytest.raises(CapExceeded):
            hat_transform(d, Capacity({"e": 10}), max_clones=5)

    def test_clone_name_collision_avoided(self):
        d = Digraph("uv", [("e", "u", "v"), ("e#0", "u", "v")])
        result = hat_transform(d, Capacity({"e": 2, "e#0": 1}))
        assert len(set(result.digraph.edge_ids)) == 3

    def test_trace_round_trip(self):
        cap = Capacity({"e1": 2, "e2": 1})
        result = hat_transform(PATH, cap)
        family = (frozenset({"e1", "e2"}), frozenset({"e1"}))
        clones = result.assign_clones(family)
        assert all(not (a & b) for a in clones for b in clones if a is not b)
        assert result.trace_family(clones) == family

    def test_assign_clones_rejects_overuse(self):
        result = hat_transform(PATH, Capacity({"e1": 1, "e2": 1}))
        with pytest.raises(DijoinError):
            result.assign_clones((frozenset({"e1"}), frozenset({"e1"})))

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_vertices=5, max_edges=8))
    def test_round_trip_on_random_instances(self, d):
        """Disjoint hat dijoins pull back c-disjoint, and greedy clone
        assignment turns any c-disjoint family back into disjoint sets."""
        cap = seeded_capacity(d)
        result = hat_transform(d, cap)
        positive = [e for e in d.edge_ids if cap[e] > 0]
        family = tuple(
            frozenset(e for e in positive[i::2]) for i in range(2)
        )
        family = tuple(f for f in family if f)
        clones = result.assign_clones(family)
        for i, a in enumerate(clones):
            for b in clones[i + 1 :]:
                assert not (a & b)
        assert result.trace_family(clones) == family


class TestTildeTransform:
    def test_single_edge_expansion(self):
        d = Digraph("ab", [("e1", "a", "b")])
        result = tilde_transform(d)
        assert result.digraph.num_vertices() == 2 + 4
        apex_edges = {
            (result.digraph.tail(e), result.digraph.head(e))
            for e in result.digraph.edge_ids
            if e != "e1"
        }
        assert apex_edges == {("S_a", "a"), ("S_b", "b"), ("S_a_b", "a"), ("S_a_b", "b")}
        assert all(result.capacity[e] == 0 for e in result.digraph.edge_ids if e != "e1")
        assert result.capacity["e1"] == 1

    def test_capacity_of_image_equals_size(self):
        result = tilde_transform(PATH, "all")
        for b, image in result.class_map.items():
            assert result.capacity.total(image.edge_ids) == b.size()
            assert b.edge_ids <= image.edge_ids

    def test_images_are_dibonds(self):
        result = tilde_transform(PATH, "all")
        dibond_sets = {b.edge_ids for b in enumerate_dibonds(result.digraph)}
        for image in result.class_map.values():
            assert image.edge_ids in dibond_sets

    def test_vertex_cap(self):
        d = Digraph([f"v{i}" for i in range(17)], [("e", "v0", "v1")])
        with pytest.raises(TooManyVertices):
            tilde_transform(d)

    def test_empty_subset_vertex_is_isolated(self):
        d = Digraph("ab", [("e1", "a", "b")])
        result = tilde_transform(d)
        apex = result.subset_vertex[frozenset()]
        assert result.digraph.incident_edges(apex) == ()


class TestCornerCommutation:
    @settings(max_examples=30, deadline=None)
    @given(digraphs(max_vertices=4, max_edges=7))
    def test_hat_commutes_with_corners(self, d):
        cap = seeded_capacity(d, modulus=3)
        dicuts = enumerate_dicuts(d)
        result = hat_transform(d, cap, dicuts)
        for i, b1 in enumerate(dicuts):
            for b2 in dicuts[i + 1 :]:
                if are_nested_dicuts(b1, b2):
                    continue
                hat_of_meet = result.class_map[b1].in_shore & result.class_map[b2].in_shore
                assert hat_of_meet == meet(b1, b2).in_shore
                m_img = meet(result.class_map[b1], result.class_map[b2])
                j_img = join(result.class_map[b1], result.class_map[b2])
                assert m_img.edge_ids == {
                    c for e in meet(b1, b2).edge_ids for c in result.edge_map[e]
                }
                assert j_img.edge_ids == {
                    c for e in join(b1, b2).edge_ids for c in result.edge_map[e]
                }

    @settings(max_examples=15, deadline=None)
    @given(digraphs(max_vertices=4, max_edges=6))
    def test_tilde_commutes_with_corners(self, d):
        """Tilde of meet is the meet of tildes, exactly; for the join the
        two sides differ only in capacity-0 apex edges (apexes of subsets
        straddling both in-shores), so they agree on every original edge
        and have equal capacity."""
        dicuts = enumerate_dicuts(d)
        result = tilde_transform(d, dicuts)
        original = set(d.edge_ids)
        for i, b1 in enumerate(dicuts):
            for b2 in dicuts[i + 1 :]:
                if are_nested_dicuts(b1, b2):
                    continue
                t1, t2 = result.class_map[b1], result.class_map[b2]
                m, j = meet(b1, b2), join(b1, b2)
                tilde_of_meet_shore = set(m.in_shore) | {
                    name for s, name in result.subset_vertex.items() if s <= m.in_shore
                }
                assert meet(t1, t2).in_shore == tilde_of_meet_shore
                join_of_tildes = join(t1, t2)
                tilde_of_join_shore = set(j.in_shore) | {
                    name for s, name in result.subset_vertex.items() if s <= j.in_shore
                }
                assert join_of_tildes.in_shore <= tilde_of_join_shore
                assert join_of_tildes.in_shore & set(d.vertices) == set(j.in_shore)
                assert join_of_tildes.edge_ids & original == j.edge_ids
                assert result.capacity.total(join_of_tildes.edge_ids) == j.size()


class TestEquivalenceCheck:
    def test_diamond_min_class(self):
        report = capacitated_equivalence_check(DIAMOND, None, "min")
        assert report.agree
        assert report.direct.max_packing == 2 and report.direct.woodall
        assert report.tilde is not None

    def test_single_edge_capacity_two(self):
        d = Digraph("uv", [("e", "u", "v")])
        report = capacitated_equivalence_check(d, Capacity({"e": 2}), "all")
        assert report.agree
        assert report.direct.min_size == 2 and report.direct.max_packing == 2

    def test_schrijver_hat_agrees_not_woodall(self):
        from dijoinpack.fixtures import fixture

        fix = fixture("schrijver")
        report = capacitated_equivalence_check(fix.digraph, fix.capacity, fix.cls)
        assert report.agree
        assert not report.direct.woodall
        assert report.tilde is None  # 12 vertices is past the tilde cap

    @settings(max_examples=25, deadline=None)
    @given(digraphs(max_vertices=4, max_edges=6))
    def test_random_instances_agree(self, d):
        cap = seeded_capacity(d)
        try:
            cls = min_dicut_class(d, cap)
        except NoDicut:
            return
        report = capacitated_equivalence_check(d, cap, cls.dicuts)
        assert report.agree
