import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkcensus.exact import Vec3Q
from linkcensus.graphs import (
    CensusReport,
    Embedding,
    LinkType,
    MalformedGraph,
    TheoremViolation,
    UnsupportedLink,
    build_graph,
    census,
    classify_link,
    disjoint_cycle_pairs,
    k331_link_pairs,
    linking_number_disk,
    linking_number_gauss,
    simple_cycles,
)

from conftest import random_embedding


def same_cycle(c1, c2):
    n = len(c1)
    rots = [tuple(c2[i:] + c2[:i]) for i in range(n)]
    rots += [tuple(reversed(r)) for r in rots]
    return tuple(c1) in rots


class TestBuildGraph:
    def test_k331(self):
        g = build_graph("K331")
        assert len(g.vertices) == 7 and len(g.edges) == 15
        assert g.neighbors(7) == [1, 2, 3, 4, 5, 6]
        assert not g.has_edge(1, 3) and not g.has_edge(2, 4)

    def test_k33(self):
        g = build_graph("K33")
        assert len(g.edges) == 9
        for a in (1, 3, 5):
            for b in (1, 3, 5):
                assert not g.has_edge(a, b) if a != b else True
        assert all((u + v) % 2 == 1 for u, v in g.edges)

    def test_k6(self):
        assert len(build_graph("K6").edges) == 15

    @pytest.mark.parametrize(
        "bad", [[(1, 1)], [(1, 2), (2, 1)], [(1, "x")], [(1, 2, 3)]]
    )
    def test_malformed(self, bad):
        with pytest.raises(MalformedGraph):
            build_graph(bad)

    def test_unknown_name(self):
        with pytest.raises(MalformedGraph):
            build_graph("K7")

    def test_custom(self):
        g = build_graph([(1, 2), (2, 3), (3, 1)])
        assert simple_cycles(g) == [(1, 2, 3)]


class TestCyclePairs:
    def test_k331_nine_pairs(self):
        pairs = disjoint_cycle_pairs(build_graph("K331"))
        assert len(pairs) == 9
        assert ((7, 5, 2), (1, 4, 3, 6)) in pairs

    def test_k331_generic_enumeration_agrees(self):
        g = build_graph("K331")
        generic = build_graph(sorted(g.edges))
        cycles = simple_cycles(generic)
        found = []
        for i, c1 in enumerate(cycles):
            for c2 in cycles[i + 1:]:
                if set(c1).isdisjoint(c2):
                    found.append((c1, c2) if len(c1) < len(c2) else (c2, c1))
        assert len(found) == 9
        for tri, quad in k331_link_pairs():
            assert any(same_cycle(tri, t) and same_cycle(quad, q) for t, q in found)

    def test_k6_ten_pairs(self):
        pairs = disjoint_cycle_pairs(build_graph("K6"))
        assert len(pairs) == 10
        assert all(len(a) == len(b) == 3 for a, b in pairs)

    def test_k33_has_none(self):
        assert disjoint_cycle_pairs(build_graph("K33")) == []


def hopf_embedding(quad_pts):
    g = build_graph([(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 7), (7, 4)])
    coords = {1: Vec3Q(0, 0, 0), 2: Vec3Q(4, 0, 0), 3: Vec3Q(0, 4, 0)}
    coords.update({4 + i: Vec3Q.of(*p) for i, p in enumerate(quad_pts)})
    return Embedding(g, coords)


class TestLinkingNumbers:
    HOPF = [(1, 1, -1), (1, 2, 1), (7, 6, 1), (6, 7, -1)]
    SPLIT = [(1, 1, 2), (2, 1, 3), (7, 5, 5), (5, 8, 4)]

    def test_hopf(self):
        emb = hopf_embedding(self.HOPF)
        assert linking_number_disk((1, 2, 3), (4, 5, 6, 7), emb) == 1
        assert linking_number_gauss((1, 2, 3), (4, 5, 6, 7), emb) == 1

    def test_split(self):
        emb = hopf_embedding(self.SPLIT)
        assert linking_number_disk((1, 2, 3), (4, 5, 6, 7), emb) == 0
        assert linking_number_gauss((1, 2, 3), (4, 5, 6, 7), emb) == 0

    def test_links1_only_752(self, refs):
        emb = refs["links1"]
        for tri, quad in k331_link_pairs():
            expected = 1 if tri == (7, 5, 2) else 0
            assert linking_number_disk(tri, quad, emb) == expected
            assert linking_number_gauss(tri, quad, emb) == expected

    def test_disk_equals_gauss_random(self):
        rng = random.Random(7)
        for _ in range(300):
            emb = random_embedding(rng, bound=30)
            for tri, quad in k331_link_pairs():
                assert linking_number_disk(tri, quad, emb) == linking_number_gauss(tri, quad, emb)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32), st.integers(0, 3), st.booleans(), st.integers(0, 2), st.booleans())
    def test_invariant_under_rotation_and_reversal(self, seed, qrot, qrev, trot, trev):
        emb = random_embedding(random.Random(seed))
        for tri, quad in k331_link_pairs():
            base = linking_number_disk(tri, quad, emb)
            q = quad[qrot:] + quad[:qrot]
            t = tri[trot:] + tri[:trot]
            if qrev:
                q = q[::-1]
            if trev:
                t = t[::-1]
            assert linking_number_disk(t, q, emb) == base
            assert linking_number_gauss(t, q, emb) == base

    def test_cycles_must_be_disjoint(self, refs):
        with pytest.raises(ValueError):
            linking_number_disk((7, 1, 2), (1, 4, 3, 6), refs["links1"])


class TestClassify:
    def test_types(self):
        assert classify_link(0, 7) is LinkType.TRIVIAL
        assert classify_link(1, 7) is LinkType.HOPF
        assert classify_link(2, 7) is LinkType.TORUS24

    @pytest.mark.parametrize("lk,edges", [(3, 7), (1, 6), (0, 8)])
    def test_unsupported(self, lk, edges):
        with pytest.raises(UnsupportedLink):
            classify_link(lk, edges)


class TestCensus:
    def test_links5(self, refs):
        rep = census(refs["links5"])
        assert rep.nontrivial_count == 5
        assert sorted(rep.linked_triangles) == ["714", "732", "734", "736", "752"]
        assert all(e.link_type is LinkType.HOPF for e in rep.entries if e.linking_number)

    def test_links2(self, refs):
        rep = census(refs["links2"])
        assert rep.nontrivial_count == 2 and rep.torus24_count == 1

    def test_links1(self, refs):
        rep = census(refs["links1"])
        assert rep.nontrivial_count == 1 and rep.total_linking == 1

    def test_entries_cover_all_triangles(self, refs):
        rep = census(refs["links3"])
        assert [e.label for e in rep.entries] == [f"7{a}{b}" for a in (1, 3, 5) for b in (2, 4, 6)]
        for e in rep.entries:
            assert set(e.triangle) | set(e.quadrilateral) == set(range(1, 8))

    def test_json_round_trip(self, refs):
        rep = census(refs["links4"])
        assert CensusReport.from_json(rep.to_json()) == rep

    def test_violation_is_a_value(self, refs, monkeypatch):
        import linkcensus.graphs as graphs

        monkeypatch.setattr(graphs, "linking_number_disk", lambda *a: 0)
        out = census(refs["links1"])
        assert isinstance(out, TheoremViolation)
        assert out.embedding == refs["links1"]
        assert any("even" in r for r in out.reasons)

    def test_requires_k331(self):
        emb = random_embedding(random.Random(3), graph="K6")
        with pytest.raises(ValueError):
            census(emb)


def test_k6_nontrivial_counts_are_one_or_three():
    from linkcensus.harness import k6_nontrivial_count

    rng = random.Random(11)
    seen = set()
    for _ in range(200):
        seen.add(k6_nontrivial_count(random_embedding(rng, graph="K6")))
    assert seen <= {1, 3}
    assert seen == {1, 3}
