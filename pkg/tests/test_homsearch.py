"""Engine checks: counts and enumerations against the exhaustive oracle,
automorphisms, orbit counting both ways, isomorphism, canonical keys,
and the Hopfian identities.
"""

import random

import pytest

import homlab as hl
from homlab.errors import CapabilityError, FormatError
from homlab.homsearch import iter_maps, object_from_key, orbit_count_by_fixed_points
from conftest import brute_force_maps, rng


def _random_graph(r, n, p=0.4):
    pairs = [(u, v) for u in range(n) for v in range(u, n)]
    return hl.Graph(n, frozenset(e for e in pairs if r.random() < p))


SMALL_GROUPS = lambda: [
    hl.trivial_group(),
    hl.cyclic_group(2),
    hl.cyclic_group(3),
    hl.cyclic_group(4),
    hl.direct_product(hl.cyclic_group(2), hl.cyclic_group(2)),
    hl.cyclic_group(6),
    hl.symmetric_group(3),
]


def test_counts_match_oracle_on_random_graphs():
    r = rng(1)
    for _ in range(40):
        a = _random_graph(r, r.randint(0, 4))
        b = _random_graph(r, r.randint(0, 4))
        for cls in ("hom", "epi", "mono", "iso"):
            assert sorted(iter_maps(a, b, cls)) == brute_force_maps(a, b, cls)


def test_counts_match_oracle_on_small_groups():
    gs = SMALL_GROUPS()
    for a in gs:
        for b in gs:
            if a.order**a.order > 10**6:
                continue
            for cls in ("hom", "epi", "mono", "iso"):
                assert sorted(iter_maps(a, b, cls)) == brute_force_maps(a, b, cls)


def test_count_examples(named_graphs, named_groups):
    assert hl.count_morphisms(named_groups["C4"], named_groups["C6"]) == 2
    assert hl.count_morphisms(named_graphs["K2"], named_graphs["K1"]) == 0
    assert hl.count_morphisms(named_graphs["K2"], named_graphs["K3"]) == 6
    assert hl.count_morphisms(named_groups["C4"], named_groups["C2"], "epi") == 1
    assert hl.count_morphisms(named_groups["C2"], named_groups["S3"], "mono") == 3


def test_count_mixed_kinds_is_type_error(named_graphs, named_groups):
    with pytest.raises(TypeError):
        hl.count_morphisms(named_graphs["K2"], named_groups["C2"])


def test_count_unknown_class(named_graphs):
    with pytest.raises(FormatError):
        hl.count_morphisms(named_graphs["K2"], named_graphs["K2"], "bijective")


def test_enumerate_sorted_and_tagged(named_graphs, named_groups):
    ms = hl.enumerate_morphisms(named_graphs["K1"], named_graphs["K2"])
    assert [m.map for m in ms] == [(0,), (1,)]
    ms = hl.enumerate_morphisms(named_groups["C2"], named_groups["C4"])
    assert [m.map for m in ms] == [(0, 0), (0, 2)]
    ms = hl.enumerate_morphisms(named_graphs["K2"], named_graphs["K2"], "iso")
    assert [m.map for m in ms] == [(0, 1), (1, 0)]
    assert all(m.cls == "iso" for m in ms)


def test_enumeration_length_matches_count_on_random_pairs(loopy_graphs_4, catalog_12):
    r = rng(2)
    graph_pool = list(loopy_graphs_4)
    group_pool = [e.obj for e in catalog_12 if e.obj.order <= 8]
    for i in range(200):
        if i % 2:
            a, b = r.choice(graph_pool), r.choice(graph_pool)
        else:
            a, b = r.choice(group_pool), r.choice(group_pool)
        cls = r.choice(("hom", "epi", "mono", "iso"))
        assert len(hl.enumerate_morphisms(a, b, cls)) == hl.count_morphisms(a, b, cls)


def test_automorphisms(named_graphs, named_groups):
    assert len(hl.automorphisms(named_graphs["K3"])) == 6
    assert len(hl.automorphisms(named_groups["C5"])) == 4
    assert len(hl.automorphisms(named_graphs["K1"])) == 1
    auts = hl.automorphisms(named_graphs["C4"])
    assert len(auts) == 8  # dihedral symmetries
    maps = {m.map for m in auts}
    assert tuple(range(4)) in maps
    for m in auts:  # closed under composition
        for m2 in auts:
            assert tuple(m.map[x] for x in m2.map) in maps


def test_orbit_count_examples(named_graphs, named_groups):
    spec = hl.OrbitSpec("precompose", "aut")
    assert hl.orbit_count(named_graphs["K2"], named_graphs["K3"], "hom", spec) == 3
    assert hl.orbit_count(named_groups["C4"], named_groups["C4"], "hom", spec) == 3
    # trivial action recovers plain counts
    triv = hl.OrbitSpec("precompose", "trivial")
    assert hl.orbit_count(named_graphs["K2"], named_graphs["K3"], "hom", triv) == 6


def test_orbit_count_explicit_subgroup_validation(named_graphs):
    k3 = named_graphs["K3"]
    ident = (0, 1, 2)
    rot = (1, 2, 0)
    with pytest.raises(FormatError):
        hl.orbit_count(k3, k3, "hom", hl.OrbitSpec("precompose", (ident, rot)))
    full_rot = (ident, rot, (2, 0, 1))
    assert hl.orbit_count(k3, k3, "iso", hl.OrbitSpec("precompose", full_rot)) == 2


def test_burnside_cross_check(loopy_graphs_4, catalog_12):
    r = rng(3)
    graph_pool = list(loopy_graphs_4)
    group_pool = [e.obj for e in catalog_12 if e.obj.order <= 8]
    for i in range(60):
        pool = graph_pool if i % 2 else group_pool
        a, b = r.choice(pool), r.choice(pool)
        cls = r.choice(("hom", "epi", "mono"))
        spec = hl.OrbitSpec(r.choice(("precompose", "postcompose")), "aut")
        assert hl.orbit_count(a, b, cls, spec) == orbit_count_by_fixed_points(
            a, b, cls, spec
        )


def test_is_isomorphic_examples(named_graphs, named_groups):
    assert not hl.is_isomorphic(named_graphs["C4"], named_graphs["P4"])
    assert hl.is_isomorphic(
        named_groups["C6"],
        hl.direct_product(named_groups["C2"], named_groups["C3"]),
    )
    assert hl.is_isomorphic(named_graphs["K3"], hl.build_graph(3, [(2, 1), (0, 2), (1, 0)]))
    assert not hl.is_isomorphic(named_groups["C4"], named_groups["V4"])


def test_is_isomorphic_on_disjoint_unions(named_graphs):
    a = hl.disjoint_union(named_graphs["K3"], named_graphs["K2"])
    b = hl.disjoint_union(named_graphs["K2"], named_graphs["K3"])
    assert hl.is_isomorphic(a, b)
    c = hl.disjoint_union(named_graphs["P3"], named_graphs["K2"])
    assert not hl.is_isomorphic(a, c)


def test_iso_iff_positive_iso_count(loopy_graphs_4):
    r = rng(4)
    pool = list(loopy_graphs_4)
    for _ in range(120):
        a, b = r.choice(pool), r.choice(pool)
        assert (hl.count_morphisms(a, b, "iso") > 0) == hl.is_isomorphic(a, b)


def test_canonical_key_iff_isomorphic(loopy_graphs_4, catalog_12):
    # corpus objects are canonical-deduped, so keys must be pairwise distinct
    keys = [hl.canonical_key(g) for g in loopy_graphs_4]
    assert len(set(keys)) == len(keys)
    r = rng(5)
    pool = list(loopy_graphs_4)
    for _ in range(100):
        g = r.choice(pool)
        perm = list(range(g.vertex_count))
        r.shuffle(perm)
        relabeled = hl.build_graph(
            g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges]
        )
        assert hl.canonical_key(relabeled) == hl.canonical_key(g)
    group_keys = [e.canonical_key for e in catalog_12]
    assert len(set(group_keys)) == len(group_keys)


def test_canonical_key_fixed_for_empty():
    assert hl.canonical_key(hl.EMPTY_GRAPH) == hl.canonical_key(hl.build_graph(0, []))


def test_canonical_key_capability_bound():
    with pytest.raises(CapabilityError):
        hl.canonical_key(hl.build_graph(11, []))


def test_object_from_key_roundtrip(loopy_graphs_4, catalog_12):
    for g in loopy_graphs_4[:40]:
        back = object_from_key(hl.canonical_key(g))
        assert hl.canonical_key(back) == hl.canonical_key(g)
    for e in catalog_12[:8]:
        back = object_from_key(e.canonical_key)
        assert hl.canonical_key(back) == e.canonical_key


def test_hopfian_reports(named_graphs, named_groups):
    rep = hl.hopfian_report(named_graphs["K3"])
    assert rep["endo_epi"] == rep["endo_iso"] == 6
    rep = hl.hopfian_report(named_groups["C4"])
    assert rep["endo_mono"] == rep["endo_iso"] == 2
    rep = hl.hopfian_report(named_graphs["K1"])
    assert rep["endo_iso"] == 1 and rep["hopfian"] and rep["co_hopfian"]


def test_counting_laws_for_coproduct_and_product(loopy_graphs_4):
    r = rng(6)
    pool = [g for g in loopy_graphs_4 if g.vertex_count <= 3]
    for _ in range(25):
        a, b, c = r.choice(pool), r.choice(pool), r.choice(pool)
        assert hl.count_morphisms(hl.disjoint_union(a, b), c) == hl.count_morphisms(
            a, c
        ) * hl.count_morphisms(b, c)
        assert hl.count_morphisms(c, hl.tensor_product(a, b)) == hl.count_morphisms(
            c, a
        ) * hl.count_morphisms(c, b)


def test_group_product_counting_law(catalog_12):
    r = rng(7)
    pool = [e.obj for e in catalog_12 if e.obj.order <= 6]
    for _ in range(15):
        a, b, c = r.choice(pool), r.choice(pool), r.choice(pool)
        assert hl.count_morphisms(c, hl.direct_product(a, b)) == hl.count_morphisms(
            c, a
        ) * hl.count_morphisms(c, b)
