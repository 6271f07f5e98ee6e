import pytest

import homlab as hl
from homlab.errors import FormatError
from homlab.morphisms import Morphism, identity_morphism


def test_graph_hom_verified(named_graphs):
    p3, k2 = named_graphs["P3"], named_graphs["K2"]
    m = Morphism(p3, k2, (0, 1, 0), "hom")
    assert m(1) == 1
    with pytest.raises(FormatError):
        Morphism(p3, k2, (0, 0, 0), "hom")  # edge collapses without a loop


def test_graph_epi_needs_edge_surjectivity(named_graphs):
    k2 = named_graphs["K2"]
    two_k1 = named_graphs["2K1"]
    # identity on vertices is a hom 2K1 -> K2, vertex-surjective but not edge-surjective
    m = Morphism(two_k1, k2, (0, 1), "hom")
    assert m.cls == "hom"
    with pytest.raises(FormatError):
        Morphism(two_k1, k2, (0, 1), "epi")
    with pytest.raises(FormatError):
        Morphism(two_k1, k2, (0, 1), "iso")
    Morphism(two_k1, k2, (0, 1), "mono")  # injective hom is fine


def test_group_hom_verified(named_groups):
    z4, z2 = named_groups["C4"], named_groups["C2"]
    m = Morphism(z4, z2, (0, 1, 0, 1), "epi")
    assert m.cls == "epi"
    with pytest.raises(FormatError):
        Morphism(z4, z2, (0, 1, 1, 0), "hom")


def test_mixed_kinds_rejected(named_graphs, named_groups):
    with pytest.raises(TypeError):
        Morphism(named_graphs["K2"], named_groups["C2"], (0, 0), "hom")


def test_compose_and_identity(named_graphs):
    p3, k2 = named_graphs["P3"], named_graphs["K2"]
    f = Morphism(p3, k2, (0, 1, 0), "hom")
    i = identity_morphism(k2)
    assert i.compose(f).map == f.map
    assert i.is_identity()


def test_compose_class_propagation(named_groups):
    z4 = named_groups["C4"]
    z2 = named_groups["C2"]
    p = Morphism(z4, z2, (0, 1, 0, 1), "epi")
    q = Morphism(z2, z2, (0, 1), "epi")
    assert q.compose(p).cls == "epi"


def test_factorize_graph(named_graphs):
    p3, k2 = named_graphs["P3"], named_graphs["K2"]
    f = Morphism(p3, k2, (0, 1, 0), "hom")
    p, image, i = hl.epi_mono_factorize(f)
    assert p.cls == "epi" and i.cls == "mono"
    assert hl.is_isomorphic(image, k2)  # proper 2-coloring is already onto
    assert tuple(i.map[x] for x in p.map) == f.map


def test_factorize_constant_map(named_graphs):
    k1, k2 = named_graphs["K1"], named_graphs["K2"]
    f = Morphism(k1, k2, (1,), "hom")
    p, image, i = hl.epi_mono_factorize(f)
    assert image.vertex_count == 1 and not image.edges


def test_factorize_group_doubling(named_groups):
    z4 = named_groups["C4"]
    f = Morphism(z4, z4, (0, 2, 0, 2), "hom")
    p, image, i = hl.epi_mono_factorize(f)
    assert image.order == 2
    assert hl.is_isomorphic(image, hl.cyclic_group(2))
    assert tuple(i.map[x] for x in p.map) == f.map
