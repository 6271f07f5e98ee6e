"""Shared fixtures: small named objects and an independent map oracle.

The oracle enumerates every candidate map and filters by definition;
it shares no code with the search engine beyond the class predicate.
"""

import itertools
import random

import pytest

import homlab as hl
from homlab.morphisms import morphism_class_holds, size_of


def brute_force_maps(a, b, cls):
    """All qualifying maps by exhaustive candidate filtering (the oracle)."""
    out = []
    for cand in itertools.product(range(size_of(b)), repeat=size_of(a)):
        if morphism_class_holds(a, b, cand, cls):
            out.append(cand)
    return sorted(out)


def rng(salt=0):
    return random.Random(20260810 + salt)


@pytest.fixture(scope="session")
def named_graphs():
    return {
        "empty": hl.EMPTY_GRAPH,
        "K1": hl.complete_graph(1),
        "K1_loop": hl.complete_graph(1, 1),
        "K2": hl.complete_graph(2),
        "K3": hl.complete_graph(3),
        "K4": hl.complete_graph(4),
        "P3": hl.build_graph(3, [(0, 1), (1, 2)]),
        "P4": hl.build_graph(4, [(0, 1), (1, 2), (2, 3)]),
        "C4": hl.build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
        "star4": hl.build_graph(4, [(0, 1), (0, 2), (0, 3)]),
        "2K1": hl.build_graph(2, []),
    }


@pytest.fixture(scope="session")
def named_groups():
    z2 = hl.cyclic_group(2)
    return {
        "C1": hl.trivial_group(),
        "C2": z2,
        "C3": hl.cyclic_group(3),
        "C4": hl.cyclic_group(4),
        "C5": hl.cyclic_group(5),
        "C6": hl.cyclic_group(6),
        "V4": hl.direct_product(z2, z2),
        "S3": hl.symmetric_group(3),
        "D4": hl.dihedral_group(4),
        "Q8": hl.dicyclic_group(2),
        "A4": hl.alternating_group(4),
    }


@pytest.fixture(scope="session")
def loopy_graphs_4():
    return hl.all_graphs(4, loops=True)


@pytest.fixture(scope="session")
def catalog_12():
    return hl.catalog_groups(12)
