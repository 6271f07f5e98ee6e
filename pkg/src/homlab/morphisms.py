"""Verified morphisms between graphs or between groups.

A morphism is a total map on vertices/elements together with the class
it was checked against.  Construction fails unless the map really is a
homomorphism of the claimed class, so a tagged Morphism can be trusted.

Class semantics in this laboratory:
  groups: epi = surjective hom, mono = injective hom;
  graphs: mono = injective hom, epi = hom surjective on vertices AND on
  edges.  The stronger graph epi is what makes image factorization
  unique; every use of quotients on the graph side refers to it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError
from .graphs import Graph
from .groups import FiniteGroup

CLASSES = ("hom", "epi", "mono", "iso")


def kind_of(obj):
    if isinstance(obj, Graph):
        return "graph"
    if isinstance(obj, FiniteGroup):
        return "group"
    raise TypeError(f"not a graph or group: {obj!r}")


def same_kind(a, b):
    ka, kb = kind_of(a), kind_of(b)
    if ka != kb:
        raise TypeError(f"mixed kinds: {ka} vs {kb}")
    return ka


def size_of(obj):
    return obj.vertex_count if isinstance(obj, Graph) else obj.order


def is_graph_hom(source: Graph, target: Graph, mapping) -> bool:
    masks = target.adjacency_masks
    for u, v in source.edges:
        fu, fv = mapping[u], mapping[v]
        if not masks[fu] >> fv & 1:
            return False
    return True


def is_group_hom(source: FiniteGroup, target: FiniteGroup, mapping) -> bool:
    st, tt = source.table, target.table
    if mapping[source.identity] != target.identity:
        return False
    for a in range(source.order):
        fa = mapping[a]
        row = st[a]
        trow = tt[fa]
        for b in range(source.order):
            if mapping[row[b]] != trow[mapping[b]]:
                return False
    return True


def _graph_edge_image(source: Graph, mapping):
    out = set()
    for u, v in source.edges:
        fu, fv = mapping[u], mapping[v]
        out.add((fu, fv) if fu <= fv else (fv, fu))
    return out


def morphism_class_holds(source, target, mapping, cls) -> bool:
    """Check `mapping` is a homomorphism satisfying the given class."""
    kind = same_kind(source, target)
    n = size_of(source)
    if len(mapping) != n or any(not 0 <= x < size_of(target) for x in mapping):
        return False
    if kind == "graph":
        if not is_graph_hom(source, target, mapping):
            return False
    else:
        if not is_group_hom(source, target, mapping):
            return False
    if cls == "hom":
        return True
    injective = len(set(mapping)) == n
    if cls == "mono":
        return injective
    if kind == "graph":
        vertex_surj = len(set(mapping)) == target.vertex_count
        edge_surj = _graph_edge_image(source, mapping) == set(target.edges)
        surjective = vertex_surj and edge_surj
    else:
        surjective = len(set(mapping)) == target.order
    if cls == "epi":
        return surjective
    if cls == "iso":
        return injective and surjective
    raise FormatError(f"unknown morphism class {cls!r}")


@dataclass(frozen=True)
class Morphism:
    source: object
    target: object
    map: tuple
    cls: str = "hom"

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise FormatError(f"unknown morphism class {self.cls!r}")
        object.__setattr__(self, "map", tuple(self.map))
        if not morphism_class_holds(self.source, self.target, self.map, self.cls):
            raise FormatError(
                f"map {self.map} is not a verified {self.cls} between the given objects"
            )

    def __call__(self, x):
        return self.map[x]

    def compose(self, first: "Morphism") -> "Morphism":
        """self o first (apply `first`, then self)."""
        if first.target != self.source:
            raise FormatError("composition mismatch: inner target != outer source")
        new_map = tuple(self.map[x] for x in first.map)
        cls = "hom"
        if self.cls == first.cls and self.cls in ("mono", "epi", "iso"):
            cls = self.cls  # both classes are closed under composition
        return Morphism(first.source, self.target, new_map, cls)

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            self.map[i] == i for i in range(len(self.map))
        )


def identity_morphism(obj) -> Morphism:
    return Morphism(obj, obj, tuple(range(size_of(obj))), "iso")
