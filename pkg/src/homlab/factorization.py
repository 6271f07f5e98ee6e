"""Subobjects, quotients, their posets, and the counting decompositions.

Subobjects and quotients are materialized concretely, matching the sums
they feed: a graph subobject is an embedded subgraph (vertex subset plus
edge subset inside it), a graph quotient is a vertex partition; a group
subobject is a subgroup as a subset, a group quotient is a normal
subgroup.  Entries with isomorphic carriers but different embeddings are
distinct on purpose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapabilityError, FormatError, VerificationError
from .graphs import Graph, quotient_graph
from .groups import FiniteGroup, subgroup_carrier, subgroup_closure
from .homsearch import OrbitSpec, canonical_key, orbit_count
from .morphisms import Morphism, kind_of, same_kind

SUBOBJECT_VERTEX_MAX = 6
PARTITION_VERTEX_MAX = 12
GROUP_SIZE_MAX = 64


@dataclass(frozen=True)
class SubQuotEntry:
    kind: str  # "subobject" | "quotient"
    carrier: object
    witness: Morphism  # mono carrier -> parent, or epi parent -> carrier
    proper: bool


# ---------------------------------------------------------------------------
# subobjects
# ---------------------------------------------------------------------------


def _graph_subobjects(d: Graph, max_vertices):
    if d.vertex_count > max_vertices:
        raise CapabilityError(
            f"subobject enumeration capped at {max_vertices} vertices, "
            f"got {d.vertex_count}"
        )
    n = d.vertex_count
    total_edges = len(d.edges)
    out = []
    for r in range(n + 1):
        for vs in itertools.combinations(range(n), r):
            inside = [e for e in d.sorted_edges if e[0] in vs and e[1] in vs]
            pos = {v: i for i, v in enumerate(vs)}
            for k in range(len(inside) + 1):
                for picked in itertools.combinations(inside, k):
                    edges = frozenset(
                        (pos[u], pos[v]) for u, v in picked
                    )
                    carrier = Graph(r, edges)
                    witness = Morphism(carrier, d, vs, "mono")
                    proper = not (r == n and k == total_edges)
                    out.append(SubQuotEntry("subobject", carrier, witness, proper))
    return out


@lru_cache(maxsize=None)
def _subgroups(g: FiniteGroup):
    """All subgroups as sorted member tuples, by closure-extension search."""
    trivial = frozenset({g.identity})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        h = frontier.pop()
        for x in range(g.order):
            if x not in h:
                h2 = subgroup_closure(g, h | {x})
                if h2 not in found:
                    found.add(h2)
                    frontier.append(h2)
    return tuple(sorted((tuple(sorted(h)) for h in found), key=lambda t: (len(t), t)))


def _group_subobjects(d: FiniteGroup, max_order):
    if d.order > max_order:
        raise CapabilityError(
            f"subgroup enumeration capped at order {max_order}, got {d.order}"
        )
    out = []
    for members in _subgroups(d):
        carrier, mem = subgroup_carrier(d, members)
        witness = Morphism(carrier, d, mem, "mono")
        out.append(SubQuotEntry("subobject", carrier, witness, len(mem) < d.order))
    return out


def subobjects(d, max_size=None):
    """All subobjects of d: embedded subgraphs, or subgroups as subsets.

    These are exactly the isomorphism classes of monomorphisms into d;
    each entry carries its inclusion.
    """
    if kind_of(d) == "graph":
        return _graph_subobjects(d, SUBOBJECT_VERTEX_MAX if max_size is None else max_size)
    return _group_subobjects(d, GROUP_SIZE_MAX if max_size is None else max_size)


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


def _set_partitions(n):
    """Block-index tuples (restricted growth strings) in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, mx):
        if i == n:
            yield tuple(a)
            return
        for v in range(mx + 2):
            a[i] = v
            yield from rec(i + 1, max(mx, v))

    yield from rec(1, 0)


def _graph_quotients(c: Graph, max_vertices):
    if c.vertex_count > max_vertices:
        raise CapabilityError(
            f"partition enumeration capped at {max_vertices} vertices, "
            f"got {c.vertex_count}"
        )
    out = []
    for blocks in _set_partitions(c.vertex_count):
        carrier = quotient_graph(c, blocks)
        witness = Morphism(c, carrier, blocks, "epi")
        proper = carrier.vertex_count < c.vertex_count
        out.append(SubQuotEntry("quotient", carrier, witness, proper))
    return out


def normal_subgroups(g: FiniteGroup):
    """Member tuples of the normal subgroups of g."""
    t = g.table
    inv = g.inverses
    out = []
    for members in _subgroups(g):
        mem = set(members)
        if all(t[t[x][m]][inv[x]] in mem for x in range(g.order) for m in members):
            out.append(members)
    return out


def quotient_group(g: FiniteGroup, members):
    """(carrier, projection map) for the quotient by a normal subgroup."""
    t = g.table
    coset_index = {}
    reps = []
    for x in range(g.order):
        if x in coset_index:
            continue
        idx = len(reps)
        reps.append(x)
        for m in members:
            coset_index[t[x][m]] = idx
    k = len(reps)
    table = tuple(
        tuple(coset_index[t[reps[i]][reps[j]]] for j in range(k)) for i in range(k)
    )
    carrier = FiniteGroup(k, table, coset_index[g.identity])
    return carrier, tuple(coset_index[x] for x in range(g.order))


def _group_quotients(c: FiniteGroup, max_order):
    if c.order > max_order:
        raise CapabilityError(
            f"quotient enumeration capped at order {max_order}, got {c.order}"
        )
    out = []
    for members in normal_subgroups(c):
        carrier, proj = quotient_group(c, members)
        witness = Morphism(c, carrier, proj, "epi")
        out.append(SubQuotEntry("quotient", carrier, witness, len(members) > 1))
    return out


def quotients(c, max_size=None):
    """All quotients of c: vertex partitions, or normal-subgroup quotients."""
    if kind_of(c) == "graph":
        return _graph_quotients(c, PARTITION_VERTEX_MAX if max_size is None else max_size)
    return _group_quotients(c, GROUP_SIZE_MAX if max_size is None else max_size)


# ---------------------------------------------------------------------------
# posets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poset:
    elements: tuple
    leq: tuple  # leq[i][j] == True iff elements[i] <= elements[j]

    def minimal_elements(self):
        n = len(self.elements)
        return [
            i
            for i in range(n)
            if not any(self.leq[j][i] and j != i for j in range(n))
        ]


def _entry_order_data(entry: SubQuotEntry):
    if entry.kind == "subobject":
        if kind_of(entry.carrier) == "graph":
            vs = set(entry.witness.map)
            edges = frozenset(
                tuple(sorted((entry.witness.map[u], entry.witness.map[v])))
                for u, v in entry.carrier.edges
            )
            return ("sub-graph", vs, edges)
        return ("sub-group", set(entry.witness.map), None)
    if kind_of(entry.carrier) == "graph":
        return ("quot-graph", entry.witness.map, None)
    e = entry.witness.source.identity
    kernel = frozenset(
        x for x in range(entry.witness.source.order)
        if entry.witness.map[x] == entry.witness.map[e]
    )
    return ("quot-group", kernel, None)


def _entry_leq(da, db):
    """entry_a <= entry_b in the witness-commuting order."""
    tag_a, x_a, y_a = da
    tag_b, x_b, y_b = db
    if tag_a != tag_b:
        raise FormatError("poset entries must all be of one kind over one parent")
    if tag_a == "sub-graph":
        return x_a <= x_b and y_a <= y_b
    if tag_a == "sub-group":
        return x_a <= x_b
    if tag_a == "quot-graph":
        # a <= b iff b's partition refines a's: b-equal vertices are a-equal
        blocks = {}
        for v, bb in enumerate(x_b):
            blocks.setdefault(bb, set()).add(x_a[v])
        return all(len(s) == 1 for s in blocks.values())
    return x_a >= x_b  # quotient by a bigger kernel sits lower


def build_poset(entries) -> Poset:
    """Partial order on subobjects/quotients of one parent object.

    Ordered by existence of a morphism between carriers commuting with
    the witnesses (containment of embedded subobjects, coarsening of
    partitions, containment of kernels).  The axioms are verified and a
    violation is an internal-consistency error: with this order,
    antisymmetry is exactly what the Hopfian/co-Hopfian lemmas grant.
    """
    entries = tuple(entries)
    if not entries:
        return Poset((), ())
    kinds = {e.kind for e in entries}
    if len(kinds) != 1:
        raise FormatError("poset entries must share one kind")
    parents = {
        e.witness.target if e.kind == "subobject" else e.witness.source
        for e in entries
    }
    if len(parents) != 1:
        raise FormatError("poset entries must share one parent object")
    data = [_entry_order_data(e) for e in entries]
    n = len(entries)
    leq = tuple(
        tuple(_entry_leq(data[i], data[j]) for j in range(n)) for i in range(n)
    )
    for i in range(n):
        if not leq[i][i]:
            raise VerificationError("poset reflexivity failed")
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise VerificationError("poset antisymmetry failed")
            if leq[i][j]:
                for k in range(n):
                    if leq[j][k] and not leq[i][k]:
                        raise VerificationError("poset transitivity failed")
    return Poset(entries, leq)


# ---------------------------------------------------------------------------
# decomposition identities
# ---------------------------------------------------------------------------


def verify_decomposition(c, d, side, orbits=("trivial", "aut"), max_size=None) -> dict:
    """Check a counting decomposition exactly and report every summand.

    side "left":  hom count c -> d equals the sum over subobjects d' of d
    of the epi counts c -> d', with the chosen subgroup of Aut(c) acting
    by precomposition throughout.
    side "right": hom count c -> d equals the sum over quotients c' of c
    of the mono counts c' -> d, with the chosen subgroup of Aut(d) acting
    by postcomposition throughout.

    A mismatch falsifies the engine, not the identity: it raises
    VerificationError carrying the full report.
    """
    same_kind(c, d)
    if side not in ("left", "right"):
        raise FormatError(f"side must be 'left' or 'right', got {side!r}")
    entries = subobjects(d, max_size) if side == "left" else quotients(c, max_size)
    checks = []
    for subgroup in orbits:
        if side == "left":
            spec = OrbitSpec("precompose", subgroup)
            lhs = orbit_count(c, d, "hom", spec)
            values = [orbit_count(c, e.carrier, "epi", spec) for e in entries]
        else:
            spec = OrbitSpec("postcompose", subgroup)
            lhs = orbit_count(c, d, "hom", spec)
            values = [orbit_count(e.carrier, d, "mono", spec) for e in entries]
        checks.append(
            {
                "orbit_subgroup": subgroup,
                "lhs": lhs,
                "rhs": sum(values),
                "equal": lhs == sum(values),
                "summands": [
                    {
                        "carrier_key": canonical_key(e.carrier).hex(),
                        "proper": e.proper,
                        "value": v,
                    }
                    for e, v in zip(entries, values)
                ],
            }
        )
    report = {
        "side": side,
        "entry_count": len(entries),
        "checks": checks,
        "equal": all(ch["equal"] for ch in checks),
    }
    if not report["equal"]:
        raise VerificationError("decomposition identity failed", report)
    return report
