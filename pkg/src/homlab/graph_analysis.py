"""Graph-side applications: corpora, profiles, colouring polynomials.

The chromatic and Tutte polynomials are computed by deletion-contraction
and act as oracles independent of the homomorphism search engine; the
two are cross-checked against each other and against hom counts into
complete graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapabilityError, FormatError
from .graphs import (
    Graph,
    complete_graph,
    connected_components,
    subgraph,
)
from .homsearch import canonical_key, count_morphisms, is_isomorphic, object_sort_key

CORPUS_VERTEX_MAX = 6  # edge-subset enumeration; 2^(n(n+1)/2) graphs at n


# ---------------------------------------------------------------------------
# corpus generation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def all_graphs(max_vertices: int, loops: bool = True):
    """One representative per isomorphism class, all graphs <= max_vertices.

    Edge-subset enumeration with canonical-key dedup, sorted by
    (vertex count, canonical key).  The empty graph is included: it is
    the initial object of the category.
    """
    if max_vertices > CORPUS_VERTEX_MAX:
        raise CapabilityError(
            f"graph corpus capped at {CORPUS_VERTEX_MAX} vertices, got {max_vertices}"
        )
    out = []
    for n in range(max_vertices + 1):
        pairs = [(u, v) for u in range(n) for v in range(u, n) if loops or u != v]
        seen = {}
        for mask in range(1 << len(pairs)):
            edges = frozenset(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
            g = Graph(n, edges)
            key = canonical_key(g)
            if key not in seen:
                seen[key] = g
        out.extend(g for _, g in sorted(seen.items()))
    return tuple(out)


# ---------------------------------------------------------------------------
# test families and profiles
# ---------------------------------------------------------------------------


def complete_family(k_max: int):
    """K_k^l for k = 1..k_max and l in {0, 1}, ordered by (k, l).

    Only l in {0, 1} is representable without multigraphs; hom counts
    into a graph cannot see more than one loop per vertex anyway.
    """
    out = []
    for k in range(1, k_max + 1):
        for l in (0, 1):
            out.append(complete_graph(k, l))
    return tuple(out)


def degeneracy(g: Graph) -> int:
    """Least k such that every subgraph has a vertex of degree <= k.

    Computed by iterated minimum-degree peeling; a loop adds 2 to the
    degree of its vertex.
    """
    remaining = set(range(g.vertex_count))
    edges = set(g.edges)
    best = 0
    while remaining:
        deg = {v: 0 for v in remaining}
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        v = min(remaining, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        remaining.discard(v)
        edges = {e for e in edges if v not in e}
    return best


def degenerate_family(max_vertices: int, k: int = 2, loops: bool = True):
    """All graphs up to max_vertices with degeneracy <= k."""
    return tuple(g for g in all_graphs(max_vertices, loops) if degeneracy(g) <= k)


def hom_to_family(max_vertices: int, gamma: Graph, loops: bool = True):
    """All graphs up to max_vertices admitting a homomorphism to gamma."""
    return tuple(
        g for g in all_graphs(max_vertices, loops) if count_morphisms(g, gamma) > 0
    )


@dataclass(frozen=True)
class Profile:
    graph: Graph
    family: tuple
    side: str  # left: counts INTO graph; right: counts FROM graph
    values: tuple


def profile(g: Graph, family, side: str) -> Profile:
    """Exact hom-count profile of g against an ordered test family."""
    if side not in ("left", "right"):
        raise FormatError(f"side must be 'left' or 'right', got {side!r}")
    family = tuple(family)
    if side == "left":
        values = tuple(count_morphisms(t, g) for t in family)
    else:
        values = tuple(count_morphisms(g, t) for t in family)
    return Profile(g, family, side, values)


def lovasz_check(g1: Graph, g2: Graph, n_bound: int) -> dict:
    """Compare left and right profiles over all graphs up to n_bound.

    For non-isomorphic inputs reports the first distinguishing test on
    each side (or None if the bound is too small); for isomorphic inputs
    asserts full equality of both profiles.
    """
    family = all_graphs(n_bound, loops=True)
    iso = is_isomorphic(g1, g2)
    found = {}
    for side in ("left", "right"):
        hit = None
        for idx, t in enumerate(family):
            if side == "left":
                c1, c2 = count_morphisms(t, g1), count_morphisms(t, g2)
            else:
                c1, c2 = count_morphisms(g1, t), count_morphisms(g2, t)
            if c1 != c2:
                hit = {"index": idx, "witness": t, "counts": (c1, c2)}
                break
        found[side] = hit
    if iso and (found["left"] or found["right"]):
        from .errors import VerificationError

        raise VerificationError(
            "isomorphic graphs produced different profiles", found
        )
    return {
        "isomorphic": iso,
        "n_bound": n_bound,
        "family_size": len(family),
        "left": found["left"],
        "right": found["right"],
    }


# ---------------------------------------------------------------------------
# chromatic polynomial (deletion-contraction oracle)
# ---------------------------------------------------------------------------


def poly_add(p, q):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_sub(p, q):
    return poly_add(p, tuple(-c for c in q))


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_eval(p, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def _contract_simple(g: Graph, u, v):
    """Merge v into u, dropping the contracted edge and parallel duplicates."""
    blocks = []
    for w in range(g.vertex_count):
        if w == v:
            blocks.append(u if u < v else u - 1)
        else:
            blocks.append(w if w < v else w - 1)
    edges = set()
    for a, b in g.edges:
        x, y = blocks[a], blocks[b]
        if (a, b) == tuple(sorted((u, v))):
            continue
        edges.add((x, y) if x <= y else (y, x))
    return Graph(g.vertex_count - 1, frozenset(edges))


_chromatic_memo = {}


def chromatic_polynomial(g: Graph):
    """Coefficient tuple of the chromatic polynomial, low degree first.

    Deletion-contraction within simple graphs; a loop anywhere makes the
    polynomial zero.  Independent of the hom-count engine: the two are
    required to agree on |Hom(G, K_k)| = P(G; k).
    """
    if g.loop_mask:
        return ()
    key = canonical_key(g)
    hit = _chromatic_memo.get(key)
    if hit is not None:
        return hit
    comps = connected_components(g)
    if len(comps) > 1:
        out = (1,)
        for comp in comps:
            out = poly_mul(out, chromatic_polynomial(subgraph(g, comp)))
    elif not g.edges:
        # connected and edgeless: zero or one vertex
        out = (0, 1) if g.vertex_count == 1 else (1,)
    else:
        e = min(g.edges)
        deleted = Graph(g.vertex_count, g.edges - {e})
        contracted = _contract_simple(g, *e)
        out = poly_sub(chromatic_polynomial(deleted), chromatic_polynomial(contracted))
    _chromatic_memo[key] = out
    return out


# ---------------------------------------------------------------------------
# Tutte polynomial (deletion-contraction on an internal multigraph)
# ---------------------------------------------------------------------------
#
# Contraction creates parallel edges that matter for the Tutte recursion,
# so internally edges live in a multiset; that representation never
# escapes this module.


def _multi_canon(edges):
    """Canonical form of a multigraph edge tuple: drop isolated vertices,
    minimize over vertex relabelings (brute force; the recursion only
    sees small graphs)."""
    import itertools

    touched = sorted({v for e in edges for v in e})
    relab = {v: i for i, v in enumerate(touched)}
    edges = tuple(
        sorted(tuple(sorted((relab[u], relab[v]))) for u, v in edges)
    )
    k = len(touched)
    if k <= 1:
        return k, edges
    best = None
    for perm in itertools.permutations(range(k)):
        cand = tuple(
            sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges)
        )
        if best is None or cand < best:
            best = cand
    return k, best


def _is_bridge(edges, e):
    """Non-loop edge e with multiplicity 1 whose removal disconnects its ends."""
    u, v = e
    if u == v or edges.count(e) > 1:
        return False
    rest = list(edges)
    rest.remove(e)
    seen = {u}
    stack = [u]
    adj = {}
    for a, b in rest:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    while stack:
        x = stack.pop()
        if x == v:
            return False
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return True


def bipoly_scale(p, di, dj):
    return {(i + di, j + dj): c for (i, j), c in p.items()}


def bipoly_add(p, q):
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
        if out[k] == 0:
            del out[k]
    return out


def bipoly_eval(p, x, y):
    return sum(c * x**i * y**j for (i, j), c in p.items())


_tutte_memo = {}


def _tutte_multi(edges):
    """Tutte polynomial of a multigraph given as a sorted edge tuple."""
    if not edges:
        return {(0, 0): 1}
    key = _multi_canon(edges)
    hit = _tutte_memo.get(key)
    if hit is not None:
        return hit
    loops = [e for e in edges if e[0] == e[1]]
    if loops:
        rest = list(edges)
        for e in loops:
            rest.remove(e)
        out = bipoly_scale(_tutte_multi(tuple(rest)), 0, len(loops))
    else:
        e = edges[0]
        rest = list(edges)
        rest.remove(e)
        if _is_bridge(list(edges), e):
            u, v = e
            contracted = tuple(
                sorted(
                    tuple(sorted((u if x == v else x, u if y == v else y)))
                    for x, y in rest
                )
            )
            out = bipoly_scale(_tutte_multi(contracted), 1, 0)
        else:
            deleted = _tutte_multi(tuple(sorted(rest)))
            u, v = e
            contracted = tuple(
                sorted(
                    tuple(sorted((u if x == v else x, u if y == v else y)))
                    for x, y in rest
                )
            )
            out = bipoly_add(deleted, _tutte_multi(contracted))
    _tutte_memo[key] = out
    return out


def tutte_polynomial(g: Graph) -> dict:
    """Tutte polynomial as {(x_power, y_power): coefficient}.

    Isolated vertices do not contribute.  Loops in the input contribute
    y factors, exactly as the recursion's loop case.
    """
    return dict(_tutte_multi(tuple(sorted(g.edges))))


def graph_rank(g: Graph) -> int:
    """|V| - number of connected components."""
    return g.vertex_count - len(connected_components(g))


def tutte_profile_equivalence(g1: Graph, g2: Graph, k_max: int) -> dict:
    """Same Tutte polynomial vs same right profile against K_k^l.

    The family ranges over k = 1..k_max and l in {0, 1} (the simple-graph
    restriction of the looped complete graphs), ordered by (k, l); the
    report carries the first differing (k, l) if any.
    """
    t1, t2 = tutte_polynomial(g1), tutte_polynomial(g2)
    family = complete_family(k_max)
    p1 = profile(g1, family, "right")
    p2 = profile(g2, family, "right")
    first_diff = None
    for idx, (a, b) in enumerate(zip(p1.values, p2.values)):
        if a != b:
            k, l = idx // 2 + 1, idx % 2
            first_diff = {"k": k, "l": l, "counts": (a, b)}
            break
    return {
        "k_max": k_max,
        "loop_exponents": (0, 1),
        "tutte_equal": t1 == t2,
        "profile_equal": first_diff is None,
        "first_profile_difference": first_diff,
    }
