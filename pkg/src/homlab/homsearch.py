"""Exact search engine for morphism sets between two graphs or two groups.

Everything here is exhaustive and exact: counts are plain Python
integers (arbitrary precision), enumeration orders are fixed, and there
is no floating point anywhere.  Two deliberately separate code paths
exist for counting and enumeration so that one can cross-check the
other.

Graph maps are found by depth-first assignment in a max-adjacency
vertex order with bitmask forward pruning; group maps by assigning
images of a greedy generating sequence and closing the partial map
under products, pruning on order compatibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapabilityError, FormatError, VerificationError
from .graphs import Graph, connected_components, subgraph
from .groups import FiniteGroup, subgroup_closure
from .morphisms import CLASSES, Morphism, kind_of, same_kind, size_of

GRAPH_KEY_MAX_VERTICES = 10
GROUP_KEY_MAX_ORDER = 64


# ---------------------------------------------------------------------------
# graph engine
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _graph_plan(g: Graph):
    """Assignment order maximizing adjacency to already-placed vertices.

    Returns (order, preds, loops): `preds[i]` lists the source vertices
    earlier in the order adjacent to order[i]; `loops[i]` flags a loop.
    """
    n = g.vertex_count
    masks = g.adjacency_masks
    degree = [masks[v].bit_count() for v in range(n)]
    placed_mask = 0
    order = []
    remaining = set(range(n))
    while remaining:
        v = max(
            remaining,
            key=lambda u: ((masks[u] & placed_mask).bit_count(), degree[u], -u),
        )
        order.append(v)
        placed_mask |= 1 << v
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    preds = tuple(
        tuple(u for u in order[:i] if masks[v] >> u & 1 and u != v)
        for i, v in enumerate(order)
    )
    loops = tuple(bool(g.loop_mask >> v & 1) for v in order)
    return tuple(order), preds, loops


def _graph_iso_precheck(a: Graph, b: Graph) -> bool:
    return (
        a.vertex_count == b.vertex_count
        and len(a.edges) == len(b.edges)
        and a.degree_sequence == b.degree_sequence
        and a.loop_count() == b.loop_count()
    )


def _count_graph_maps(a: Graph, b: Graph, cls: str) -> int:
    if cls == "iso":
        if not _graph_iso_precheck(a, b):
            return 0
        cls = "mono"  # injective hom + equal size and edge count = iso
    n, nb = a.vertex_count, b.vertex_count
    if cls == "mono" and n > nb:
        return 0
    if cls == "epi" and (nb > n or len(b.edges) > len(a.edges)):
        return 0
    if n == 0:
        return 1 if cls != "epi" or nb == 0 else 0
    if nb == 0:
        return 0

    order, preds, loops = _graph_plan(a)
    tadj = b.adjacency_masks
    tloop = b.loop_mask
    full = (1 << nb) - 1
    mono = cls == "mono"
    epi = cls == "epi"
    a_edges = a.sorted_edges
    eb = len(b.edges)
    mapping = [0] * n

    def rec(i, used):
        if i == n:
            if epi:
                if used != full:
                    return 0
                image = set()
                for u, v in a_edges:
                    fu, fv = mapping[u], mapping[v]
                    image.add((fu, fv) if fu <= fv else (fv, fu))
                if len(image) != eb:
                    return 0
            return 1
        if epi and nb - used.bit_count() > n - i:
            return 0
        v_src = order[i]
        cand = full
        if loops[i]:
            cand &= tloop
        for p in preds[i]:
            cand &= tadj[mapping[p]]
        if mono:
            cand &= ~used
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            mapping[v_src] = low.bit_length() - 1
            total += rec(i + 1, used | low)
        return total

    return rec(0, 0)


def _iter_graph_maps(a: Graph, b: Graph, cls: str):
    """Yield qualifying maps as tuples, in no particular order."""
    want_iso = cls == "iso"
    if want_iso:
        if not _graph_iso_precheck(a, b):
            return
        cls = "mono"
    n, nb = a.vertex_count, b.vertex_count
    if (cls == "mono" and n > nb) or (
        cls == "epi" and (nb > n or len(b.edges) > len(a.edges))
    ):
        return
    if n == 0:
        if cls != "epi" or nb == 0:
            yield ()
        return
    if nb == 0:
        return

    order, preds, loops = _graph_plan(a)
    tadj = b.adjacency_masks
    tloop = b.loop_mask
    full = (1 << nb) - 1
    mono = cls == "mono"
    epi = cls == "epi"
    a_edges = a.sorted_edges
    eb = len(b.edges)
    mapping = [0] * n

    def rec(i, used):
        if i == n:
            if epi:
                if used != full:
                    return
                image = set()
                for u, v in a_edges:
                    fu, fv = mapping[u], mapping[v]
                    image.add((fu, fv) if fu <= fv else (fv, fu))
                if len(image) != eb:
                    return
            yield tuple(mapping)
            return
        if epi and nb - used.bit_count() > n - i:
            return
        v_src = order[i]
        cand = full
        if loops[i]:
            cand &= tloop
        for p in preds[i]:
            cand &= tadj[mapping[p]]
        if mono:
            cand &= ~used
        while cand:
            low = cand & -cand
            cand ^= low
            mapping[v_src] = low.bit_length() - 1
            yield from rec(i + 1, used | low)

    yield from rec(0, 0)


# ---------------------------------------------------------------------------
# group engine
# ---------------------------------------------------------------------------


def _close_partial_map(f, known, start, atab, btab):
    """Extend a partial map to be closed under products; False on conflict.

    Every ordered pair of currently-known elements gets checked across
    the turn-based sweep, so once the map is total it is a verified
    homomorphism.
    """
    qi = start
    while qi < len(known):
        x = known[qi]
        fx = f[x]
        ax = atab[x]
        yi = 0
        while yi < len(known):
            y = known[yi]
            fy = f[y]
            z = ax[y]
            w = btab[fx][fy]
            if f[z] < 0:
                f[z] = w
                known.append(z)
            elif f[z] != w:
                return False
            z = atab[y][x]
            w = btab[fy][fx]
            if f[z] < 0:
                f[z] = w
                known.append(z)
            elif f[z] != w:
                return False
            yi += 1
        qi += 1
    return True


def _iter_group_maps(a: FiniteGroup, b: FiniteGroup, cls: str):
    if cls == "iso" and (a.order != b.order or a.order_profile != b.order_profile):
        return
    if cls == "mono" and a.order > b.order:
        return
    if cls == "epi" and b.order > a.order:
        return
    gens = a.generator_sequence
    atab, btab = a.table, b.table
    aorders, borders = a.element_orders, b.element_orders
    exact_order = cls in ("mono", "iso")  # injective homs preserve orders
    cands = []
    for g in gens:
        og = aorders[g]
        if exact_order:
            cands.append([h for h in range(b.order) if borders[h] == og])
        else:
            cands.append([h for h in range(b.order) if og % borders[h] == 0])

    n = a.order
    f0 = [-1] * n
    f0[a.identity] = b.identity
    known0 = [a.identity]

    def rec(gi, f, known):
        if gi == len(gens):
            m = tuple(f)
            if cls in ("mono", "iso") and len(set(m)) != n:
                return
            if cls == "epi" and len(set(m)) != b.order:
                return
            yield m
            return
        g = gens[gi]
        for h in cands[gi]:
            f2 = f[:]
            known2 = known[:]
            f2[g] = h
            known2.append(g)
            if _close_partial_map(f2, known2, len(known2) - 1, atab, btab):
                yield from rec(gi + 1, f2, known2)

    yield from rec(0, f0, known0)


def _count_group_maps(a, b, cls):
    return sum(1 for _ in _iter_group_maps(a, b, cls))


# ---------------------------------------------------------------------------
# public counting / enumeration
# ---------------------------------------------------------------------------


def _check_class(cls):
    if cls not in CLASSES:
        raise FormatError(f"unknown morphism class {cls!r}")


def iter_maps(a, b, cls="hom"):
    """Yield raw map tuples of the given class (engine order, no sort)."""
    _check_class(cls)
    kind = same_kind(a, b)
    if kind == "graph":
        yield from _iter_graph_maps(a, b, cls)
    else:
        yield from _iter_group_maps(a, b, cls)


@lru_cache(maxsize=None)
def _count_by_value(a, b, cls):
    if kind_of(a) == "graph":
        return _count_graph_maps(a, b, cls)
    return _count_group_maps(a, b, cls)


_class_count_cache = {}


def count_morphisms(a, b, cls="hom") -> int:
    """|Hom|, |Epi|, |Mono| or |Iso| between a and b, exactly.

    Counts are cached per isomorphism class (canonical keys) when the
    objects are within key bounds, and per value otherwise.
    """
    _check_class(cls)
    same_kind(a, b)
    try:
        key = (canonical_key(a), canonical_key(b), cls)
    except CapabilityError:
        return _count_by_value(a, b, cls)
    hit = _class_count_cache.get(key)
    if hit is None:
        hit = _count_by_value(a, b, cls)
        _class_count_cache[key] = hit
    return hit


@lru_cache(maxsize=None)
def _maps_sorted(a, b, cls):
    return tuple(sorted(iter_maps(a, b, cls)))


def enumerate_morphisms(a, b, cls="hom"):
    """All morphisms of the class, sorted lexicographically by map array.

    Hom sets can be large; they are enumerated afresh on every call,
    while epi/mono/iso sets are cached.
    """
    _check_class(cls)
    same_kind(a, b)
    if cls == "hom":
        maps = sorted(iter_maps(a, b, cls))
    else:
        maps = _maps_sorted(a, b, cls)
    return tuple(Morphism(a, b, m, cls) for m in maps)


def has_morphism(a, b, cls="hom") -> bool:
    """Early-exit existence test (does not enumerate the full set)."""
    _check_class(cls)
    same_kind(a, b)
    return next(iter(iter_maps(a, b, cls)), None) is not None


@lru_cache(maxsize=None)
def _aut_maps(a):
    return _maps_sorted(a, a, "iso")


def automorphisms(a):
    """All isomorphisms a -> a; contains the identity, closed under composition."""
    return tuple(Morphism(a, a, m, "iso") for m in _aut_maps(a))


# ---------------------------------------------------------------------------
# orbit counting
# ---------------------------------------------------------------------------


TRIVIAL_ORBIT = None  # sentinel documented below


@dataclass(frozen=True)
class OrbitSpec:
    """Which automorphism subgroup acts on the morphism set, and how.

    side: "precompose" (right action of a subgroup of Aut(source)) or
    "postcompose" (left action of a subgroup of Aut(target)).
    subgroup: "trivial", "aut" (the full automorphism group), or an
    explicit tuple of map tuples, which must form a subgroup and is
    verified.
    """

    side: str
    subgroup: object = "aut"

    def __post_init__(self):
        if self.side not in ("precompose", "postcompose"):
            raise FormatError(f"unknown action side {self.side!r}")
        if isinstance(self.subgroup, (list, tuple)):
            object.__setattr__(self, "subgroup", tuple(tuple(m) for m in self.subgroup))
        elif self.subgroup not in ("trivial", "aut"):
            raise FormatError(f"unknown subgroup spec {self.subgroup!r}")


def _resolve_subgroup(spec: OrbitSpec, a, b):
    carrier = a if spec.side == "precompose" else b
    n = size_of(carrier)
    if spec.subgroup == "trivial":
        return (tuple(range(n)),)
    if spec.subgroup == "aut":
        return _aut_maps(carrier)
    maps = spec.subgroup
    auts = set(_aut_maps(carrier))
    for m in maps:
        if m not in auts:
            raise FormatError(f"explicit orbit subgroup entry {m} is not an automorphism")
    group = set(maps)
    ident = tuple(range(n))
    if ident not in group:
        raise FormatError("explicit orbit subgroup misses the identity")
    for p in maps:
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        if tuple(inv) not in group:
            raise FormatError("explicit orbit subgroup not closed under inverse")
        for q in maps:
            if tuple(p[q[i]] for i in range(n)) not in group:
                raise FormatError("explicit orbit subgroup not closed under composition")
    return maps


def _orbit_reps(maps, subgroup, side):
    reps = set()
    if side == "precompose":
        for f in maps:
            reps.add(min(tuple(f[s[i]] for i in range(len(s))) for s in subgroup))
    else:
        for f in maps:
            reps.add(min(tuple(s[x] for x in f) for s in subgroup))
    return reps


_class_orbit_cache = {}


def orbit_count(a, b, cls="hom", spec: OrbitSpec | None = None) -> int:
    """Number of orbits of the morphism set under the chosen action.

    With a trivial subgroup this equals count_morphisms.  Orbits are
    found by direct partition (canonical minimum representative).
    Full-automorphism orbit counts are isomorphism invariants and are
    cached per class pair; explicit subgroups are not cacheable.
    """
    _check_class(cls)
    same_kind(a, b)
    if spec is None or spec.subgroup == "trivial":
        return count_morphisms(a, b, cls)
    if spec.subgroup == "aut":
        try:
            key = (canonical_key(a), canonical_key(b), cls, spec.side)
        except CapabilityError:
            key = None
        if key is not None and key in _class_orbit_cache:
            return _class_orbit_cache[key]
    else:
        key = None
    subgroup = _resolve_subgroup(spec, a, b)
    out = len(_orbit_reps(iter_maps(a, b, cls), subgroup, spec.side))
    if key is not None:
        _class_orbit_cache[key] = out
    return out


def orbit_count_by_fixed_points(a, b, cls="hom", spec: OrbitSpec | None = None) -> int:
    """The same orbit number via the fixed-point average (Burnside route).

    Kept independent of orbit_count's partitioning so the two can
    cross-check each other.
    """
    _check_class(cls)
    same_kind(a, b)
    if spec is None or spec.subgroup == "trivial":
        return sum(1 for _ in iter_maps(a, b, cls))
    subgroup = _resolve_subgroup(spec, a, b)
    maps = list(iter_maps(a, b, cls))
    total = 0
    if spec.side == "precompose":
        for s in subgroup:
            total += sum(1 for f in maps if all(f[s[i]] == f[i] for i in range(len(s))))
    else:
        for s in subgroup:
            total += sum(1 for f in maps if all(s[x] == x for x in set(f)))
    if total % len(subgroup):
        raise VerificationError(
            f"fixed-point sum {total} not divisible by subgroup order {len(subgroup)}"
        )
    return total // len(subgroup)


# ---------------------------------------------------------------------------
# isomorphism testing (independent of canonical keys)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _connected_iso(a: Graph, b: Graph) -> bool:
    return next(iter(_iter_graph_maps(a, b, "iso")), None) is not None


@lru_cache(maxsize=None)
def is_isomorphic(a, b) -> bool:
    """Existence of an isomorphism, by invariant screening then search.

    Graphs are split into connected components first, so disjoint
    unions of bounded pieces stay cheap at any total size.
    """
    kind = same_kind(a, b)
    if a == b:
        return True
    if kind == "group":
        if (
            a.order != b.order
            or a.order_profile != b.order_profile
            or a.is_abelian != b.is_abelian
        ):
            return False
        return next(iter(_iter_group_maps(a, b, "iso")), None) is not None
    if not _graph_iso_precheck(a, b):
        return False
    comps_a = [subgraph(a, c) for c in connected_components(a)]
    comps_b = [subgraph(b, c) for c in connected_components(b)]
    if len(comps_a) != len(comps_b):
        return False
    inv = lambda g: (g.vertex_count, len(g.edges), g.degree_sequence, g.loop_count())
    comps_a.sort(key=inv)
    comps_b.sort(key=inv)
    pool = list(comps_b)
    for x in comps_a:
        for i, y in enumerate(pool):
            if inv(x) == inv(y) and _connected_iso(x, y):
                del pool[i]
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# canonical keys
# ---------------------------------------------------------------------------


def _min_adjacency_rows(g: Graph):
    """Lexicographically minimal lower-triangular adjacency rows.

    Row i holds the bits towards the i earlier vertices of the ordering
    followed by the diagonal (loop) bit.  Branch-and-bound over vertex
    orderings; candidates are tried in increasing row order so the
    greedy descent seeds the bound.
    """
    n = g.vertex_count
    masks = g.adjacency_masks
    loops = g.loop_mask
    perm = []
    used = [False] * n
    cur = []
    best = None

    def rec(i):
        nonlocal best
        if i == n:
            if best is None or cur < best:
                best = cur[:]
            return
        if best is not None:
            head = cur[:i]
            bhead = best[:i]
            if head > bhead:
                return
            tight = head == bhead
        else:
            tight = False
        cands = []
        for v in range(n):
            if used[v]:
                continue
            row = 0
            mv = masks[v]
            for p in perm:
                row = row << 1 | (mv >> p & 1)
            row = row << 1 | (loops >> v & 1)
            cands.append((row, v))
        cands.sort()
        for row, v in cands:
            if best is not None and tight and row > best[i]:
                break
            perm.append(v)
            used[v] = True
            cur.append(row)
            rec(i + 1)
            cur.pop()
            used[v] = False
            perm.pop()

    rec(0)
    return tuple(best or [])


def _min_cayley_table(g: FiniteGroup):
    """Minimal relabelled Cayley table over generating-sequence labelings.

    Every relabelling that can realize the minimum is induced by an
    irredundant generating sequence via breadth-first word labelling, so
    scanning those sequences suffices and keeps the search near |Aut|.
    """
    n = g.order
    if n == 1:
        return ((0,),)
    t = g.table
    best = None

    def consider(seq):
        nonlocal best
        lab = [-1] * n
        order = [g.identity]
        lab[g.identity] = 0
        idx = 0
        while idx < len(order):
            x = order[idx]
            for s in seq:
                y = t[x][s]
                if lab[y] < 0:
                    lab[y] = len(order)
                    order.append(y)
            idx += 1
        rows = []
        better = best is None
        for i in range(n):
            ti = t[order[i]]
            row = tuple(lab[ti[order[j]]] for j in range(n))
            if not better:
                if row > best[i]:
                    return
                if row < best[i]:
                    better = True
            rows.append(row)
        if better:
            best = tuple(rows)

    def rec(seq, closure):
        if len(closure) == n:
            consider(seq)
            return
        for x in range(n):
            if x not in closure:
                rec(seq + (x,), subgroup_closure(g, closure | {x}))

    rec((), frozenset({g.identity}))
    return best


@lru_cache(maxsize=None)
def canonical_key(obj) -> bytes:
    """Byte key with key(a) == key(b) iff a and b are isomorphic.

    Graphs up to 10 vertices, groups up to order 64; beyond that a
    CapabilityError is raised rather than a slow answer.
    """
    kind = kind_of(obj)
    if kind == "graph":
        n = obj.vertex_count
        if n > GRAPH_KEY_MAX_VERTICES:
            raise CapabilityError(
                f"canonical key limited to {GRAPH_KEY_MAX_VERTICES} vertices, got {n}"
            )
        rows = _min_adjacency_rows(obj)
        return b"G" + bytes([n]) + b"".join(r.to_bytes(2, "big") for r in rows)
    n = obj.order
    if n > GROUP_KEY_MAX_ORDER:
        raise CapabilityError(
            f"canonical key limited to order {GROUP_KEY_MAX_ORDER}, got {n}"
        )
    table = _min_cayley_table(obj)
    return b"H" + bytes([n]) + bytes(v for row in table for v in row)


def object_sort_key(obj):
    """Deterministic (size, canonical key) ordering used across the package."""
    return (size_of(obj), canonical_key(obj))


def object_from_key(key: bytes):
    """Rebuild the canonical representative encoded by a canonical key.

    Keys are self-describing, which lets a cache verifier recompute
    counts without access to the original input files.
    """
    if key[:1] == b"G":
        n = key[1]
        rows = [
            int.from_bytes(key[2 + 2 * i : 4 + 2 * i], "big") for i in range(n)
        ]
        edges = set()
        for i, row in enumerate(rows):
            for j in range(i):  # earlier-vertex bits, most significant first
                if row >> (i - j) & 1:
                    edges.add((j, i))
            if row & 1:
                edges.add((i, i))
        return Graph(n, frozenset(edges))
    if key[:1] == b"H":
        from .groups import group_from_table

        n = key[1]
        vals = list(key[2:])
        return group_from_table([vals[i * n : (i + 1) * n] for i in range(n)])
    raise FormatError(f"unrecognized canonical key prefix {key[:1]!r}")


# ---------------------------------------------------------------------------
# factorization through the image, Hopfian reports
# ---------------------------------------------------------------------------


def epi_mono_factorize(f: Morphism):
    """Split a hom as (epi onto the image, image object, mono into target).

    Graphs use the image subgraph (f(V), f(E)); groups the image
    subgroup.  Returns (p, image, i) with f = i o p.
    """
    kind = kind_of(f.source)
    if kind == "graph":
        vs = sorted(set(f.map))
        pos = {v: k for k, v in enumerate(vs)}
        edges = set()
        for u, v in f.source.edges:
            fu, fv = f.map[u], f.map[v]
            edges.add((pos[fu], pos[fv]) if pos[fu] <= pos[fv] else (pos[fv], pos[fu]))
        image = Graph(len(vs), frozenset(edges))
        p = Morphism(f.source, image, tuple(pos[x] for x in f.map), "epi")
        i = Morphism(image, f.target, tuple(vs), "mono")
    else:
        from .groups import subgroup_carrier

        image, members = subgroup_carrier(f.target, set(f.map))
        pos = {v: k for k, v in enumerate(members)}
        p = Morphism(f.source, image, tuple(pos[x] for x in f.map), "epi")
        i = Morphism(image, f.target, members, "mono")
    return p, image, i


def hopfian_report(a) -> dict:
    """Count endomorphisms by class; every endo-epi and endo-mono must be an iso."""
    hom = count_morphisms(a, a, "hom")
    epi = count_morphisms(a, a, "epi")
    mono = count_morphisms(a, a, "mono")
    iso = count_morphisms(a, a, "iso")
    return {
        "kind": kind_of(a),
        "size": size_of(a),
        "endo_hom": hom,
        "endo_epi": epi,
        "endo_mono": mono,
        "endo_iso": iso,
        "hopfian": epi == iso,
        "co_hopfian": mono == iso,
    }


def clear_caches():
    """Drop all in-process memo caches (mainly for tests and benchmarks)."""
    _class_count_cache.clear()
    _class_orbit_cache.clear()
    for fn in (
        _count_by_value,
        _maps_sorted,
        _aut_maps,
        _graph_plan,
        _connected_iso,
        is_isomorphic,
        canonical_key,
    ):
        fn.cache_clear()
