"""Finite groups as Cayley tables over indices 0..n-1.

Constructors cover the families the catalog is built from: cyclic,
dihedral, dicyclic, symmetric/alternating up to degree 4, elementary
abelian, and direct products.  ``group_from_table`` validates an
arbitrary table and locates the identity, so externally supplied groups
can extend the catalog.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import FormatError, GroupAxiomError


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple  # tuple of row tuples, table[i][j] = i*j
    identity: int

    def mul(self, a, b):
        return self.table[a][b]

    @cached_property
    def inverses(self):
        inv = [None] * self.order
        e = self.identity
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == e:
                    inv[a] = b
                    break
        return tuple(inv)

    @cached_property
    def element_orders(self):
        orders = [0] * self.order
        e = self.identity
        for a in range(self.order):
            x, k = a, 1
            while x != e:
                x = self.table[x][a]
                k += 1
            orders[a] = k
        return tuple(orders)

    @cached_property
    def order_profile(self):
        return tuple(sorted(self.element_orders))

    @cached_property
    def exponent(self):
        exp = 1
        for k in self.element_orders:
            exp = _lcm(exp, k)
        return exp

    @cached_property
    def is_abelian(self):
        t = self.table
        return all(
            t[a][b] == t[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def power(self, a, k):
        """a**k for k >= 0."""
        if k < 0:
            raise ValueError("negative powers are not needed; use inverses")
        x = self.identity
        for _ in range(k % self.element_orders[a]):
            x = self.table[x][a]
        return x

    @cached_property
    def generator_sequence(self):
        """Smallest-index greedy generating sequence (empty for the trivial group)."""
        gens = []
        closure = {self.identity}
        while len(closure) < self.order:
            g = min(x for x in range(self.order) if x not in closure)
            gens.append(g)
            closure = subgroup_closure(self, closure | {g})
        return tuple(gens)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def subgroup_carrier(g: FiniteGroup, members):
    """The subgroup on ``members`` as a group of its own.

    Returns (carrier, sorted member tuple); the members must already be
    closed under the table, otherwise this raises FormatError.
    """
    ms = tuple(sorted(set(members)))
    pos = {v: i for i, v in enumerate(ms)}
    if g.identity not in pos:
        raise FormatError("subgroup members must contain the identity")
    rows = []
    for x in ms:
        row = []
        for y in ms:
            z = g.table[x][y]
            if z not in pos:
                raise FormatError(f"members not closed: {x}*{y} = {z} escapes")
            row.append(pos[z])
        rows.append(tuple(row))
    return FiniteGroup(len(ms), tuple(rows), pos[g.identity]), ms


def subgroup_closure(g: FiniteGroup, seed) -> frozenset:
    """Smallest subgroup of g containing ``seed`` (as a frozenset of indices)."""
    known = sorted(set(seed) | {g.identity})
    t = g.table
    in_set = set(known)
    i = 0
    while i < len(known):
        x = known[i]
        for y in known:  # the list grows while we iterate; that is intended
            for z in (t[x][y], t[y][x]):
                if z not in in_set:
                    in_set.add(z)
                    known.append(z)
        i += 1
    return frozenset(in_set)


# --- validated construction ---------------------------------------------------


def group_from_table(table) -> FiniteGroup:
    """Build a FiniteGroup from any square table, verifying every axiom.

    The identity is located automatically (not required at index 0).
    Violations raise GroupAxiomError naming the axiom and a witness.
    """
    rows = [tuple(r) for r in table]
    n = len(rows)
    if n == 0:
        raise FormatError("group table must be non-empty")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise FormatError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise FormatError(f"entry table[{i}][{j}] = {v!r} out of range")
    tab = tuple(rows)

    identity = None
    for e in range(n):
        if all(tab[e][i] == i and tab[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupAxiomError("identity")

    full = set(range(n))
    for i in range(n):
        if set(tab[i]) != full:
            raise GroupAxiomError("row-permutation", (i,))
    for j in range(n):
        if {tab[i][j] for i in range(n)} != full:
            raise GroupAxiomError("column-permutation", (j,))

    for i in range(n):
        for j in range(n):
            tij = tab[i][j]
            row_i = tab[i]
            for k in range(n):
                if tab[tij][k] != row_i[tab[j][k]]:
                    raise GroupAxiomError("associativity", (i, j, k))

    g = FiniteGroup(n, tab, identity)
    # Latin square + identity + associativity already force inverses;
    # materialize them so a defect here can never go unnoticed.
    if any(v is None for v in g.inverses):
        raise GroupAxiomError("inverse")
    return g


def _table_from_mul(elements, mul):
    index = {x: i for i, x in enumerate(elements)}
    return tuple(
        tuple(index[mul(a, b)] for b in elements) for a in elements
    )


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, ((0,),), 0)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise FormatError("cyclic group order must be >= 1")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(n, table, 0)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (n >= 1); element (i, r) is rot^i refl^r."""
    if n < 1:
        raise FormatError("dihedral parameter must be >= 1")
    elements = [(i, r) for i in range(n) for r in (0, 1)]

    def mul(a, b):
        i, r = a
        j, s = b
        if r == 0:
            return ((i + j) % n, s)
        return ((i - j) % n, 1 - s)

    return FiniteGroup(2 * n, _table_from_mul(elements, mul), 0)


def dicyclic_group(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n (n >= 2); n = 2 is the quaternion group.

    Elements a^i b^j with a of order 2n, b^2 = a^n, b a b^-1 = a^-1.
    """
    if n < 2:
        raise FormatError("dicyclic parameter must be >= 2")
    m = 2 * n
    elements = [(i, j) for i in range(m) for j in (0, 1)]

    def mul(x, y):
        i, j = x
        k, l = y
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    return FiniteGroup(4 * n, _table_from_mul(elements, mul), 0)


def symmetric_group(n: int) -> FiniteGroup:
    """S_n as sorted permutation tuples; kept to n <= 4 in the catalog."""
    if n < 1:
        raise FormatError("symmetric group degree must be >= 1")
    elements = sorted(itertools.permutations(range(n)))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))

    return FiniteGroup(
        len(elements), _table_from_mul(elements, mul), elements.index(tuple(range(n)))
    )


def _permutation_sign(p):
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternating_group(n: int) -> FiniteGroup:
    if n < 1:
        raise FormatError("alternating group degree must be >= 1")
    elements = sorted(
        p for p in itertools.permutations(range(n)) if _permutation_sign(p) == 1
    )

    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))

    return FiniteGroup(
        len(elements), _table_from_mul(elements, mul), elements.index(tuple(range(n)))
    )


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element (a, b) gets index a * |h| + b."""
    nh = h.order
    n = g.order * nh
    gt, ht = g.table, h.table
    table = []
    for a in range(g.order):
        ga = gt[a]
        for b in range(nh):
            hb = ht[b]
            table.append(
                tuple(ga[c] * nh + hb[d] for c in range(g.order) for d in range(nh))
            )
    return FiniteGroup(n, tuple(table), g.identity * nh + h.identity)


def elementary_abelian_group(p: int, k: int) -> FiniteGroup:
    g = cyclic_group(p)
    out = g
    for _ in range(k - 1):
        out = direct_product(out, g)
    return out


def _primes_upto(n):
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, p))]


# --- catalog ------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    obj: FiniteGroup
    canonical_key: bytes


def _construction_sweep(max_order):
    """All named constructions with order <= max_order, in a fixed priority order.

    Cyclic names win on collision (C6 rather than C2xC3), then symmetric,
    alternating, dihedral, dicyclic, elementary abelian.
    """
    out = [("C%d" % n, cyclic_group(n)) for n in range(1, max_order + 1)]
    for n in range(2, 5):
        if _factorial(n) <= max_order:
            out.append(("S%d" % n, symmetric_group(n)))
    if max_order >= 12:
        out.append(("A4", alternating_group(4)))
    for n in range(3, max_order // 2 + 1):
        out.append(("D%d" % n, dihedral_group(n)))
    for n in range(2, max_order // 4 + 1):
        name = "Q8" if n == 2 else "Dic%d" % n
        out.append((name, dicyclic_group(n)))
    for p in _primes_upto(max_order):
        k = 2
        while p**k <= max_order:
            out.append(("x".join(["C%d" % p] * k), elementary_abelian_group(p, k)))
            k += 1
    return out


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def catalog_groups(max_order, extra_tables=()) -> list:
    """Catalog of pairwise non-isomorphic groups of order <= max_order.

    Built from the construction sweep, closed under direct products within
    the order bound, extended by any user-supplied Cayley tables.  Complete
    for order <= 15; order 16 already has groups outside the constructions.
    Returns CatalogEntry records sorted by (order, canonical key).
    """
    from .homsearch import canonical_key, is_isomorphic

    if max_order < 1:
        raise FormatError("max_order must be >= 1")
    candidates = list(_construction_sweep(max_order))
    for i, table in enumerate(extra_tables):
        candidates.append(("ext%d" % i, group_from_table(table)))

    entries = []  # (name, group) accepted so far
    by_invariant = {}

    def accept(name, g):
        inv = (g.order, g.order_profile, g.is_abelian)
        bucket = by_invariant.setdefault(inv, [])
        for _, other in bucket:
            if is_isomorphic(g, other):
                return False
        bucket.append((name, g))
        entries.append((name, g))
        return True

    for name, g in candidates:
        if g.order <= max_order:
            accept(name, g)

    # close under direct products (iterate until no new iso class appears)
    grew = True
    while grew:
        grew = False
        snapshot = list(entries)
        for name_a, a in snapshot:
            for name_b, b in snapshot:
                if a.order * b.order <= max_order:
                    if accept(f"{name_a}x{name_b}", direct_product(a, b)):
                        grew = True

    out = [CatalogEntry(name, g, canonical_key(g)) for name, g in entries]
    out.sort(key=lambda e: (e.obj.order, e.canonical_key))
    return out


# --- text format ---------------------------------------------------------------
#
# line 1: "group <n>"; then n lines of n whitespace-separated indices.


def parse_group(text: str) -> FiniteGroup:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormatError("empty group file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "group":
        raise FormatError(f"expected 'group <n>' header, got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise FormatError(f"bad group order {head[1]!r}") from None
    if len(lines) - 1 != n:
        raise FormatError(f"expected {n} table rows, found {len(lines) - 1}")
    table = []
    for line in lines[1:]:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"non-integer table entry in {line!r}") from None
        table.append(row)
    return group_from_table(table)


def group_to_text(g: FiniteGroup) -> str:
    lines = [f"group {g.order}"]
    lines.extend(" ".join(str(v) for v in row) for row in g.table)
    return "\n".join(lines) + "\n"
