import itertools

import pytest

import homlab as hl
from homlab.errors import FormatError, GroupAxiomError
from homlab.groups import group_to_text, parse_group, subgroup_carrier


def check_axioms(g):
    n = g.order
    e = g.identity
    assert all(g.table[e][i] == i and g.table[i][e] == i for i in range(n))
    for i in range(n):
        assert sorted(g.table[i]) == list(range(n))
        assert sorted(g.table[j][i] for j in range(n)) == list(range(n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert g.table[g.table[i][j]][k] == g.table[i][g.table[j][k]]
    assert all(v is not None for v in g.inverses)


@pytest.mark.parametrize(
    "g",
    [
        hl.trivial_group(),
        hl.cyclic_group(6),
        hl.dihedral_group(4),
        hl.dicyclic_group(2),
        hl.dicyclic_group(3),
        hl.symmetric_group(3),
        hl.symmetric_group(4),
        hl.alternating_group(4),
        hl.direct_product(hl.cyclic_group(2), hl.symmetric_group(3)),
        hl.elementary_abelian_group(3, 2),
    ],
)
def test_constructors_satisfy_axioms(g):
    check_axioms(g)


def test_cyclic_group_orders():
    z6 = hl.cyclic_group(6)
    assert sorted(set(z6.element_orders)) == [1, 2, 3, 6]
    assert z6.element_orders[1] == 6  # generator
    with pytest.raises(FormatError):
        hl.cyclic_group(0)


def test_dicyclic_is_quaternion_at_2():
    q8 = hl.dicyclic_group(2)
    assert q8.order == 8
    assert q8.order_profile == (1, 2, 4, 4, 4, 4, 4, 4)  # unique involution


def test_direct_product_v4():
    v4 = hl.direct_product(hl.cyclic_group(2), hl.cyclic_group(2))
    assert v4.exponent == 2
    assert v4.is_abelian


def test_direct_product_crt():
    g = hl.direct_product(hl.cyclic_group(2), hl.cyclic_group(3))
    assert hl.is_isomorphic(g, hl.cyclic_group(6))


def test_direct_product_trivial_unit():
    s3 = hl.symmetric_group(3)
    assert hl.is_isomorphic(hl.direct_product(hl.trivial_group(), s3), s3)


def test_group_from_table_identity_not_at_zero():
    # C3 with the identity moved to index 2
    relabel = {0: 2, 1: 0, 2: 1}
    z3 = hl.cyclic_group(3)
    table = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            table[relabel[i]][relabel[j]] = relabel[z3.table[i][j]]
    g = hl.group_from_table(table)
    assert g.identity == 2
    assert hl.is_isomorphic(g, z3)


def test_group_from_table_axiom_witnesses():
    with pytest.raises(GroupAxiomError) as exc:
        hl.group_from_table([[1, 0], [1, 0]])  # no identity row/col pair
    assert exc.value.axiom == "identity"
    # latin-square failure: a row with a repeat (identity still present)
    with pytest.raises(GroupAxiomError):
        hl.group_from_table([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    # associativity failure with witness triple: quasigroup that is not a group
    bad = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupAxiomError) as exc:
        hl.group_from_table(bad)
    assert exc.value.axiom == "associativity"
    i, j, k = exc.value.witness
    t = bad
    assert t[t[i][j]][k] != t[i][t[j][k]]


def test_group_from_table_format_errors():
    with pytest.raises(FormatError):
        hl.group_from_table([[0, 1]])
    with pytest.raises(FormatError):
        hl.group_from_table([[0, 2], [2, 0]])


def test_s3_from_permutation_composition():
    s3 = hl.symmetric_group(3)
    assert s3.order == 6
    assert s3.identity is not None
    assert s3.order_profile == (1, 2, 2, 2, 3, 3)


def test_subgroup_carrier():
    z6 = hl.cyclic_group(6)
    carrier, members = subgroup_carrier(z6, [0, 2, 4])
    assert members == (0, 2, 4)
    assert hl.is_isomorphic(carrier, hl.cyclic_group(3))
    with pytest.raises(FormatError):
        subgroup_carrier(z6, [0, 2, 3])  # not closed


def test_text_roundtrip():
    for g in (hl.cyclic_group(4), hl.symmetric_group(3)):
        assert parse_group(group_to_text(g)).table == g.table
    with pytest.raises(FormatError):
        parse_group("group 2\n0 1\n")  # missing row


# --- catalog ----------------------------------------------------------------


def test_catalog_counts_at_8():
    cat = hl.catalog_groups(8)
    per_order = {}
    for e in cat:
        per_order[e.obj.order] = per_order.get(e.obj.order, 0) + 1
    assert per_order == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}
    assert len(cat) == 14
    keys = [e.canonical_key for e in cat]
    assert len(set(keys)) == len(keys)


def test_catalog_single():
    cat = hl.catalog_groups(1)
    assert len(cat) == 1
    assert cat[0].obj.order == 1


def test_catalog_order_12_members(catalog_12):
    order12 = [e for e in catalog_12 if e.obj.order == 12]
    assert len(order12) == 5
    expected = [
        hl.cyclic_group(12),
        hl.direct_product(hl.cyclic_group(6), hl.cyclic_group(2)),
        hl.dihedral_group(6),
        hl.dicyclic_group(3),
        hl.alternating_group(4),
    ]
    for g in expected:
        assert any(hl.is_isomorphic(g, e.obj) for e in order12)
    for i in range(len(order12)):
        for j in range(i + 1, len(order12)):
            assert not hl.is_isomorphic(order12[i].obj, order12[j].obj)


def test_catalog_monotone_in_bound():
    small = {e.canonical_key for e in hl.catalog_groups(6)}
    big = {e.canonical_key for e in hl.catalog_groups(10)}
    assert small <= big


def test_catalog_accepts_external_tables():
    z5 = hl.cyclic_group(5)
    # external table for a group already present: must dedup
    cat = hl.catalog_groups(6, extra_tables=(z5.table,))
    assert len(cat) == len(hl.catalog_groups(6))


def _reduced_latin_squares(n):
    """All Cayley tables on 0..n-1 with identity 0, by row backtracking."""
    rows = [list(range(n))]

    def rec(pos):
        if len(rows) == n:
            yield [list(r) for r in rows]
            return
        i = len(rows)
        row = [i] + [None] * (n - 1)  # column 0 must be i (identity axiom)
        used_cols = [set(r[j] for r in rows) | ({i} if j == 0 else set()) for j in range(n)]

        def fill(j):
            if j == n:
                rows.append(row[:])
                yield from rec(pos + 1)
                rows.pop()
                return
            for v in range(n):
                if v not in row[:j] and v not in used_cols[j] and not (j == 0 and v != i):
                    row[j] = v
                    yield from fill(j + 1)
                    row[j] = None

        yield from fill(1)

    yield from rec(1)


def _is_associative(table):
    n = len(table)
    return all(
        table[table[i][j]][k] == table[i][table[j][k]]
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 2)])
def test_catalog_complete_vs_exhaustive_table_search(n, expected):
    """Brute-force count of groups per order by exhaustive Cayley-table search."""
    keys = set()
    for table in _reduced_latin_squares(n):
        if _is_associative(table):
            keys.add(hl.canonical_key(hl.group_from_table(table)))
    assert len(keys) == expected
    catalog_keys = {
        e.canonical_key for e in hl.catalog_groups(n) if e.obj.order == n
    }
    assert catalog_keys == keys
