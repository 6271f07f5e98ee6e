"""Fraction-free elimination vs an independent Fraction-based oracle."""

import itertools
from fractions import Fraction

from homlab.linalg import exact_det, exact_rank, pivot_columns, row_dependency
from conftest import rng


def rank_oracle(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def det_oracle(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, ln = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                ln += 1
            if ln % 2 == 0:
                sign = -sign
        prod = sign
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += prod
    return total


def test_rank_against_oracle_random():
    r = rng(10)
    for _ in range(200):
        nr, nc = r.randint(1, 5), r.randint(1, 5)
        rows = [[r.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
        assert exact_rank(rows) == rank_oracle(rows)


def test_rank_edge_cases():
    assert exact_rank([]) == 0
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[4, 4], [4, 16]]) == 2
    assert exact_rank([[1, 0], [0, 2]]) == 2


def test_det_against_oracle_random():
    r = rng(11)
    for _ in range(150):
        n = r.randint(1, 4)
        rows = [[r.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert exact_det(rows) == det_oracle(rows)


def test_det_large_entries_exact():
    big = 10**30
    rows = [[big, 1], [1, big]]
    assert exact_det(rows) == big * big - 1


def test_row_dependency_found_and_verified():
    r = rng(12)
    for _ in range(150):
        nr, nc = r.randint(2, 5), r.randint(1, 4)
        rows = [[r.randint(-5, 5) for _ in range(nc)] for _ in range(nr)]
        dep = row_dependency(rows)
        if dep is None:
            assert exact_rank(rows) == nr
        else:
            assert any(dep)
            for j in range(nc):
                assert sum(dep[i] * rows[i][j] for i in range(nr)) == 0


def test_row_dependency_duplicate_rows():
    dep = row_dependency([[1, 2, 3], [1, 2, 3]])
    assert dep == [1, -1]


def test_pivot_columns_give_nonzero_det():
    r = rng(13)
    for _ in range(80):
        nr = r.randint(1, 4)
        rows = [[r.randint(-4, 4) for _ in range(r.randint(nr, nr + 3))] for _ in range(nr)]
        width = min(len(x) for x in rows)
        rows = [x[:width] for x in rows]
        cols = pivot_columns(rows)
        if len(cols) == nr:  # full row rank: the pivot minor must be nonsingular
            sub = [[row[j] for j in cols] for row in rows]
            assert exact_det(sub) != 0
