"""Group-side applications: spectra via cyclic test objects, the gcd
formula for cyclic hom counts, and the pairwise determinant scan.

Hom counts to and from cyclic groups come straight off the element
order table and double as a cheap independent oracle for the generic
search engine, which cross-checks them on every spectrum report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import VerificationError
from .factorization import normal_subgroups
from .groups import FiniteGroup, cyclic_group, direct_product, trivial_group
from .homsearch import canonical_key, count_morphisms, has_morphism, is_isomorphic


def _divisors(d):
    return [e for e in range(1, d + 1) if d % e == 0]


@dataclass(frozen=True)
class SpectrumReport:
    group: FiniteGroup
    order: int
    spectrum: tuple  # sorted set of element orders
    per_d: tuple  # (d, torsion count h, exact-order count m) for d = 1..exponent


def spectrum(g: FiniteGroup, cross_check: bool = True) -> SpectrumReport:
    """Element-order data of g as hom counts from cyclic groups.

    For every d up to the exponent the report carries
    #{x : x^d = e} (the hom count from the order-d cyclic group) and
    #{x : ord(x) = d} (the mono count), and checks the divisor-sum
    identity tying them together; with cross_check the counts are also
    recomputed by the generic engine.
    """
    orders = g.element_orders
    spect = tuple(sorted(set(orders)))
    rows = []
    for d in range(1, g.exponent + 1):
        torsion = sum(1 for o in orders if d % o == 0)
        exact = sum(1 for o in orders if o == d)
        divisor_sum = sum(1 for o in orders if o in _divisors(d))
        if divisor_sum != torsion:
            raise VerificationError(
                f"divisor-sum identity failed at d={d}: {divisor_sum} != {torsion}"
            )
        if cross_check:
            c = cyclic_group(d)
            engine_h = count_morphisms(c, g, "hom")
            engine_m = count_morphisms(c, g, "mono")
            if engine_h != torsion or engine_m != exact:
                raise VerificationError(
                    f"engine disagrees with order table at d={d}: "
                    f"hom {engine_h} vs {torsion}, mono {engine_m} vs {exact}"
                )
        rows.append((d, torsion, exact))
    return SpectrumReport(g, g.order, spect, tuple(rows))


def gcd_hom_count(factors_a, factors_b) -> int:
    """Hom count between abelian groups given as multisets of cyclic orders.

    The count from one cyclic factor into another is the gcd of their
    orders, and products multiply, so the whole count is the product of
    pairwise gcds.
    """
    out = 1
    for n in factors_a:
        for m in factors_b:
            out *= math.gcd(n, m)
    return out


def realize_cyclic_factors(factors) -> FiniteGroup:
    if not factors:
        return trivial_group()
    return reduce(direct_product, (cyclic_group(n) for n in factors))


# ---------------------------------------------------------------------------
# pairwise determinant scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairDeterminantReport:
    pair: tuple  # (G1, G2)
    matrix: tuple  # 2x2, entry (i, j) = |Hom(G_i, G_j)|
    determinant: int
    isomorphic: bool


def pair_determinant(g1: FiniteGroup, g2: FiniteGroup) -> PairDeterminantReport:
    """The 2x2 matrix of hom counts between a pair and its exact determinant.

    Isomorphic pairs have equal rows, hence determinant zero.  A zero
    determinant on a non-isomorphic pair would be a counterexample to
    the scanned conjecture and must be flagged, never suppressed.
    """
    m = (
        (count_morphisms(g1, g1), count_morphisms(g1, g2)),
        (count_morphisms(g2, g1), count_morphisms(g2, g2)),
    )
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return PairDeterminantReport((g1, g2), m, det, is_isomorphic(g1, g2))


def is_simple(g: FiniteGroup) -> bool:
    return g.order > 1 and len(normal_subgroups(g)) == 2


def _square_free(n: int) -> bool:
    return all(n % (p * p) for p in range(2, n + 1))


def _pair_criteria_violations(name1, g1, name2, g2, m, arrows):
    """Proved criteria that must never fire on a non-isomorphic pair.

    m[i][j] = |Hom(G_i, G_j)|; arrows holds the epi/mono existence flags
    (epi12, epi21, mono12, mono21) for the ordered pair directions.
    """
    epi12, epi21, mono12, mono21 = arrows
    out = []
    for (ni, gi, i, has_epi, has_mono), (nj, gj, j) in (
        ((name1, g1, 0, epi12, mono12), (name2, g2, 1)),
        ((name2, g2, 1, epi21, mono21), (name1, g1, 0)),
    ):
        # an epimorphism gi ->> gj plus equal endo/hom counts forces iso
        if m[i][i] == m[j][i] and has_epi:
            out.append({"criterion": "epi-count", "pair": (ni, nj)})
        # a monomorphism gi -> gj plus equal counts into the pair forces iso
        if m[j][j] == m[j][i] and has_mono:
            out.append({"criterion": "mono-count", "pair": (ni, nj)})
        # abelian with square-free exponent: equal rows force iso
        if gj.is_abelian and _square_free(gj.exponent):
            if m[i][0] == m[j][0] and m[i][1] == m[j][1]:
                out.append({"criterion": "square-free-abelian", "pair": (ni, nj)})
        # simple first group: equal columns force iso
        if is_simple(gi):
            if m[0][i] == m[0][j] and m[1][i] == m[1][j]:
                out.append({"criterion": "simple-column", "pair": (ni, nj)})
    return out


def _scan_pair_worker(payload):
    g1, g2 = payload
    m = (
        (count_morphisms(g1, g1), count_morphisms(g1, g2)),
        (count_morphisms(g2, g1), count_morphisms(g2, g2)),
    )
    arrows = (
        has_morphism(g1, g2, "epi"),
        has_morphism(g2, g1, "epi"),
        has_morphism(g1, g2, "mono"),
        has_morphism(g2, g1, "mono"),
    )
    return m, arrows, is_isomorphic(g1, g2)


def conjecture_scan(entries, max_order=None, jobs=1) -> dict:
    """Scan all non-isomorphic catalog pairs for zero determinants.

    For every unordered pair the report records the 2x2 hom-count
    matrix and its determinant; determinant zero on a non-isomorphic
    pair is emitted as a flagged counterexample (the conjecture is
    scanned, not asserted).  The proved pairwise criteria (epi/mono
    count rigidity, square-free abelian, simple groups) are asserted:
    any hit there falsifies the engine.

    The scan range is part of the report; conclusions never extend
    beyond it.  With jobs > 1 the per-pair counting fans out to worker
    processes; results are merged in pair order, so reports are
    identical to the single-worker run.
    """
    chosen = [
        e for e in entries if max_order is None or e.obj.order <= max_order
    ]
    index_pairs = [
        (i, j) for i in range(len(chosen)) for j in range(i + 1, len(chosen))
    ]
    payloads = [(chosen[i].obj, chosen[j].obj) for i, j in index_pairs]
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_scan_pair_worker, payloads, chunksize=8)
    else:
        results = [_scan_pair_worker(p) for p in payloads]

    pairs = []
    violations = []
    zero_dets = []
    for (i, j), (m, arrows, iso) in zip(index_pairs, results):
        e1, e2 = chosen[i], chosen[j]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        record = {
            "names": (e1.name, e2.name),
            "keys": (e1.canonical_key.hex(), e2.canonical_key.hex()),
            "matrix": m,
            "determinant": det,
            "isomorphic": iso,
        }
        pairs.append(record)
        if iso:
            violations.append(
                {"criterion": "catalog-duplicate", "pair": record["names"]}
            )
            continue
        if det == 0:
            zero_dets.append(record)
        violations.extend(
            _pair_criteria_violations(e1.name, e1.obj, e2.name, e2.obj, m, arrows)
        )
    nonzero = [
        abs(p["determinant"])
        for p in pairs
        if not p["isomorphic"] and p["determinant"] != 0
    ]
    return {
        "scan_range": max_order,
        "group_count": len(chosen),
        "pair_count": len(pairs),
        "pairs": pairs,
        "zero_determinant_pairs": zero_dets,
        "criterion_violations": violations,
        "min_abs_determinant": min(nonzero) if nonzero else None,
    }
