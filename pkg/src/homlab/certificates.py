"""Executable certificates: count matrices, independence, witnesses,
cancellation.

Independence of count functions is decided with an explicit certificate
either way: a column subset with nonzero exact determinant, or an
integer kernel vector that annihilates the matrix.  Certificates are
re-verified against the matrix before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import CapabilityError, FormatError, VerificationError
from .factorization import quotients, subobjects
from .graphs import (
    Graph,
    complete_graph,
    coproduct_power,
    disjoint_union,
    product_power,
    tensor_product,
)
from .groups import FiniteGroup, catalog_groups, direct_product, trivial_group
from .homsearch import (
    OrbitSpec,
    canonical_key,
    count_morphisms,
    has_morphism,
    is_isomorphic,
    object_sort_key,
    orbit_count,
)
from .morphisms import kind_of, same_kind, size_of

SIDES = ("left", "right")


def _check_side(side):
    if side not in SIDES:
        raise FormatError(f"side must be 'left' or 'right', got {side!r}")


def _entry(owner, evaluation, cls, side, orbit):
    """One count: the `side` family of `owner` evaluated at `evaluation`."""
    if side == "right":
        if orbit == "trivial":
            return count_morphisms(owner, evaluation, cls)
        return orbit_count(owner, evaluation, cls, OrbitSpec("precompose", orbit))
    if orbit == "trivial":
        return count_morphisms(evaluation, owner, cls)
    return orbit_count(evaluation, owner, cls, OrbitSpec("postcompose", orbit))


@dataclass(frozen=True)
class CountMatrix:
    rows: tuple  # function owners
    cols: tuple  # evaluation objects
    cls: str
    side: str
    orbit: str
    entries: tuple  # tuple of row tuples of exact integers


def hom_matrix(objects, eval_objects, cls="hom", side="right", orbit="trivial"):
    """Fully populated exact count matrix.

    side "right": entry(i, j) counts maps rows[i] -> cols[j]; side
    "left": maps cols[j] -> rows[i].  With orbit "aut" the counts are
    orbit counts under the full automorphisms of the row object (acting
    by precomposition on the right side, postcomposition on the left).
    """
    _check_side(side)
    objects = tuple(objects)
    eval_objects = tuple(eval_objects)
    entries = tuple(
        tuple(_entry(a, c, cls, side, orbit) for c in eval_objects) for a in objects
    )
    return CountMatrix(objects, eval_objects, cls, side, orbit, entries)


def exact_rank(matrix) -> int:
    """Exact rank over the rationals (accepts a CountMatrix or raw rows)."""
    rows = matrix.entries if isinstance(matrix, CountMatrix) else matrix
    return linalg.exact_rank(rows)


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    certificate: dict
    matrix: CountMatrix


def verify_certificate(verdict: IndependenceVerdict) -> bool:
    """Re-check a verdict's certificate against its matrix, exactly."""
    m = verdict.matrix.entries
    cert = verdict.certificate
    if verdict.independent:
        cols = cert["columns"]
        sub = [[row[j] for j in cols] for row in m]
        return linalg.exact_det(sub) == cert["determinant"] != 0
    vec = cert["kernel"]
    if all(v == 0 for v in vec) or len(vec) != len(m):
        return False
    width = len(m[0]) if m else 0
    return all(
        sum(vec[i] * m[i][j] for i in range(len(m))) == 0 for j in range(width)
    )


def _strictly_below(x, y):
    """x strictly below y in the mono preorder (mutual monos mean iso)."""
    return has_morphism(x, y, "mono") and not has_morphism(y, x, "mono")


def _mono_preorder_sort(objects):
    """Sort by size, then topologically by mono-existence within a size.

    A linear extension of the mono preorder: any mono between same-size
    non-isomorphic objects goes from earlier to later, which makes the
    mono-count matrix triangular.
    """
    objs = sorted(objects, key=object_sort_key)
    out = []
    i = 0
    while i < len(objs):
        j = i
        while j < len(objs) and size_of(objs[j]) == size_of(objs[i]):
            j += 1
        remaining = objs[i:j]
        while remaining:
            for k, x in enumerate(remaining):
                if not any(_strictly_below(y, x) for y in remaining):
                    out.append(x)
                    del remaining[k]
                    break
        i = j
    return tuple(out)


def independence_check(objects, cls="hom", side="right") -> IndependenceVerdict:
    """Linear independence of the count functions of `objects`.

    Verdict must equal pairwise non-isomorphism, and comes with an
    exact certificate: epi/mono class matrices are evaluated at the
    objects themselves in a triangularizing order; hom class matrices
    at the objects together with their subobject carriers (right side)
    or quotient carriers (left side).
    """
    _check_side(side)
    objects = tuple(objects)
    if cls == "epi" and side != "right":
        raise FormatError("epi-count functions form a right-side family")
    if cls == "mono" and side != "left":
        raise FormatError("mono-count functions form a left-side family")
    if not objects:
        return IndependenceVerdict(
            True, {"columns": [], "determinant": 1}, hom_matrix((), (), cls, side)
        )
    for a in objects[1:]:
        same_kind(objects[0], a)

    row_objects = objects
    if cls == "hom":
        evals = {canonical_key(a): a for a in objects}
        for a in objects:
            parts = subobjects(a) if side == "right" else quotients(a)
            for entry in parts:
                evals.setdefault(canonical_key(entry.carrier), entry.carrier)
        eval_objects = tuple(sorted(evals.values(), key=object_sort_key))
    elif cls == "mono":
        # rows and columns share the triangularizing order
        row_objects = eval_objects = _mono_preorder_sort(objects)
    else:  # epi, iso: size-sorted evaluation at the set itself
        row_objects = eval_objects = tuple(sorted(objects, key=object_sort_key))

    matrix = hom_matrix(row_objects, eval_objects, cls, side)
    dependency = linalg.row_dependency(matrix.entries)
    duplicates = any(
        is_isomorphic(objects[i], objects[j])
        for i in range(len(objects))
        for j in range(i + 1, len(objects))
    )

    if dependency is None:
        if duplicates:
            raise VerificationError(
                "independent count functions for isomorphic objects", matrix
            )
        cols = linalg.pivot_columns(matrix.entries)
        det = linalg.exact_det([[row[j] for j in cols] for row in matrix.entries])
        verdict = IndependenceVerdict(
            True, {"columns": cols, "determinant": det}, matrix
        )
    else:
        if not duplicates:
            raise VerificationError(
                "dependent count functions for pairwise non-isomorphic objects",
                matrix,
            )
        verdict = IndependenceVerdict(False, {"kernel": dependency}, matrix)
    if not verify_certificate(verdict):
        raise VerificationError("certificate failed re-verification", verdict)
    return verdict


# ---------------------------------------------------------------------------
# distinguishing witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessResult:
    witness: object
    counts: tuple
    index: int


def _witness_candidates(kind, max_size):
    if kind == "graph":
        from .graph_analysis import all_graphs

        return all_graphs(max_size, loops=True)
    return tuple(e.obj for e in catalog_groups(max_size))


def find_witness(a, b, side="left", max_size=4):
    """Smallest object with differing counts against a and b, or None.

    Candidates are scanned in (size, canonical key) order: all graphs up
    to max_size vertices, or all catalog groups up to max_size order.
    For isomorphic inputs every candidate is checked to agree and None
    is returned.
    """
    _check_side(side)
    kind = same_kind(a, b)
    iso = is_isomorphic(a, b)
    for idx, c in enumerate(_witness_candidates(kind, max_size)):
        if side == "left":
            ca, cb = count_morphisms(c, a), count_morphisms(c, b)
        else:
            ca, cb = count_morphisms(a, c), count_morphisms(b, c)
        if ca != cb:
            if iso:
                raise VerificationError(
                    "isomorphic objects with differing counts", (a, b, c)
                )
            return WitnessResult(c, (ca, cb), idx)
    return None


def witness_partition(objects, tests, side="left") -> dict:
    """Refine a family of objects by count profiles until all singletons.

    Splits only on actual count differences, so any two objects landing
    in different blocks have a concrete distinguishing test; `complete`
    means every pair got one.  Counts are computed lazily per live block,
    which keeps corpus-wide witness checks tractable.
    """
    _check_side(side)
    objects = tuple(objects)
    blocks = [list(range(len(objects)))]
    used = 0
    for t in tests:
        if all(len(b) == 1 for b in blocks):
            break
        used += 1
        nxt = []
        for b in blocks:
            if len(b) == 1:
                nxt.append(b)
                continue
            split = {}
            for i in b:
                if side == "left":
                    cnt = count_morphisms(t, objects[i])
                else:
                    cnt = count_morphisms(objects[i], t)
                split.setdefault(cnt, []).append(i)
            nxt.extend(split[k] for k in sorted(split))
        blocks = nxt
    return {
        "complete": all(len(b) == 1 for b in blocks),
        "tests_used": used,
        "object_count": len(objects),
        "blocks": blocks,
    }


# ---------------------------------------------------------------------------
# algebraic independence up to a degree bound
# ---------------------------------------------------------------------------


def _monomials(n, degree_bound):
    """Exponent tuples with total degree <= bound, graded lexicographic."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], degree_bound)
    out.sort(key=lambda e: (sum(e), e))
    return out


def algebraic_independence_check(objects, degree_bound, eval_objects, side="right") -> dict:
    """No annihilating polynomial up to the degree bound, or one exactly.

    Builds the monomial-evaluation matrix: one row per monomial in the
    count functions, one column per evaluation object.  Full row rank
    certifies independence *up to (degree_bound, eval set)* - the report
    says so explicitly; a kernel vector is an exact annihilating
    polynomial and is verified on the whole evaluation set.
    """
    _check_side(side)
    if degree_bound < 1:
        raise FormatError("degree_bound must be >= 1")
    objects = tuple(objects)
    eval_objects = tuple(eval_objects)
    qualifier = (
        "independence certified only up to the stated degree bound "
        "and evaluation set; dependence certificates are absolute"
    )
    if not objects:
        return {
            "independent": True,
            "degree_bound": degree_bound,
            "eval_count": len(eval_objects),
            "qualifier": qualifier,
            "annihilating_polynomial": None,
            "note": "empty object set is vacuously independent",
        }
    if not eval_objects:
        raise FormatError("evaluation set must be non-empty")
    counts = [
        [_entry(a, c, "hom", side, "trivial") for c in eval_objects] for a in objects
    ]
    monomials = _monomials(len(objects), degree_bound)
    rows = []
    for expo in monomials:
        row = []
        for j in range(len(eval_objects)):
            v = 1
            for i, e in enumerate(expo):
                if e:
                    v *= counts[i][j] ** e
            row.append(v)
        rows.append(row)
    dependency = linalg.row_dependency(rows)
    if dependency is None:
        return {
            "independent": True,
            "degree_bound": degree_bound,
            "eval_count": len(eval_objects),
            "monomial_count": len(monomials),
            "qualifier": qualifier,
            "annihilating_polynomial": None,
        }
    poly = [
        {"coefficient": c, "exponents": list(expo)}
        for c, expo in zip(dependency, monomials)
        if c != 0
    ]
    # absolute certificate: re-verify on every evaluation object
    for j in range(len(eval_objects)):
        total = sum(dependency[k] * rows[k][j] for k in range(len(monomials)))
        if total != 0:
            raise VerificationError("annihilating polynomial failed verification", poly)
    return {
        "independent": False,
        "degree_bound": degree_bound,
        "eval_count": len(eval_objects),
        "monomial_count": len(monomials),
        "qualifier": qualifier,
        "annihilating_polynomial": poly,
    }


# ---------------------------------------------------------------------------
# cancellation laws
# ---------------------------------------------------------------------------


def _combine(x, y, op):
    if kind_of(x) == "graph":
        return disjoint_union(x, y) if op == "coproduct" else tensor_product(x, y)
    if op == "coproduct":
        raise CapabilityError("finite groups have no coproducts in this laboratory")
    return direct_product(x, y)


def _power(x, n, op):
    if kind_of(x) == "graph":
        return coproduct_power(x, n) if op == "coproduct" else product_power(x, n)
    if op == "coproduct":
        raise CapabilityError("finite groups have no coproducts in this laboratory")
    out = trivial_group()
    for _ in range(n):
        out = direct_product(out, x)
    return out


def _graph_hypothesis(in_play):
    """Non-empty hom sets among the objects in play.

    A loop in every object is the strong form: any graph maps onto a
    loop, so inside the full subcategory of looped graphs no hom set is
    empty and the cancellation corollaries apply outright.  Otherwise
    fall back to checking the finitely many hom sets between the objects
    in play, which is weaker evidence and labelled as such.
    """
    if all(g.has_loop() for g in in_play):
        return True, "looped"
    for x in in_play:
        for y in in_play:
            if count_morphisms(x, y) == 0:
                return False, "empty hom set between objects in play"
    return True, "pairwise-nonempty"


def cancellation_check(a, b, mode, c=None, n=None, op=None) -> dict:
    """Premise/conclusion report for a cancellation law instance.

    mode "coproduct"/"product": premise is a op c = b op c (up to iso)
    for the given c; mode "power": premise is a^n = b^n under `op`
    (default coproduct for graphs, product for groups).  The conclusion
    is a = b.  `violation` is only claimed when the non-empty-hom-sets
    hypothesis holds; otherwise the report is downgraded.
    """
    kind = same_kind(a, b)
    if mode in ("coproduct", "product"):
        if c is None:
            raise FormatError(f"mode {mode!r} needs the third object c")
        same_kind(a, c)
        op = mode
        premise = is_isomorphic(_combine(a, c, op), _combine(b, c, op))
        in_play = (a, b, c)
    elif mode == "power":
        if n is None or n < 1:
            raise FormatError("power mode needs an exponent n >= 1")
        if op is None:
            op = "coproduct" if kind == "graph" else "product"
        premise = is_isomorphic(_power(a, n, op), _power(b, n, op))
        in_play = (a, b)
    else:
        raise FormatError(f"unknown cancellation mode {mode!r}")

    if kind == "group":
        hypothesis_met, basis = True, "trivial-homomorphism"
    else:
        hypothesis_met, basis = _graph_hypothesis(in_play)

    conclusion = is_isomorphic(a, b)
    report = {
        "mode": mode,
        "op": op,
        "n": n,
        "premise": premise,
        "conclusion": conclusion,
        "hypothesis_met": hypothesis_met,
        "hypothesis_basis": basis,
        "violation": (premise and not conclusion) if hypothesis_met else None,
    }
    if not hypothesis_met:
        report["note"] = "hypothesis not met: no claim about the cancellation law"
    return report
