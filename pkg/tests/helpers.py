"""Shared generators for randomized tests.

Everything is driven by an explicit random.Random instance so failures
reproduce exactly.
"""

from fractions import Fraction

from unipavg import (
    QQ,
    NilMatrix,
    PolyRing,
    SectionTuple,
    exp_nilpotent,
)
from unipavg.fixtures import point_from_coordinates


def rand_fraction(rng, lo=-4, hi=4, max_den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_scalar(rng, field, lo=-4, hi=4, max_den=4):
    if field.degree == 1:
        return field.value(rand_fraction(rng, lo, hi, max_den))
    coords = [rand_fraction(rng, lo, hi, max_den) for _ in range(field.degree)]
    return field.value(coords)


def rand_point(rng, span, lo=-3, hi=3, max_den=3):
    """Random group element of the span, with rational log coordinates."""
    coords = [rand_fraction(rng, lo, hi, max_den) for _ in range(span.dim)]
    return point_from_coordinates(span, coords)


def rand_tuple(rng, span, q, lo=-3, hi=3, max_den=3):
    """Random degree-q tuple of constant sections (domain degree 0)."""
    pts = [rand_point(rng, span, lo, hi, max_den) for _ in range(q + 1)]
    return SectionTuple(span, pts)


def rand_weights(rng, q, max_den=5):
    """Random exact weight vector on the q-simplex with all entries nonzero."""
    # positive numerators keep the weights away from the vertices
    raw = [Fraction(rng.randint(1, max_den)) for _ in range(q + 1)]
    total = sum(raw)
    return [w / total for w in raw]


def rand_nil_poly(rng, field, n, q, max_deg=1, lo=-2, hi=2):
    """Random strictly upper matrix with SimplexPoly entries of low degree."""
    ring = PolyRing(field, q)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j <= i:
                row.append(ring.zero())
                continue
            p = ring.constant(rand_fraction(rng, lo, hi))
            for v in range(q):
                if rng.random() < 0.5:
                    c = rand_fraction(rng, lo, hi)
                    p = p + ring.coordinate(v).scale(field.value(c))
            if max_deg > 1 and q > 0 and rng.random() < 0.3:
                p = p * ring.coordinate(rng.randrange(q))
            row.append(p)
        rows.append(row)
    return NilMatrix(ring, rows)


def rand_unipotent(rng, field, n, q=0, lo=-2, hi=2):
    """Random unipotent matrix, exp of a random strictly upper matrix."""
    return exp_nilpotent(rand_nil_poly(rng, field, n, q, max_deg=1, lo=lo, hi=hi))


def eval_point(mat, weights):
    """Evaluate a polynomial-entry unipotent matrix at exact weights."""
    from unipavg import eval_at_weights

    ring = PolyRing(mat.ring.field, 0, mat.ring.params)
    return mat.map_entries(lambda e: ring.constant(eval_at_weights(e, weights)), ring)
