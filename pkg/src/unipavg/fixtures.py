"""Shipped example data: groups, tuples, covers and Galois orbits.

These are the concrete objects the documentation and the acceptance suite
talk about; they are ordinary package values so external callers can
reproduce every documented run.
"""

from __future__ import annotations

from fractions import Fraction

from .average import SectionTuple
from .descent import GaloisOrbit
from .exactring import QQ, GaloisAction, PolyRing, ScalarField
from .nilpotent import (LieSpan, NilMatrix, UniMatrix, exp_nilpotent,
                        full_unipotent_span)
from .simplicial import FiniteCover, LocalSection


def heisenberg_span(field=QQ) -> LieSpan:
    """The full 3 x 3 strictly upper algebra: the Heisenberg Lie algebra."""
    return full_unipotent_span(3, field)


def u2_span(field=QQ) -> LieSpan:
    """The 2 x 2 case: a copy of the additive line."""
    return full_unipotent_span(2, field)


def abelian3_span(field=QQ) -> LieSpan:
    """A 3-dimensional abelian subalgebra of the 4 x 4 strictly uppers
    (the full first row)."""
    ring = PolyRing(field, 0)
    basis = [NilMatrix.from_entries(ring, 4, {(0, j): 1}) for j in (1, 2, 3)]
    return LieSpan(basis)


def point_from_coordinates(span, coords) -> UniMatrix:
    """exp of the span element with the given basis coordinates."""
    field = span.field
    return exp_nilpotent(span.from_coordinates([field.value(c) for c in coords]))


def two_point_tuple(field=QQ) -> SectionTuple:
    """(I, exp L) over the Heisenberg group; its average is exp(t_1 L)."""
    span = heisenberg_span(field)
    ring = span.ring
    l_mat = NilMatrix.from_entries(ring, 3,
                                   {(0, 1): 1, (1, 2): 2, (0, 2): Fraction(1, 3)})
    return SectionTuple(span, [UniMatrix.identity(ring, 3), exp_nilpotent(l_mat)])


def strictness_witness(field=QQ) -> SectionTuple:
    """A q = 2 tuple over the full 4 x 4 unipotent group for which a single
    symmetrization pass is not enough: one pass on the embedded tuple (the
    lift itself) leaves the components distinct, and a second pass makes
    them agree.

    No such tuple exists over a class-2 group like Heisenberg: there the
    first pass already collapses every component to exp(sum_j t_j log f_j).
    """
    span = full_unipotent_span(4, field)
    ring = span.ring
    e01 = NilMatrix.from_entries(ring, 4, {(0, 1): 1})
    chain = NilMatrix.from_entries(ring, 4, {(1, 2): 1, (2, 3): 1})
    return SectionTuple(span, [UniMatrix.identity(ring, 4),
                               exp_nilpotent(e01), exp_nilpotent(chain)])


def six_point_cover() -> FiniteCover:
    """Three overlapping opens on a six-point base."""
    return FiniteCover(
        ["a", "b", "c", "d", "e", "f"],
        [("a", "b", "c", "d"), ("c", "d", "e"), ("d", "e", "f")])


def cover_local_sections(field=QQ):
    """Heisenberg-valued local sections for the six-point cover; the values
    genuinely disagree on the overlaps, so the glued levels depend on t."""
    span = heisenberg_span(field)

    def pt(*coords):
        return point_from_coordinates(span, coords)

    vals0 = {"a": pt(1, 0, 0), "b": pt(1, 1, 0), "c": pt(1, 0, 0),
             "d": pt(0, 2, 1)}
    vals1 = {"c": pt(0, 1, 0), "d": pt(1, 1, Fraction(1, 2)), "e": pt(2, 0, 0)}
    vals2 = {"d": pt(0, 0, 1), "e": pt(2, 0, 0), "f": pt(1, 2, 3)}
    return span, [LocalSection(0, vals0), LocalSection(1, vals1),
                  LocalSection(2, vals2)]


def sqrt2_field() -> ScalarField:
    return ScalarField.extension("r", (-2, 0, 1))


def sqrt2_orbit() -> GaloisOrbit:
    """A two-point Heisenberg orbit over Q(sqrt 2), conjugate under r -> -r."""
    field = sqrt2_field()
    action = GaloisAction(field, [[0, -1]])
    span = heisenberg_span(field)
    ring = span.ring
    r = field.gen
    z0 = UniMatrix.from_entries(ring, 3, {
        (0, 1): ring.constant(r),
        (1, 2): ring.constant(r + 1),
        (0, 2): ring.constant(r * 2 - 1),
    })
    sigma = action.generators[0]
    z1 = z0.map_entries(sigma, ring)
    return GaloisOrbit(span, action, [z0, z1])


def cubic_field() -> ScalarField:
    """The cyclic cubic field cut out by x^3 - 3x + 1; the map x -> x^2 - 2
    generates its Galois group of order three."""
    return ScalarField.extension("c", (1, -3, 0, 1))


def cubic_orbit() -> GaloisOrbit:
    field = cubic_field()
    theta = field.gen
    action = GaloisAction(field, [theta * theta - 2])
    span = heisenberg_span(field)
    ring = span.ring
    z0 = UniMatrix.from_entries(ring, 3, {
        (0, 1): ring.constant(theta),
        (1, 2): ring.constant(theta * theta),
        (0, 2): ring.constant(theta - 1),
    })
    sigma = action.generators[0]
    z1 = z0.map_entries(sigma, ring)
    z2 = z1.map_entries(sigma, ring)
    return GaloisOrbit(span, action, [z0, z1, z2])