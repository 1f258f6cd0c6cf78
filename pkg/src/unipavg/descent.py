"""Rational points from Galois orbits by uniform averaging.

An orbit of torsor points over a field extension, closed under the Galois
generators, is averaged with the uniform weight sequence.  The permutation
symmetry of the average together with the rationality of the weights
forces the result to be fixed by the Galois action, hence to have rational
entries; both facts are asserted structurally, never numerically.
"""

from __future__ import annotations

from fractions import Fraction

from .average import WeightSeq, wav_at_weights
from .errors import InputError, MembershipError, RationalityError, RingMismatch
from .exactring import QQ, GaloisAction, PolyRing
from .nilpotent import LieSpan, UniMatrix, log_unipotent

__all__ = ["GaloisOrbit", "rational_point"]


class GaloisOrbit:
    """Torsor points over an extension field, closed under a Galois action.

    Construction verifies that applying each generator entrywise permutes
    the list of points (exact multiset equality) and that every point's
    log lies in the group span.
    """

    __slots__ = ("group", "action", "points")

    def __init__(self, group: LieSpan, action: GaloisAction, points):
        points = tuple(points)
        if not points:
            raise InputError("an orbit needs at least one point")
        if not isinstance(action, GaloisAction):
            raise InputError("expected a GaloisAction")
        if group.field != action.field:
            raise RingMismatch("group span and Galois action use different fields")
        for z in points:
            if not isinstance(z, UniMatrix):
                raise InputError("orbit points must be UniMatrix values")
            if z.n != group.n or z.ring.field != group.field:
                raise RingMismatch("orbit point has the wrong shape or field")
            if z.ring.q != 0 or z.ring.params:
                raise InputError("orbit points must be constant matrices")
            try:
                group.coordinates(log_unipotent(z))
            except MembershipError:
                raise MembershipError("an orbit point lies outside the group span") from None
        self.group = group
        self.action = action
        self.points = points
        for g_idx, sigma in enumerate(action.generators):
            remaining = list(points)
            for z in points:
                moved = z.map_entries(sigma, z.ring)
                for k, w in enumerate(remaining):
                    if moved == w:
                        del remaining[k]
                        break
                else:
                    raise InputError("orbit is not closed under Galois generator %d"
                                     % g_idx)

    @property
    def q(self):
        return len(self.points) - 1

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return "GaloisOrbit(%d points over %r)" % (len(self.points), self.action.field)


def rational_point(orbit: GaloisOrbit) -> UniMatrix:
    """The uniform-weight average of the orbit, returned over the rational
    field.  Aborts loudly if the result fails Galois invariance or has any
    coordinate outside the rationals; with a valid orbit neither happens.
    """
    q = orbit.q
    field = orbit.action.field
    weights = WeightSeq(field, [Fraction(1, q + 1)] * (q + 1))
    averaged = wav_at_weights(orbit.points, weights, orbit.group)
    for sigma in orbit.action.generators:
        if averaged.map_entries(sigma, averaged.ring) != averaged:
            raise RationalityError("averaged point is not Galois invariant")
    rational_ring = PolyRing(QQ, 0)

    def descend(entry):
        value = entry.constant_value()
        if not value.is_rational:
            raise RationalityError("averaged point has an irrational entry")
        return rational_ring.constant(value.as_fraction())

    return averaged.map_entries(descend, rational_ring)