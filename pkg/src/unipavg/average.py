"""The weighted-average operators on tuples of torsor sections.

A tuple (f_0, ..., f_q) of sections of a trivial torsor under a unipotent
group is symmetrized by

    f'_i = exp( sum_j t_j * log(f_j f_i^{-1}) ) * f_i ,

one formula with two flavors: `wsym` for sections already living over the
q-simplex, `lift_w` for t-constant sections (the transitions are then
t-constant as well).  Iterating wsym a number of times equal to the length
of the group's derived series always produces a tuple whose components all
agree; the common value is the weighted average `wav`, a section over the
simplex that restricts to f_i at the i-th vertex.

The torsor is always the group acting on itself by left multiplication;
transitions are f_j f_i^{-1}, never f_i^{-1} f_j.
"""

from __future__ import annotations

from .errors import InputError, MembershipError, NonConstantError, RingMismatch
from .exactring import (PolyRing, SimplexMap, eval_at_weights, permute_coordinates,
                        substitute_simplex_map)
from .nilpotent import (LieSpan, NilMatrix, UniMatrix, derived_series_length,
                        embed_simplex, exp_nilpotent, full_unipotent_span,
                        log_unipotent)

__all__ = [
    "WeightSeq", "SectionTuple", "SimplexMap", "transition", "wsym", "lift_w",
    "wav", "act_simplex_map", "act_permutation", "wav_at_weights",
]


class WeightSeq:
    """q+1 scalars summing to 1 exactly: a rational point of the q-simplex."""

    __slots__ = ("field", "values")

    def __init__(self, field, values):
        self.field = field
        self.values = tuple(field.value(v) for v in values)
        if not self.values:
            raise InputError("a weight sequence needs at least one entry")
        acc = field.zero
        for v in self.values:
            acc = acc + v
        if acc != field.one:
            raise InputError("weights must sum to 1 exactly")

    @classmethod
    def uniform(cls, q, field):
        from fractions import Fraction
        return cls(field, [Fraction(1, q + 1)] * (q + 1))

    @classmethod
    def vertex(cls, q, i, field):
        if not 0 <= i <= q:
            raise InputError("vertex index out of range")
        return cls(field, [1 if j == i else 0 for j in range(q + 1)])

    @property
    def q(self):
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return "WeightSeq(%s)" % (list(self.values),)


class SectionTuple:
    """q+1 sections of the trivial torsor: unit upper triangular matrices
    over a common ring whose logs lie in the group span.

    The domain degree r is the simplex dimension of the entry ring: r = 0
    for t-constant sections, r = q for sections over the q-simplex.  These
    are the only two shapes the operators produce or consume.
    """

    __slots__ = ("group", "sections", "q", "r")

    def __init__(self, group, sections):
        if not isinstance(group, LieSpan):
            raise InputError("a section tuple needs a LieSpan group")
        sections = tuple(sections)
        if not sections:
            raise InputError("a section tuple needs at least one section")
        self.group = group
        self.sections = sections
        self.q = len(sections) - 1
        ring = sections[0].ring
        self.r = ring.q
        if self.r not in (0, self.q):
            raise InputError("domain degree %d must be 0 or the tuple degree %d"
                             % (self.r, self.q))
        for s in sections:
            if not isinstance(s, UniMatrix):
                raise InputError("sections must be UniMatrix values")
            if s.ring != ring or s.n != group.n:
                raise RingMismatch("sections must share one ring and matrix size")
            if s.ring.field != group.field:
                raise RingMismatch("section field differs from the group's")
            try:
                group.coordinates(log_unipotent(s))
            except MembershipError:
                raise MembershipError("a section's log lies outside the group span") from None

    @property
    def ring(self):
        return self.sections[0].ring

    def __len__(self):
        return len(self.sections)

    def __getitem__(self, i):
        return self.sections[i]

    def __iter__(self):
        return iter(self.sections)

    def __eq__(self, other):
        return (isinstance(other, SectionTuple)
                and self.group.same_space(other.group)
                and self.sections == other.sections)

    def __ne__(self, other):
        return not self.__eq__(other)

    def is_constant_tuple(self):
        """Do all components agree (as canonical forms)?"""
        first = self.sections[0]
        return all(s == first for s in self.sections[1:])

    def __repr__(self):
        return "SectionTuple(q=%d, r=%d, n=%d, dim %d group)" % (
            self.q, self.r, self.group.n, self.group.dim)


def transition(f_i: UniMatrix, f_j: UniMatrix, group=None) -> UniMatrix:
    """The unique g with f_j = g * f_i, namely f_j * f_i^{-1}."""
    if not isinstance(f_i, UniMatrix) or not isinstance(f_j, UniMatrix):
        raise InputError("transitions are defined between UniMatrix sections")
    if f_i.ring != f_j.ring or f_i.n != f_j.n:
        raise RingMismatch("sections live in different spaces")
    if group is not None:
        for f in (f_i, f_j):
            try:
                group.coordinates(log_unipotent(f))
            except MembershipError:
                raise MembershipError("section log lies outside the group span") from None
    return f_j * f_i.inverse()


def _transition_logs(t: SectionTuple):
    """logs[i][j] = log(f_j f_i^{-1}); computed for i < j and negated for
    the mirror entries, since log(g^{-1}) = -log(g)."""
    m = len(t.sections)
    inverses = [s.inverse() for s in t.sections]
    logs = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            l_ij = log_unipotent(t.sections[j] * inverses[i])
            logs[i][j] = l_ij
            logs[j][i] = -l_ij
    return logs


def wsym(t: SectionTuple) -> SectionTuple:
    """One symmetrization pass on a tuple of sections over the q-simplex."""
    if t.r != t.q:
        raise InputError("wsym needs sections over the q-simplex (domain degree %d, "
                         "tuple degree %d)" % (t.r, t.q))
    if t.q == 0:
        return t
    ring = t.ring
    coords = [ring.coordinate(j) for j in range(t.q + 1)]
    logs = _transition_logs(t)
    new = []
    for i in range(t.q + 1):
        acc = NilMatrix.zero(ring, t.group.n)
        for j in range(t.q + 1):
            if j != i:
                acc = acc + logs[i][j].scale(coords[j])
        new.append(exp_nilpotent(acc) * t.sections[i])
    return SectionTuple(t.group, new)


def lift_w(t: SectionTuple) -> SectionTuple:
    """Lift a tuple of t-constant sections onto the q-simplex, with the same
    defining formula but t-constant transitions."""
    if t.r != 0:
        raise InputError("lift_w needs t-constant sections (domain degree %d)" % t.r)
    if t.q == 0:
        return t
    embedded = SectionTuple(t.group, [embed_simplex(s, t.q) for s in t.sections])
    return wsym(embedded)


def wav(t: SectionTuple, d_override=None) -> UniMatrix:
    """The weighted average of a tuple of t-constant sections: lift, then
    symmetrize d times (d = derived series length of the group, or a larger
    override); all components then agree and the common value is returned."""
    if t.r != 0:
        raise InputError("wav needs t-constant sections (domain degree %d)" % t.r)
    d = derived_series_length(t.group)
    if d_override is not None:
        if not isinstance(d_override, int) or d_override < d:
            raise InputError("iteration override must be an integer >= %d" % d)
        d = d_override
    cur = lift_w(t)
    for _ in range(d):
        cur = wsym(cur)
    if not cur.is_constant_tuple():
        raise NonConstantError("tuple components still disagree after %d passes" % d)
    return cur.sections[0]


def act_simplex_map(t: SectionTuple, alpha: SimplexMap) -> SectionTuple:
    """The simplicial action: reindex sections through alpha and pull their
    entries back along the induced map of simplices."""
    if not isinstance(alpha, SimplexMap):
        raise InputError("expected a SimplexMap")
    if alpha.q != t.q:
        raise InputError("map target [%d] does not match tuple degree %d"
                         % (alpha.q, t.q))
    picked = [t.sections[alpha(i)] for i in range(alpha.p + 1)]
    if t.r == 0:
        return SectionTuple(t.group, picked)
    target = PolyRing(t.ring.field, alpha.p, t.ring.params)
    pulled = [s.map_entries(lambda e: substitute_simplex_map(e, alpha), target)
              for s in picked]
    return SectionTuple(t.group, pulled)


def act_permutation(t: SectionTuple, perm) -> SectionTuple:
    """The symmetry action of a permutation of {0, ..., q}: section i moves
    to slot perm(i) while entries substitute t_i -> t_{perm(i)}."""
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(t.q + 1)):
        raise InputError("not a permutation of 0..%d" % t.q)
    new = [None] * (t.q + 1)
    for i in range(t.q + 1):
        new[perm[i]] = t.sections[i]
    if t.r == 0:
        return SectionTuple(t.group, new)
    target = t.ring
    moved = [s.map_entries(lambda e: permute_coordinates(e, perm), target)
             for s in new]
    return SectionTuple(t.group, moved)


def wav_at_weights(points, weights: WeightSeq, group=None) -> UniMatrix:
    """The weighted average point of q+1 constant group elements: evaluate
    the averaged section at the given weights."""
    points = list(points)
    if not points:
        raise InputError("need at least one point")
    n = points[0].n
    field = points[0].ring.field
    if group is None:
        group = full_unipotent_span(n, field)
    if len(points) != len(weights):
        raise InputError("expected %d points for these weights, got %d"
                         % (len(weights), len(points)))
    if weights.field != field:
        raise RingMismatch("weights and points use different fields")
    t = SectionTuple(group, points)
    averaged = wav(t)
    ring = averaged.ring
    out_ring = PolyRing(field, 0, ring.params)
    if ring.q == 0:
        return averaged
    def ev(entry):
        return out_ring.constant(eval_at_weights(entry, weights.values))
    return averaged.map_entries(ev, out_ring)