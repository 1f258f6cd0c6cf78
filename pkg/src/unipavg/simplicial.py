"""Simplicial sections over a finite cover, and quotient-tower checks.

The base space is a finite set of labelled points covered by finitely many
opens.  Local torsor sections (one group element per point per open) are
glued into a system of averaged sections: one matrix-valued polynomial on
the q-simplex for every weakly increasing multi-index of opens and every
point of the corresponding intersection.  The defining compatibility is
that pulling a level-q datum back along any order-preserving map of
simplices reproduces the datum of the reindexed multi-index.

`tower_compatibility` checks the finite content of averaging through a
descending chain of ideals: projections to each quotient commute with the
average, and the quotient averages agree along the induced maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from itertools import combinations_with_replacement

from .average import SectionTuple, wav
from .errors import InputError, MembershipError, RingMismatch
from .exactring import PolyRing, SimplexMap, substitute_simplex_map
from .nilpotent import (LieHom, LieSpan, UniMatrix, apply_hom, log_unipotent,
                        quotient_span)


class FiniteCover:
    """A finite point set together with a covering family of opens."""

    __slots__ = ("points", "opens")

    def __init__(self, points, opens):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise InputError("duplicate base point labels")
        fixed = []
        pointset = set(self.points)
        for op in opens:
            op = tuple(op)
            if len(set(op)) != len(op):
                raise InputError("an open lists a point twice")
            if not set(op) <= pointset:
                raise InputError("an open contains unknown points")
            fixed.append(op)
        self.opens = tuple(fixed)
        if not self.opens:
            raise InputError("a cover needs at least one open")
        covered = set()
        for op in self.opens:
            covered.update(op)
        if covered != pointset:
            missing = sorted(pointset - covered, key=str)
            raise InputError("opens do not cover the base; missing %s" % (missing,))

    @property
    def m(self):
        """Largest open index."""
        return len(self.opens) - 1

    def intersection(self, multi_index):
        """Points of the intersection of the opens named by a multi-index,
        in base order."""
        sets = [set(self.opens[i]) for i in multi_index]
        common = set.intersection(*sets) if sets else set(self.points)
        return tuple(x for x in self.points if x in common)

    def multi_indices(self, q):
        """All weakly increasing multi-indices (i_0 <= ... <= i_q)."""
        return list(combinations_with_replacement(range(len(self.opens)), q + 1))

    def __repr__(self):
        return "FiniteCover(%d points, %d opens)" % (len(self.points), len(self.opens))


class LocalSection:
    """A section over one open: a constant group element per point."""

    __slots__ = ("open_index", "values")

    def __init__(self, open_index, values):
        self.open_index = int(open_index)
        self.values = dict(values)

    def check_against(self, cover, group):
        if not 0 <= self.open_index < len(cover.opens):
            raise InputError("local section references open %d of %d"
                             % (self.open_index, len(cover.opens)))
        expected = set(cover.opens[self.open_index])
        if set(self.values) != expected:
            raise InputError("local section for open %d is not defined on exactly "
                             "its points" % self.open_index)
        for x, mat in self.values.items():
            if not isinstance(mat, UniMatrix):
                raise InputError("local section values must be UniMatrix constants")
            if mat.ring.q != 0:
                raise InputError("local section values must be constant in t")
            if mat.n != group.n or mat.ring.field != group.field:
                raise RingMismatch("local section value at %r has the wrong shape" % (x,))
            try:
                group.coordinates(log_unipotent(mat))
            except MembershipError:
                raise MembershipError("local value at point %r lies outside the "
                                      "group span" % (x,)) from None

    def __repr__(self):
        return "LocalSection(open %d, %d points)" % (self.open_index, len(self.values))


class SimplicialSection:
    """Averaged sections for every multi-index of opens, level by level.

    ``levels[q]`` maps each weakly increasing multi-index (i_0, ..., i_q)
    with nonempty intersection to a {point: UniMatrix on the q-simplex} map.
    """

    __slots__ = ("cover", "group", "levels", "max_q")

    def __init__(self, cover, group, levels, max_q):
        self.cover = cover
        self.group = group
        self.levels = levels
        self.max_q = max_q

    def value(self, multi_index, point):
        q = len(multi_index) - 1
        return self.levels[q][tuple(multi_index)][point]

    def __repr__(self):
        counts = {q: len(lv) for q, lv in self.levels.items()}
        return "SimplicialSection(max_q=%d, indices per level %s)" % (self.max_q, counts)


@dataclass
class ValidationReport:
    ok: bool
    checks: int
    failures: list = dataclass_field(default_factory=list)

    def first_failure(self):
        return self.failures[0] if self.failures else None

    def summary(self):
        if self.ok:
            return "pass (%d checks)" % self.checks
        f = self.failures[0]
        return "FAIL at map %s, multi-index %s, point %r (%d checks, %d failures)" % (
            f.get("map"), f.get("multi_index"), f.get("point"),
            self.checks, len(self.failures))


def build_simplicial_section(cover: FiniteCover, local_sections, group: LieSpan,
                             max_q=3) -> SimplicialSection:
    """Glue local sections into averaged sections on every multi-intersection:
    the level-q datum at (i_0, ..., i_q) is, pointwise, the weighted average
    of the local values of opens i_0, ..., i_q."""
    local_sections = list(local_sections)
    if len(local_sections) != len(cover.opens):
        raise InputError("expected one local section per open (%d), got %d"
                         % (len(cover.opens), len(local_sections)))
    by_open = {}
    for ls in local_sections:
        if not isinstance(ls, LocalSection):
            raise InputError("expected LocalSection values")
        if ls.open_index in by_open:
            raise InputError("two local sections for open %d" % ls.open_index)
        ls.check_against(cover, group)
        by_open[ls.open_index] = ls
    levels = {}
    for q in range(max_q + 1):
        level = {}
        for mi in cover.multi_indices(q):
            pts = cover.intersection(mi)
            if not pts:
                continue
            per_point = {}
            for x in pts:
                tup = SectionTuple(group, [by_open[i].values[x] for i in mi])
                per_point[x] = wav(tup)
            level[mi] = per_point
        levels[q] = level
    return SimplicialSection(cover, group, levels, max_q)


def _reindex(multi_index, alpha):
    """The multi-index seen through alpha: component k becomes i_{alpha(k)}."""
    return tuple(multi_index[alpha(v)] for v in range(alpha.p + 1))


def validate_simplicial_section(s: SimplicialSection, max_q=None) -> ValidationReport:
    """Check the defining conditions: each level datum is defined on exactly
    the points of its intersection and lies in the group (condition (i)),
    and every coface and codegeneracy pullback matches the reindexed datum
    (condition (ii)); compositions of these generate all order maps."""
    if max_q is None:
        max_q = s.max_q
    if max_q > s.max_q:
        raise InputError("levels are only populated up to q = %d" % s.max_q)
    cover = s.cover
    report = ValidationReport(ok=True, checks=0)

    def fail(**info):
        report.ok = False
        report.failures.append(info)

    # condition (i): domains and membership
    for q in range(max_q + 1):
        level = s.levels.get(q)
        if level is None:
            fail(map=None, multi_index=None, point=None,
                 detail="level %d missing" % q)
            continue
        expected_indices = {mi for mi in cover.multi_indices(q) if cover.intersection(mi)}
        if set(level) != expected_indices:
            fail(map=None, multi_index=sorted(set(level) ^ expected_indices)[0],
                 point=None, detail="level %d indexes the wrong multi-indices" % q)
        for mi, per_point in level.items():
            pts = cover.intersection(mi)
            report.checks += 1
            if set(per_point) != set(pts):
                fail(map=None, multi_index=mi, point=None,
                     detail="datum not defined on exactly the intersection")
                continue
            for x, mat in per_point.items():
                report.checks += 1
                if not isinstance(mat, UniMatrix) or mat.ring.q != q:
                    fail(map=None, multi_index=mi, point=x,
                         detail="value is not a UniMatrix on the %d-simplex" % q)
                    continue
                try:
                    s.group.coordinates(log_unipotent(mat))
                except (MembershipError, RingMismatch):
                    fail(map=None, multi_index=mi, point=x,
                         detail="value lies outside the group")

    # condition (ii): compatibility along cofaces and codegeneracies
    def compare(alpha, q_high_datum_level, mi, x, pulled):
        other = s.levels[q_high_datum_level].get(_reindex(mi, alpha), {}).get(x)
        report.checks += 1
        if other is None:
            fail(map=alpha.describe(), multi_index=mi, point=x,
                 detail="reindexed datum missing")
        elif pulled != other:
            fail(map=alpha.describe(), multi_index=mi, point=x,
                 detail="pullback does not match reindexed datum")

    for q in range(1, max_q + 1):
        for i in range(q + 1):
            alpha = SimplexMap.coface(q, i)
            for mi, per_point in s.levels.get(q, {}).items():
                for x, mat in per_point.items():
                    target = PolyRing(mat.ring.field, alpha.p, mat.ring.params)
                    pulled = mat.map_entries(
                        lambda e: substitute_simplex_map(e, alpha), target)
                    compare(alpha, q - 1, mi, x, pulled)
    for q in range(max_q):
        for i in range(q + 1):
            alpha = SimplexMap.codegeneracy(q, i)
            for mi, per_point in s.levels.get(q, {}).items():
                for x, mat in per_point.items():
                    target = PolyRing(mat.ring.field, alpha.p, mat.ring.params)
                    pulled = mat.map_entries(
                        lambda e: substitute_simplex_map(e, alpha), target)
                    compare(alpha, q + 1, mi, x, pulled)
    return report


@dataclass
class TowerReport:
    ok: bool
    levels: list
    failures: list = dataclass_field(default_factory=list)

    def summary(self):
        status = "pass" if self.ok else "FAIL"
        dims = ", ".join("dim %d -> %d" % (lv["ideal_dim"], lv["quotient_dim"])
                         for lv in self.levels)
        return "%s (%s)" % (status, dims)


def tower_compatibility(t: SectionTuple, ideals) -> TowerReport:
    """Project a tuple through a descending chain of ideals and verify that
    averaging commutes with every projection and with the induced maps
    between consecutive quotients."""
    ideals = list(ideals)
    group = t.group
    if t.r != 0:
        raise InputError("tower checks need t-constant sections")
    for k in range(len(ideals) - 1):
        nxt, cur = ideals[k + 1], ideals[k]
        for b in nxt.basis:
            if not cur.contains(b):
                raise InputError("ideal chain is not descending at step %d" % (k + 1))

    base_avg = wav(t)
    report = TowerReport(ok=True, levels=[])
    quotients = []
    for k, ideal in enumerate(ideals):
        quotient, proj = quotient_span(group, ideal)   # validates ideal-ness
        projected = SectionTuple(quotient, [apply_hom(proj, s) for s in t.sections])
        q_avg = wav(projected)
        pushed = apply_hom(proj, base_avg)
        ok = pushed == q_avg
        if not ok:
            report.ok = False
            report.failures.append("projection %d does not commute with the average" % k)
        report.levels.append({"ideal_dim": ideal.dim, "quotient_dim": quotient.dim,
                              "commutes": ok})
        quotients.append((quotient, proj, q_avg))

    for k in range(len(quotients) - 1):
        coarse_quotient, coarse_proj, coarse_avg = quotients[k]
        fine_quotient, fine_proj, fine_avg = quotients[k + 1]
        # the induced map sends each fine basis vector, via a chosen
        # preimage upstairs, to its coarse projection
        images = [apply_hom(coarse_proj, x) for x in fine_proj.section]
        try:
            induced = LieHom(fine_quotient, coarse_quotient, images)
        except InputError as exc:
            report.ok = False
            report.failures.append("no induced map between quotients %d and %d: %s"
                                   % (k + 1, k, exc))
            continue
        for b in group.basis:
            if apply_hom(induced, apply_hom(fine_proj, b)) != apply_hom(coarse_proj, b):
                report.ok = False
                report.failures.append("induced map %d -> %d does not factor the "
                                       "projection" % (k + 1, k))
                break
        if apply_hom(induced, fine_avg) != coarse_avg:
            report.ok = False
            report.failures.append("averages disagree along the tower at step %d" % k)
    return report