"""JSON encoding and decoding for every value the CLI touches.

All numbers travel as exact integers: rationals are {"num", "den"}
objects, extension scalars are {"coords": [rational]} in the power basis.
Emitted documents parse back to equal values; term lists are sorted so
output is deterministic, though equality is of canonical forms, not bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .exactring import (QQ, GaloisAction, PolyRing, ScalarField, ScalarValue,
                        SimplexPoly)
from .nilpotent import LieSpan, NilMatrix, UniMatrix
from .average import SectionTuple
from .simplicial import (FiniteCover, LocalSection, SimplicialSection,
                         TowerReport, ValidationReport)
from .descent import GaloisOrbit


class FormatError(InputError):
    """Malformed or inconsistent JSON input."""


def _expect(obj, kind, what):
    if not isinstance(obj, kind):
        raise FormatError("expected %s for %s, got %s"
                          % (kind.__name__, what, type(obj).__name__))
    return obj


# ---------------------------------------------------------------------------
# numbers and fields
# ---------------------------------------------------------------------------

def fraction_to_json(f: Fraction):
    return {"num": f.numerator, "den": f.denominator}


def fraction_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise FormatError("booleans are not numbers")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict) and set(obj) <= {"num", "den"}:
        num = _expect(obj.get("num", 0), int, "num")
        den = _expect(obj.get("den", 1), int, "den")
        if den == 0:
            raise FormatError("zero denominator")
        return Fraction(num, den)
    raise FormatError("expected an integer or a num/den object")


def field_to_json(field: ScalarField):
    if field.is_rationals:
        return {"rationals": True}
    return {"var": field.var,
            "minpoly": [fraction_to_json(c) for c in field.minpoly]}


def field_from_json(obj) -> ScalarField:
    if obj is None:
        return QQ
    _expect(obj, dict, "field")
    if obj.get("rationals"):
        return QQ
    if "minpoly" not in obj or "var" not in obj:
        raise FormatError("a field needs either rationals:true or var+minpoly")
    coeffs = [fraction_from_json(c) for c in _expect(obj["minpoly"], list, "minpoly")]
    return ScalarField.extension(_expect(obj["var"], str, "var"), coeffs)


def scalar_to_json(v: ScalarValue):
    if v.field.is_rationals:
        return fraction_to_json(v.coords[0])
    return {"coords": [fraction_to_json(c) for c in v.coords]}


def scalar_from_json(field: ScalarField, obj) -> ScalarValue:
    if isinstance(obj, dict) and "coords" in obj:
        coords = [fraction_from_json(c) for c in _expect(obj["coords"], list, "coords")]
        return field.value(coords)
    return field.value(fraction_from_json(obj))


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def poly_to_json(p: SimplexPoly):
    terms = []
    for exp in sorted(p.terms, key=lambda e: (sum(e), e)):
        terms.append({"exp": list(exp), "coef": scalar_to_json(p.terms[exp])})
    return {"q": p.ring.q, "params": list(p.ring.params), "terms": terms}


def poly_from_json(field: ScalarField, obj) -> SimplexPoly:
    _expect(obj, dict, "polynomial")
    q = _expect(obj.get("q", 0), int, "q")
    params = tuple(_expect(n, str, "parameter name")
                   for n in _expect(obj.get("params", []), list, "params"))
    ring = PolyRing(field, q, params)
    raw = {}
    for term in _expect(obj.get("terms", []), list, "terms"):
        _expect(term, dict, "term")
        exp = tuple(_expect(e, int, "exponent")
                    for e in _expect(term.get("exp"), list, "exp"))
        if len(exp) != ring.nvars:
            raise FormatError("exponent length %d, ring has %d variables"
                              % (len(exp), ring.nvars))
        coef = scalar_from_json(field, term.get("coef"))
        raw[exp] = raw.get(exp, field.zero) + coef
    return ring.poly(raw)


# ---------------------------------------------------------------------------
# matrices, spans, tuples
# ---------------------------------------------------------------------------

def matrix_to_json(mat):
    return {"n": mat.n, "entries": [[poly_to_json(e) for e in row] for row in mat.rows]}


def _grid_from_json(field, obj, what):
    _expect(obj, dict, what)
    n = _expect(obj.get("n"), int, "n")
    if n < 1:
        raise FormatError("matrix size must be at least 1")
    entries = _expect(obj.get("entries"), list, "entries")
    if len(entries) != n or any(len(_expect(r, list, "matrix row")) != n for r in entries):
        raise FormatError("matrix entries must form an n x n grid")
    rows = [[poly_from_json(field, e) for e in row] for row in entries]
    rings = {e.ring for row in rows for e in row}
    if len(rings) > 1:
        raise FormatError("matrix entries mix different rings")
    return n, rows, rows[0][0].ring if rows else PolyRing(field, 0)


def nil_from_json(field, obj) -> NilMatrix:
    n, rows, ring = _grid_from_json(field, obj, "matrix")
    return NilMatrix(ring, rows)


def uni_from_json(field, obj) -> UniMatrix:
    n, rows, ring = _grid_from_json(field, obj, "matrix")
    return UniMatrix(ring, rows)


def span_to_json(span: LieSpan):
    return {"n": span.n, "basis": [matrix_to_json(b) for b in span.basis]}


def span_from_json(field, obj) -> LieSpan:
    _expect(obj, dict, "group span")
    n = _expect(obj.get("n"), int, "n")
    basis = [nil_from_json(field, b) for b in _expect(obj.get("basis", []), list, "basis")]
    return LieSpan(basis, n=n, field=field)


def tuple_to_json(t: SectionTuple):
    return {"field": field_to_json(t.group.field),
            "group": span_to_json(t.group),
            "sections": [matrix_to_json(s) for s in t.sections]}


def tuple_from_json(obj) -> SectionTuple:
    _expect(obj, dict, "section tuple")
    field = field_from_json(obj.get("field"))
    group = span_from_json(field, _expect(obj.get("group"), dict, "group"))
    sections = [uni_from_json(field, s)
                for s in _expect(obj.get("sections"), list, "sections")]
    return SectionTuple(group, sections)


# ---------------------------------------------------------------------------
# covers, local and simplicial sections
# ---------------------------------------------------------------------------

def cover_to_json(cover: FiniteCover):
    return {"points": list(cover.points), "opens": [list(op) for op in cover.opens]}


def cover_from_json(obj) -> FiniteCover:
    _expect(obj, dict, "cover")
    points = [_expect(x, str, "point label")
              for x in _expect(obj.get("points"), list, "points")]
    opens = [[_expect(x, str, "point label") for x in _expect(op, list, "open")]
             for op in _expect(obj.get("opens"), list, "opens")]
    return FiniteCover(points, opens)


def locals_to_json(local_sections):
    return {str(ls.open_index): {x: matrix_to_json(v) for x, v in ls.values.items()}
            for ls in local_sections}


def locals_from_json(field, obj):
    _expect(obj, dict, "local sections")
    parsed = []
    for key, values in obj.items():
        try:
            idx = int(key)
        except (TypeError, ValueError):
            raise FormatError("local-section keys must be open indices") from None
        parsed.append((idx, values))
    out = []
    for idx, values in sorted(parsed):
        vals = {_expect(x, str, "point label"): uni_from_json(field, v)
                for x, v in _expect(values, dict, "local values").items()}
        out.append(LocalSection(idx, vals))
    return out


def _mi_key(mi):
    return ".".join(str(i) for i in mi)


def _mi_from_key(key):
    try:
        return tuple(int(p) for p in key.split("."))
    except ValueError:
        raise FormatError("bad multi-index key %r" % (key,)) from None


def simplicial_to_json(s: SimplicialSection):
    levels = {}
    for q in sorted(s.levels):
        for mi, per_point in sorted(s.levels[q].items()):
            levels[_mi_key(mi)] = {x: matrix_to_json(v) for x, v in per_point.items()}
    return {"field": field_to_json(s.group.field),
            "cover": cover_to_json(s.cover),
            "group": span_to_json(s.group),
            "max_q": s.max_q,
            "levels": levels}


def simplicial_from_json(obj) -> SimplicialSection:
    _expect(obj, dict, "simplicial section")
    field = field_from_json(obj.get("field"))
    cover = cover_from_json(_expect(obj.get("cover"), dict, "cover"))
    group = span_from_json(field, _expect(obj.get("group"), dict, "group"))
    max_q = _expect(obj.get("max_q"), int, "max_q")
    levels = {q: {} for q in range(max_q + 1)}
    for key, per_point in _expect(obj.get("levels"), dict, "levels").items():
        mi = _mi_from_key(key)
        q = len(mi) - 1
        if q not in levels:
            raise FormatError("multi-index %r exceeds max_q=%d" % (key, max_q))
        vals = {_expect(x, str, "point label"): uni_from_json(field, v)
                for x, v in _expect(per_point, dict, "level datum").items()}
        levels[q][mi] = vals
    return SimplicialSection(cover, group, levels, max_q)


def validation_report_to_json(rep: ValidationReport):
    return {"ok": rep.ok, "checks": rep.checks,
            "failures": [dict(f) for f in rep.failures],
            "summary": rep.summary()}


def tower_report_to_json(rep: TowerReport):
    return {"ok": rep.ok, "levels": rep.levels, "failures": list(rep.failures),
            "summary": rep.summary()}


# ---------------------------------------------------------------------------
# Galois orbits
# ---------------------------------------------------------------------------

def orbit_to_json(orbit: GaloisOrbit):
    return {"field": field_to_json(orbit.action.field),
            "generators": [scalar_to_json(g.image) for g in orbit.action.generators],
            "group": span_to_json(orbit.group),
            "points": [matrix_to_json(z) for z in orbit.points]}


def orbit_from_json(obj) -> GaloisOrbit:
    _expect(obj, dict, "orbit")
    field = field_from_json(obj.get("field"))
    if field.is_rationals:
        raise FormatError("an orbit needs an extension field")
    gens = [scalar_from_json(field, g)
            for g in _expect(obj.get("generators"), list, "generators")]
    action = GaloisAction(field, gens)
    group = span_from_json(field, _expect(obj.get("group"), dict, "group"))
    points = [uni_from_json(field, z)
              for z in _expect(obj.get("points"), list, "points")]
    return GaloisOrbit(group, action, points)