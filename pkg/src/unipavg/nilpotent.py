"""Nilpotent matrix Lie algebras and their unipotent groups.

Elements are square matrices with simplex-polynomial entries: strictly
upper triangular for the algebra, unit upper triangular for the group.
Nilpotency makes exp and log finite sums, so everything here is exact.

Spans (subalgebras given by a finite basis of constant matrices) carry a
precomputed elimination matrix, so membership tests and coordinate solves
work uniformly for matrices with polynomial entries.  Quotients by an
ideal are re-embedded as strictly upper triangular matrices through a
weight-truncated enveloping algebra; the re-embedding is faithful because
left multiplication fixes the ground vector 1.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, MembershipError, RingMismatch
from .exactring import PolyRing, ScalarField, SimplexPoly, extend_to_simplex


# ---------------------------------------------------------------------------
# raw row helpers (tuples of tuples of SimplexPoly)
# ---------------------------------------------------------------------------

def _zero_rows(ring, n):
    z = ring.zero()
    return tuple(tuple(z for _ in range(n)) for _ in range(n))

def _identity_rows(ring, n):
    z, o = ring.zero(), ring.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))

def _add_rows(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def _sub_rows(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def _scale_rows(rows, s):
    return tuple(tuple(x * s for x in row) for row in rows)

def _matmul(a, b, ring):
    n = len(a)
    z = ring.zero()
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(n):
            acc = z
            for k in range(n):
                x = ai[k]
                if not x.is_zero:
                    y = b[k][j]
                    if not y.is_zero:
                        acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _coerce_rows(ring, n, rows):
    if len(rows) != n:
        raise InputError("expected %d rows, got %d" % (n, len(rows)))
    out = []
    for row in rows:
        if len(row) != n:
            raise InputError("matrix rows must have length %d" % n)
        new = []
        for x in row:
            if isinstance(x, SimplexPoly):
                if x.ring != ring:
                    raise RingMismatch("matrix entry over a different ring")
                new.append(x)
            else:
                new.append(ring.constant(x))
        out.append(tuple(new))
    return tuple(out)


class NilMatrix:
    """A strictly upper triangular matrix over a simplex-polynomial ring."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, rows, check=True):
        n = len(rows)
        self.ring = ring
        self.n = n
        self.rows = _coerce_rows(ring, n, rows) if check else rows
        if check:
            for i in range(n):
                for j in range(i + 1):
                    if not self.rows[i][j].is_zero:
                        raise InputError("entry (%d, %d) below or on the diagonal is nonzero" % (i, j))

    @classmethod
    def zero(cls, ring, n):
        return cls(ring, _zero_rows(ring, n), check=False)

    @classmethod
    def from_entries(cls, ring, n, entries):
        """Build from a {(i, j): value} map of strictly upper entries."""
        rows = [[ring.zero()] * n for _ in range(n)]
        for (i, j), v in entries.items():
            if not 0 <= i < j < n:
                raise InputError("entry (%d, %d) is not strictly upper in size %d" % (i, j, n))
            rows[i][j] = v if isinstance(v, SimplexPoly) else ring.constant(v)
            if rows[i][j].ring != ring:
                raise RingMismatch("matrix entry over a different ring")
        return cls(ring, tuple(tuple(r) for r in rows), check=False)

    def _require_same(self, other):
        if not isinstance(other, NilMatrix):
            raise InputError("expected a NilMatrix")
        if other.ring != self.ring or other.n != self.n:
            raise RingMismatch("matrices live in different spaces")

    def __add__(self, other):
        self._require_same(other)
        return NilMatrix(self.ring, _add_rows(self.rows, other.rows), check=False)

    def __sub__(self, other):
        self._require_same(other)
        return NilMatrix(self.ring, _sub_rows(self.rows, other.rows), check=False)

    def __neg__(self):
        return NilMatrix(self.ring, _scale_rows(self.rows, -1), check=False)

    def scale(self, s):
        return NilMatrix(self.ring, _scale_rows(self.rows, s), check=False)

    def matmul(self, other):
        self._require_same(other)
        return NilMatrix(self.ring, _matmul(self.rows, other.rows, self.ring), check=False)

    def bracket(self, other):
        """The commutator [self, other] = self other - other self."""
        self._require_same(other)
        ab = _matmul(self.rows, other.rows, self.ring)
        ba = _matmul(other.rows, self.rows, self.ring)
        return NilMatrix(self.ring, _sub_rows(ab, ba), check=False)

    @property
    def is_zero(self):
        return all(x.is_zero for row in self.rows for x in row)

    def is_constant(self):
        return all(x.is_constant for row in self.rows for x in row)

    def entry(self, i, j):
        return self.rows[i][j]

    def map_entries(self, fn, ring):
        return NilMatrix(ring, tuple(tuple(fn(x) for x in row) for row in self.rows),
                         check=False)

    def strict_upper(self):
        """The strictly upper entries, row by row."""
        return tuple(self.rows[i][j] for i in range(self.n) for j in range(i + 1, self.n))

    def __eq__(self, other):
        return (isinstance(other, NilMatrix) and self.ring == other.ring
                and self.rows == other.rows)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        body = "; ".join("[" + ", ".join(repr(x) for x in row) + "]" for row in self.rows)
        return "NilMatrix(%s)" % body


class UniMatrix:
    """A unit upper triangular matrix over a simplex-polynomial ring."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, rows, check=True):
        n = len(rows)
        self.ring = ring
        self.n = n
        self.rows = _coerce_rows(ring, n, rows) if check else rows
        if check:
            one = ring.one()
            for i in range(n):
                if self.rows[i][i] != one:
                    raise InputError("diagonal entry (%d, %d) is not 1" % (i, i))
                for j in range(i):
                    if not self.rows[i][j].is_zero:
                        raise InputError("entry (%d, %d) below the diagonal is nonzero" % (i, j))

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, _identity_rows(ring, n), check=False)

    @classmethod
    def from_entries(cls, ring, n, entries):
        rows = [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]
        for (i, j), v in entries.items():
            if not 0 <= i < j < n:
                raise InputError("entry (%d, %d) is not strictly upper in size %d" % (i, j, n))
            rows[i][j] = v if isinstance(v, SimplexPoly) else ring.constant(v)
            if rows[i][j].ring != ring:
                raise RingMismatch("matrix entry over a different ring")
        return cls(ring, tuple(tuple(r) for r in rows), check=False)

    def _require_same(self, other):
        if not isinstance(other, UniMatrix):
            raise InputError("expected a UniMatrix")
        if other.ring != self.ring or other.n != self.n:
            raise RingMismatch("matrices live in different spaces")

    def __mul__(self, other):
        self._require_same(other)
        return UniMatrix(self.ring, _matmul(self.rows, other.rows, self.ring), check=False)

    def inverse(self):
        """Exact inverse via the terminating Neumann series of U - I."""
        x = _sub_rows(self.rows, _identity_rows(self.ring, self.n))
        acc = _identity_rows(self.ring, self.n)
        pw = _identity_rows(self.ring, self.n)
        for _ in range(1, self.n):
            pw = _scale_rows(_matmul(pw, x, self.ring), -1)
            acc = _add_rows(acc, pw)
        return UniMatrix(self.ring, acc, check=False)

    @property
    def is_identity(self):
        return all(self.rows[i][j].is_zero
                   for i in range(self.n) for j in range(i + 1, self.n))

    def is_constant(self):
        return all(x.is_constant for row in self.rows for x in row)

    def entry(self, i, j):
        return self.rows[i][j]

    def map_entries(self, fn, ring):
        return UniMatrix(ring, tuple(tuple(fn(x) for x in row) for row in self.rows),
                         check=False)

    def strict_upper(self):
        return tuple(self.rows[i][j] for i in range(self.n) for j in range(i + 1, self.n))

    def __eq__(self, other):
        return (isinstance(other, UniMatrix) and self.ring == other.ring
                and self.rows == other.rows)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        body = "; ".join("[" + ", ".join(repr(x) for x in row) + "]" for row in self.rows)
        return "UniMatrix(%s)" % body


# ---------------------------------------------------------------------------
# exp, log, BCH
# ---------------------------------------------------------------------------

def exp_nilpotent(n_mat: NilMatrix) -> UniMatrix:
    """exp(N) = sum_{k < n} N^k / k!, exact because N^n = 0."""
    ring, n = n_mat.ring, n_mat.n
    acc = _identity_rows(ring, n)
    term = _identity_rows(ring, n)
    for k in range(1, n):
        term = _scale_rows(_matmul(term, n_mat.rows, ring), Fraction(1, k))
        acc = _add_rows(acc, term)
    return UniMatrix(ring, acc, check=False)


def log_unipotent(u_mat: UniMatrix) -> NilMatrix:
    """log(U) = sum_{1 <= k < n} (-1)^(k+1) (U - I)^k / k."""
    ring, n = u_mat.ring, u_mat.n
    x = _sub_rows(u_mat.rows, _identity_rows(ring, n))
    acc = _zero_rows(ring, n)
    pw = _identity_rows(ring, n)
    for k in range(1, n):
        pw = _matmul(pw, x, ring)
        coef = Fraction(1, k) if k % 2 == 1 else Fraction(-1, k)
        acc = _add_rows(acc, _scale_rows(pw, coef))
    return NilMatrix(ring, acc, check=False)


def bch(a: NilMatrix, b: NilMatrix) -> NilMatrix:
    """The group-law pullback log(exp(a) exp(b)), exact in a nilpotent algebra."""
    if a.ring != b.ring or a.n != b.n:
        raise RingMismatch("matrices live in different spaces")
    return log_unipotent(exp_nilpotent(a) * exp_nilpotent(b))


def embed_simplex(mat, q):
    """Lift a matrix with t-constant entries onto the q-simplex ring."""
    target = PolyRing(mat.ring.field, q, mat.ring.params)
    return mat.map_entries(lambda p: extend_to_simplex(p, q), target)


# ---------------------------------------------------------------------------
# exact linear solves against a fixed independent column family
# ---------------------------------------------------------------------------

class _LinSolver:
    """Given independent columns b_1..b_m in field^E, precompute a matrix S
    with S B = [I_m; 0].  A solve then reads coordinates off the first m
    entries of S v and demands the remaining E - m entries vanish; because
    S is invertible this is equivalent to v lying in the column span."""

    __slots__ = ("field", "m", "length", "srows")

    def __init__(self, field, columns, what="basis"):
        self.field = field
        self.m = len(columns)
        self.length = len(columns[0]) if columns else 0
        if any(len(c) != self.length for c in columns):
            raise InputError("solver columns have mixed lengths")
        zero, one = field.zero, field.one
        aug = []
        for r in range(self.length):
            row = [columns[c][r] for c in range(self.m)]
            row.extend(one if r == s else zero for s in range(self.length))
            aug.append(row)
        # reduced row echelon form on the first m columns
        pivot_row = 0
        for col in range(self.m):
            sel = None
            for r in range(pivot_row, self.length):
                if not aug[r][col].is_zero:
                    sel = r
                    break
            if sel is None:
                raise InputError("the %s is linearly dependent" % what)
            aug[pivot_row], aug[sel] = aug[sel], aug[pivot_row]
            inv = aug[pivot_row][col].inverse()
            aug[pivot_row] = [x * inv for x in aug[pivot_row]]
            for r in range(self.length):
                if r != pivot_row and not aug[r][col].is_zero:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[pivot_row])]
            pivot_row += 1
        self.srows = tuple(tuple(row[self.m:]) for row in aug)

    def solve(self, vec, zero):
        """Coordinates of vec in the column family.  Entries of vec may be
        scalars or polynomials; `zero` is the zero of their ring."""
        if len(vec) != self.length:
            raise InputError("vector length %d does not match solver length %d"
                             % (len(vec), self.length))
        out = []
        for r in range(self.length):
            acc = zero
            srow = self.srows[r]
            for i, v in enumerate(vec):
                c = srow[i]
                if not c.is_zero and not v.is_zero:
                    acc = acc + v * c
            if r < self.m:
                out.append(acc)
            elif not acc.is_zero:
                raise MembershipError("vector lies outside the span")
        return out


class _Echelon:
    """Incremental row echelon store for picking independent subsets."""

    __slots__ = ("field", "rows")

    def __init__(self, field):
        self.field = field
        self.rows = []          # list of (pivot index, normalized vector)

    def reduce(self, vec):
        vec = list(vec)
        for piv, row in self.rows:
            c = vec[piv]
            if not c.is_zero:
                for i in range(piv, len(vec)):
                    vec[i] = vec[i] - c * row[i]
        return vec

    def add(self, vec):
        """Reduce vec; if independent of stored rows, keep it and return True."""
        vec = self.reduce(vec)
        piv = next((i for i, x in enumerate(vec) if not x.is_zero), None)
        if piv is None:
            return False
        inv = vec[piv].inverse()
        self.rows.append((piv, tuple(x * inv for x in vec)))
        return True

    def contains(self, vec):
        return all(x.is_zero for x in self.reduce(vec))


# ---------------------------------------------------------------------------
# spans (subalgebras) of strictly upper matrices
# ---------------------------------------------------------------------------

class LieSpan:
    """A Lie subalgebra of strictly upper triangular n x n matrices, given
    by an independent basis of constant matrices over a scalar field.
    Construction verifies independence and closure under the bracket."""

    __slots__ = ("field", "ring", "n", "basis", "_solver")

    def __init__(self, basis, n=None, field=None, check=True):
        basis = tuple(basis)
        if basis:
            first = basis[0]
            field = first.ring.field
            n = first.n
        elif n is None or field is None:
            raise InputError("an empty span needs explicit n and field")
        self.field = field
        self.n = n
        self.ring = PolyRing(field, 0)
        fixed = []
        for b in basis:
            if not isinstance(b, NilMatrix):
                raise InputError("span basis entries must be NilMatrix values")
            if b.n != n or b.ring.field != field:
                raise RingMismatch("span basis matrices live in different spaces")
            if not b.is_constant():
                raise InputError("span basis matrices must have constant entries")
            if b.ring != self.ring:
                b = b.map_entries(lambda p: self.ring.constant(p.constant_value()), self.ring)
            fixed.append(b)
        self.basis = tuple(fixed)
        columns = [tuple(e.constant_value() for e in b.strict_upper()) for b in self.basis]
        self._solver = _LinSolver(field, columns, what="span basis") if columns else None
        if check:
            for i in range(len(self.basis)):
                for j in range(i + 1, len(self.basis)):
                    br = self.basis[i].bracket(self.basis[j])
                    try:
                        self.coordinates(br)
                    except MembershipError:
                        raise InputError("span is not closed under the bracket "
                                         "(basis pair %d, %d)" % (i, j)) from None

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, mat):
        """Coordinates of a matrix (entries may be polynomials over any ring
        with the same scalar field) in the span basis.  Raises
        MembershipError when the matrix lies outside the span."""
        if not isinstance(mat, NilMatrix):
            raise InputError("expected a NilMatrix")
        if mat.n != self.n or mat.ring.field != self.field:
            raise RingMismatch("matrix does not live in this span's space")
        vec = mat.strict_upper()
        zero = mat.ring.zero()
        if self.dim == 0:
            if any(not v.is_zero for v in vec):
                raise MembershipError("vector lies outside the span")
            return []
        return self._solver.solve(vec, zero)

    def contains(self, mat):
        try:
            self.coordinates(mat)
            return True
        except MembershipError:
            return False

    def from_coordinates(self, coords, ring=None):
        ring = ring or self.ring
        if len(coords) != self.dim:
            raise InputError("expected %d coordinates, got %d" % (self.dim, len(coords)))
        acc = NilMatrix.zero(ring, self.n)
        for c, b in zip(coords, self.basis):
            lifted = b if ring == self.ring else b.map_entries(
                lambda p: ring.constant(p.constant_value()), ring)
            acc = acc + lifted.scale(c)
        return acc

    def same_space(self, other):
        """Do the two spans have identical row spaces?"""
        return (self.n == other.n and self.dim == other.dim
                and all(self.contains(b) for b in other.basis))

    def __repr__(self):
        return "LieSpan(n=%d, dim=%d over %r)" % (self.n, self.dim, self.field)


def _independent_matrices(field, mats):
    ech = _Echelon(field)
    out = []
    for m in mats:
        vec = tuple(e.constant_value() for e in m.strict_upper())
        if ech.add(vec):
            out.append(m)
    return out


def _bracket_basis(field, left, right):
    return _independent_matrices(field, (a.bracket(b) for a in left for b in right))


def lower_central_series(span: LieSpan):
    """g = g_1, g_{k+1} = [g, g_k], listed down to and including zero."""
    out = [span]
    cur = span
    while cur.dim > 0:
        nxt = _bracket_basis(span.field, span.basis, cur.basis)
        cur = LieSpan(nxt, n=span.n, field=span.field)
        out.append(cur)
    return out


def derived_series_length(span: LieSpan) -> int:
    """Length of the shortest normal chain with abelian quotients: the number
    of nonzero terms of the derived series g, [g, g], [[g,g],[g,g]], ..."""
    cur = span
    count = 0
    while cur.dim > 0:
        count += 1
        nxt = _bracket_basis(span.field, cur.basis, cur.basis)
        cur = LieSpan(nxt, n=span.n, field=span.field)
    return count


def nilpotency_class(span: LieSpan) -> int:
    return len(lower_central_series(span)) - 1


def full_unipotent_span(n: int, field: ScalarField) -> LieSpan:
    """The span of all strictly upper n x n matrices: the Lie algebra of the
    full unipotent group of that size."""
    if n < 1:
        raise InputError("matrix size must be at least 1")
    ring = PolyRing(field, 0)
    basis = [NilMatrix.from_entries(ring, n, {(i, j): 1})
             for i in range(n) for j in range(i + 1, n)]
    return LieSpan(basis, n=n, field=field, check=False)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class LieHom:
    """A Lie algebra homomorphism between spans, given by basis images.
    Construction verifies the images land in the target span and that
    brackets of basis pairs are preserved."""

    __slots__ = ("source", "target", "images", "complement", "section")

    def __init__(self, source, target, images, check=True, complement=None,
                 section=None):
        if not isinstance(source, LieSpan) or not isinstance(target, LieSpan):
            raise InputError("hom endpoints must be LieSpan values")
        images = tuple(images)
        if len(images) != source.dim:
            raise InputError("expected %d basis images, got %d" % (source.dim, len(images)))
        self.source = source
        self.target = target
        self.images = images
        self.complement = complement
        self.section = section      # chosen preimages of the target basis, if any
        if check:
            for img in images:
                try:
                    target.coordinates(img)
                except MembershipError:
                    raise InputError("a basis image lies outside the target span") from None
            for i in range(source.dim):
                for j in range(i + 1, source.dim):
                    lhs = self(source.basis[i].bracket(source.basis[j]))
                    rhs = images[i].bracket(images[j])
                    if lhs != rhs:
                        raise InputError("images do not preserve the bracket "
                                         "(basis pair %d, %d)" % (i, j))

    @classmethod
    def identity(cls, span):
        return cls(span, span, span.basis, check=False, section=span.basis)

    def compose(self, other: "LieHom") -> "LieHom":
        """self o other."""
        if other.target.n != self.source.n or other.target.field != self.source.field:
            raise InputError("homs are not composable")
        images = tuple(self(img) for img in other.images)
        return LieHom(other.source, self.target, images, check=False)

    def __call__(self, mat):
        return apply_hom(self, mat)

    def __repr__(self):
        return "LieHom(%r -> %r)" % (self.source, self.target)


def apply_hom(hom: LieHom, mat):
    """Apply a hom to an algebra element, or to a group element through
    log and exp.  Polynomial entries are carried along."""
    if isinstance(mat, UniMatrix):
        return exp_nilpotent(apply_hom(hom, log_unipotent(mat)))
    coords = hom.source.coordinates(mat)
    ring = mat.ring
    target_ring = ring if ring.field == hom.target.field else None
    if target_ring is None:
        raise RingMismatch("matrix field does not match the hom")
    acc = NilMatrix.zero(ring, hom.target.n)
    for c, img in zip(coords, hom.images):
        if c.is_zero:
            continue
        lifted = img if ring == img.ring else img.map_entries(
            lambda p: ring.constant(p.constant_value()), ring)
        acc = acc + lifted.scale(c)
    return acc


# ---------------------------------------------------------------------------
# quotients, re-embedded as strictly upper matrices
# ---------------------------------------------------------------------------

def _abstract_bracket(u, v, struct, m, field):
    out = [field.zero] * m
    for i in range(m):
        ui, vi = u[i], v[i]
        for j in range(i + 1, m):
            c = ui * v[j] - u[j] * vi
            if not c.is_zero:
                sij = struct[(i, j)]
                for k in range(m):
                    if not sij[k].is_zero:
                        out[k] = out[k] + c * sij[k]
    return tuple(out)


def _abstract_lcs(struct, m, field):
    """Lower central series of an abstract algebra given by structure
    constants; each level is returned as an echelon basis of coordinate
    vectors."""
    unit = []
    for i in range(m):
        v = [field.zero] * m
        v[i] = field.one
        unit.append(tuple(v))
    levels = [unit]
    cur = unit
    while cur:
        ech = _Echelon(field)
        nxt = []
        for a in unit:
            for b in cur:
                w = _abstract_bracket(a, b, struct, m, field)
                if ech.add(w):
                    nxt.append(w)
        if not nxt:
            break
        levels.append(nxt)
        cur = nxt
    return levels


def _pbw_monomials(weights, cls_bound):
    """All exponent tuples with weighted degree <= cls_bound, sorted by
    decreasing weighted degree (ties lexicographic)."""
    m = len(weights)
    out = []

    def rec(i, partial, deg):
        if i == m:
            out.append(tuple(partial))
            return
        a = 0
        while deg + a * weights[i] <= cls_bound:
            rec(i + 1, partial + [a], deg + a * weights[i])
            a += 1

    rec(0, [], 0)
    out.sort(key=lambda e: (-sum(a * w for a, w in zip(e, weights)), e))
    return out


class _PbwAlgebra:
    """Left multiplication on the enveloping algebra truncated at weighted
    degree > cls_bound.  Straightening moves generators into sorted order
    with e_x e_y = e_y e_x + [e_x, e_y]; since bracket terms never lower
    the weighted degree, the truncation is by a two-sided ideal."""

    __slots__ = ("field", "m", "weights", "cls_bound", "struct", "monomials",
                 "index", "_memo")

    def __init__(self, field, weights, cls_bound, struct):
        self.field = field
        self.m = len(weights)
        self.weights = tuple(weights)
        self.cls_bound = cls_bound
        self.struct = struct
        self.monomials = _pbw_monomials(self.weights, cls_bound)
        self.index = {mono: i for i, mono in enumerate(self.monomials)}
        self._memo = {}

    def _wdeg(self, word):
        return sum(self.weights[g] for g in word)

    def straighten(self, word):
        """Express a word in the generators as a combination of sorted
        monomials, working modulo weighted degree > cls_bound."""
        word = tuple(word)
        known = self._memo.get(word)
        if known is not None:
            return known
        if self._wdeg(word) > self.cls_bound:
            self._memo[word] = {}
            return {}
        for p in range(len(word) - 1):
            x, y = word[p], word[p + 1]
            if x > y:
                out = {}
                swapped = word[:p] + (y, x) + word[p + 2:]
                for mono, c in self.straighten(swapped).items():
                    out[mono] = out.get(mono, self.field.zero) + c
                bracket = self.struct[(y, x)]      # [e_y, e_x]; we need -that
                for k in range(self.m):
                    ck = bracket[k]
                    if not ck.is_zero:
                        sub = word[:p] + (k,) + word[p + 2:]
                        for mono, c in self.straighten(sub).items():
                            out[mono] = out.get(mono, self.field.zero) - ck * c
                out = {mo: c for mo, c in out.items() if not c.is_zero}
                self._memo[word] = out
                return out
        counts = [0] * self.m
        for g in word:
            counts[g] += 1
        out = {tuple(counts): self.field.one}
        self._memo[word] = out
        return out

    def left_mult_matrix(self, gen, ring):
        """Matrix of v -> e_gen v on the sorted monomial basis."""
        dim = len(self.monomials)
        entries = {}
        for col, mono in enumerate(self.monomials):
            word = (gen,)
            for g in range(self.m):
                word = word + (g,) * mono[g]
            for out_mono, c in self.straighten(word).items():
                row = self.index[out_mono]
                entries[(row, col)] = ring.constant(c)
        return NilMatrix.from_entries(ring, dim, entries)


def quotient_span(span: LieSpan, ideal: LieSpan):
    """Quotient of a span by an ideal, re-embedded as strictly upper
    matrices, together with the projection hom.

    Returns (quotient LieSpan, LieHom from span onto it).  The hom also
    records which span basis indices were chosen to complement the ideal
    (`complement`), which pins down compatible projections along towers.
    """
    field = span.field
    if ideal.n != span.n or ideal.field != field:
        raise RingMismatch("ideal lives in a different matrix space")
    for b in ideal.basis:
        try:
            span.coordinates(b)
        except MembershipError:
            raise InputError("ideal is not contained in the span") from None
    for a in span.basis:
        for b in ideal.basis:
            br = a.bracket(b)
            try:
                ideal.coordinates(br)
            except MembershipError:
                raise InputError("the given subspace is not an ideal") from None

    if ideal.dim == 0:
        hom = LieHom(span, span, span.basis, check=False,
                     complement=tuple(range(span.dim)), section=span.basis)
        return span, hom
    if ideal.dim == span.dim:
        target = LieSpan((), n=1, field=field)
        images = tuple(NilMatrix.zero(span.ring, 1) for _ in span.basis)
        hom = LieHom(span, target, images, check=False, complement=(), section=())
        return target, hom

    # pick span basis vectors completing the ideal to a basis of the span
    ech = _Echelon(field)
    for b in ideal.basis:
        ech.add(tuple(e.constant_value() for e in b.strict_upper()))
    complement = []
    for idx, b in enumerate(span.basis):
        if ech.add(tuple(e.constant_value() for e in b.strict_upper())):
            complement.append(idx)
    complement = tuple(complement)
    m = len(complement)
    mixed = [span.basis[i] for i in complement] + list(ideal.basis)
    mixed_cols = [tuple(e.constant_value() for e in b.strict_upper()) for b in mixed]
    mixed_solver = _LinSolver(field, mixed_cols, what="complement basis")

    def h_coords(mat):
        full = mixed_solver.solve(mat.strict_upper(), mat.ring.zero())
        return tuple(c.constant_value() if isinstance(c, SimplexPoly) else c
                     for c in full[:m])

    # structure constants of the quotient on the complement classes
    struct = {}
    for i in range(m):
        for j in range(i + 1, m):
            struct[(i, j)] = h_coords(mixed[i].bracket(mixed[j]))

    # weights from a lower-central-series adapted basis of the quotient
    levels = _abstract_lcs(struct, m, field)
    cls_bound = len(levels)
    adapted = []            # (vector over the complement classes, weight)
    ech2 = _Echelon(field)
    for k in range(cls_bound, 0, -1):
        for v in levels[k - 1]:
            if ech2.add(v):
                adapted.append((v, k))
    adapted_solver = _LinSolver(field, [v for v, _ in adapted], what="adapted basis")
    weights = [w for _, w in adapted]

    def to_adapted(vec):
        return tuple(adapted_solver.solve(list(vec), field.zero))

    astruct = {}
    for i in range(m):
        for j in range(i + 1, m):
            br = _abstract_bracket(adapted[i][0], adapted[j][0], struct, m, field)
            astruct[(i, j)] = to_adapted(br)

    algebra = _PbwAlgebra(field, weights, cls_bound, astruct)
    ring = span.ring
    rho = [algebra.left_mult_matrix(g, ring) for g in range(m)]
    target = LieSpan(rho)

    # project each span basis vector: complement coords, then adapted coords
    images = []
    for b in span.basis:
        e_coords = h_coords(b)
        f_coords = to_adapted(e_coords)
        img = NilMatrix.zero(ring, target.n)
        for c, r in zip(f_coords, rho):
            if not c.is_zero:
                img = img + r.scale(c)
        images.append(img)
    # a preimage of each target basis vector: the same combination of the
    # complement representatives that defines the adapted basis vector
    section = []
    for v, _ in adapted:
        x = NilMatrix.zero(ring, span.n)
        for c, rep in zip(v, mixed[:m]):
            if not c.is_zero:
                x = x + rep.scale(c)
        section.append(x)
    hom = LieHom(span, target, tuple(images), check=True, complement=complement,
                 section=tuple(section))
    return target, hom
