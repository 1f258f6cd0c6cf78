"""Exact coefficient arithmetic for simplex polynomials.

Scalars are rationals or elements of a simple extension Q[x]/(m(x)),
stored as coordinate vectors in the power basis.  Polynomials live on the
geometric q-simplex t_0 + ... + t_q = 1 (optionally crossed with an affine
parameter space) and are kept in a canonical normal form that eliminates
the last coordinate t_q, so two polynomials agree as functions iff their
term maps are identical.  Every operation is a pure function on immutable
values; all arithmetic is exact.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InputError, RingMismatch


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise InputError("expected an integer or Fraction, got %r" % type(x).__name__)


# ---------------------------------------------------------------------------
# dense univariate helpers (coefficient lists, low degree) for the minimal
# polynomial: used only to reduce, invert and root-check extension elements
# ---------------------------------------------------------------------------

def _trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _upoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _upoly_divmod(a, b):
    a = list(a)
    lead = b[-1]
    out = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        if c:
            out[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(out), _trim(a)


def _upoly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else Fraction(0))
           - (b[i] if i < len(b) else Fraction(0)) for i in range(n)]
    return _trim(out)


def _upoly_inverse_mod(a, m):
    """Inverse of a modulo m in Q[x]; requires gcd(a, m) = 1."""
    # extended Euclid on coefficient lists
    r0, r1 = list(m), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is a zero divisor modulo the defining polynomial")
    inv_lead = 1 / r0[0]
    return [c * inv_lead for c in s0]


def _divisors(n):
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return out


# ---------------------------------------------------------------------------
# scalar fields and their elements
# ---------------------------------------------------------------------------

class ScalarField:
    """The coefficient field: Q itself, or a simple extension Q[x]/(m(x)).

    ``minpoly`` is the monic defining polynomial as a coefficient tuple
    (constant term first).  For degrees 2 and 3 a rational-root test
    certifies irreducibility; higher degrees are accepted as declared.
    """

    __slots__ = ("var", "minpoly", "degree", "_xpow", "_hash")

    def __init__(self, var=None, minpoly=None):
        if var is None and minpoly is None:
            self.var = None
            self.minpoly = None
            self.degree = 1
            self._xpow = None
        else:
            if not isinstance(var, str) or not var:
                raise InputError("extension variable must be a nonempty string")
            coeffs = tuple(_fraction(c) for c in minpoly)
            if len(coeffs) < 3:
                raise InputError("extension degree must be at least 2")
            if coeffs[-1] != 1:
                raise InputError("defining polynomial must be monic")
            self.var = var
            self.minpoly = coeffs
            self.degree = len(coeffs) - 1
            if self.degree <= 3 and self._has_rational_root():
                raise InputError("defining polynomial of degree <= 3 has a rational root")
            self._xpow = self._power_table()
        self._hash = hash((self.var, self.minpoly))

    @classmethod
    def rationals(cls):
        return _RATIONALS

    @classmethod
    def extension(cls, var, minpoly):
        return cls(var, minpoly)

    @property
    def is_rationals(self):
        return self.minpoly is None

    def _has_rational_root(self):
        # clear denominators, then test all p/q with p | c_0 and q | c_d
        den = 1
        for c in self.minpoly:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in self.minpoly]
        if ints[0] == 0:
            return True
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    acc = Fraction(0)
                    for c in reversed(ints):
                        acc = acc * cand + c
                    if acc == 0:
                        return True
        return False

    def _power_table(self):
        """Coordinates of x^k for k = 0 .. 2d-2, each reduced mod m(x)."""
        d = self.degree
        table = []
        for k in range(d):
            row = [Fraction(0)] * d
            row[k] = Fraction(1)
            table.append(tuple(row))
        for k in range(d, 2 * d - 1):
            prev = table[k - 1]
            shifted = [Fraction(0)] + list(prev[: d - 1])
            top = prev[d - 1]
            if top:
                for i in range(d):
                    shifted[i] -= top * self.minpoly[i]
            table.append(tuple(shifted))
        return table

    # -- element constructors ------------------------------------------------

    def value(self, x) -> "ScalarValue":
        if isinstance(x, ScalarValue):
            if x.field != self:
                raise RingMismatch("value belongs to a different field")
            return x
        if isinstance(x, (int, Fraction)):
            coords = (Fraction(x),) + (Fraction(0),) * (self.degree - 1)
            return ScalarValue(self, coords)
        if isinstance(x, (list, tuple)):
            if len(x) != self.degree:
                raise InputError("expected %d coordinates, got %d" % (self.degree, len(x)))
            return ScalarValue(self, tuple(_fraction(c) for c in x))
        raise InputError("cannot build a field element from %r" % type(x).__name__)

    @property
    def zero(self):
        return self.value(0)

    @property
    def one(self):
        return self.value(1)

    @property
    def gen(self):
        """The class of x, for extensions."""
        if self.is_rationals:
            raise InputError("the rational field has no extension generator")
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return ScalarValue(self, tuple(coords))

    def __eq__(self, other):
        return (isinstance(other, ScalarField)
                and self.var == other.var and self.minpoly == other.minpoly)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.is_rationals:
            return "ScalarField(Q)"
        return "ScalarField(Q[%s]/(%s))" % (self.var, _upoly_str(self.minpoly, self.var))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _upoly_str(coeffs, var):
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append("%s*%s" % (c, var) if c != 1 else var)
        else:
            parts.append("%s*%s^%d" % (c, var, k) if c != 1 else "%s^%d" % (var, k))
    return " + ".join(parts) if parts else "0"


_RATIONALS = ScalarField()
QQ = _RATIONALS


class ScalarValue:
    """An element of a ScalarField: d rational coordinates in the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, ScalarValue):
            if other.field != self.field:
                raise RingMismatch("field mismatch in scalar arithmetic")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.value(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarValue(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ScalarValue(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __neg__(self):
        return ScalarValue(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        a, b = self.coords, o.coords
        if f.degree == 1:
            return ScalarValue(f, (a[0] * b[0],))
        d = f.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:d]
        xpow = f._xpow
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                row = xpow[k]
                for i in range(d):
                    if row[i]:
                        out[i] += ck * row[i]
        return ScalarValue(f, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("division by zero field element")
        f = self.field
        if f.degree == 1:
            return ScalarValue(f, (1 / self.coords[0],))
        inv = _upoly_inverse_mod(list(self.coords), list(f.minpoly))
        inv = inv + [Fraction(0)] * (f.degree - len(inv))
        return ScalarValue(f, tuple(inv[: f.degree]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise InputError("scalar powers must be integers")
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        out = self.field.one
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    @property
    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise InputError("value has nonzero coordinates outside Q")
        return self.coords[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.value(other)
        if not isinstance(other, ScalarValue):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.coords[0])
        return _upoly_str(self.coords, self.field.var)


# ---------------------------------------------------------------------------
# order-preserving maps between the ordered sets [p] = {0, ..., p}
# ---------------------------------------------------------------------------

class SimplexMap:
    """An order-preserving map [p] -> [q], the morphisms of the simplex
    category.  Cofaces skip one value, codegeneracies take one value twice;
    every order-preserving map is a composition of these."""

    __slots__ = ("p", "q", "values")

    def __init__(self, q, values):
        values = tuple(int(v) for v in values)
        if not values:
            raise InputError("a simplex map needs at least one value")
        if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
            raise InputError("simplex map values must be weakly increasing")
        if values[0] < 0 or values[-1] > q:
            raise InputError("simplex map values must lie in [0, %d]" % q)
        self.q = q
        self.p = len(values) - 1
        self.values = values

    @classmethod
    def identity(cls, q):
        return cls(q, range(q + 1))

    @classmethod
    def coface(cls, q, i):
        """The injective map [q-1] -> [q] that misses the value i."""
        if not 0 <= i <= q or q < 1:
            raise InputError("coface index out of range")
        return cls(q, [v for v in range(q + 1) if v != i])

    @classmethod
    def codegeneracy(cls, q, i):
        """The surjective map [q+1] -> [q] that takes the value i twice."""
        if not 0 <= i <= q:
            raise InputError("codegeneracy index out of range")
        return cls(q, list(range(i + 1)) + list(range(i, q + 1)))

    def __call__(self, i):
        return self.values[i]

    def compose(self, other: "SimplexMap") -> "SimplexMap":
        """self o other, where other: [r] -> [p] and self: [p] -> [q]."""
        if other.q != self.p:
            raise InputError("simplex maps are not composable")
        return SimplexMap(self.q, [self.values[v] for v in other.values])

    def preimage(self, j):
        return tuple(i for i, v in enumerate(self.values) if v == j)

    def __eq__(self, other):
        return (isinstance(other, SimplexMap)
                and self.q == other.q and self.values == other.values)

    def __hash__(self):
        return hash((self.q, self.values))

    def __repr__(self):
        return "SimplexMap([%d]->[%d], %s)" % (self.p, self.q, list(self.values))

    def describe(self):
        """Short name: d^i / s^i for (co)faces, else the value list."""
        if self.p == self.q - 1 and len(set(self.values)) == self.p + 1:
            missing = set(range(self.q + 1)) - set(self.values)
            if len(missing) == 1:
                return "d^%d:[%d]->[%d]" % (missing.pop(), self.p, self.q)
        if self.p == self.q + 1:
            for i in range(len(self.values) - 1):
                if self.values[i] == self.values[i + 1]:
                    return "s^%d:[%d]->[%d]" % (self.values[i], self.p, self.q)
        return "%s:[%d]->[%d]" % (list(self.values), self.p, self.q)


# ---------------------------------------------------------------------------
# the polynomial ring of the q-simplex (times an affine parameter space)
# ---------------------------------------------------------------------------

class PolyRing:
    """Coordinate ring of the q-simplex times affine parameters.

    The honest variables are t_0, ..., t_{q-1} (the last coordinate is
    eliminated through t_q = 1 - t_0 - ... - t_{q-1}) followed by the
    named parameters.  Exponent vectors index these variables in order.
    """

    __slots__ = ("field", "q", "params", "nvars", "_zero", "_one", "_hash")

    def __init__(self, field, q, params=()):
        if not isinstance(field, ScalarField):
            raise InputError("ring needs a ScalarField")
        if not isinstance(q, int) or q < 0:
            raise InputError("simplex dimension must be a nonnegative integer")
        params = tuple(params)
        if len(set(params)) != len(params):
            raise InputError("duplicate parameter names")
        self.field = field
        self.q = q
        self.params = params
        self.nvars = q + len(params)
        self._zero = None
        self._one = None
        self._hash = hash((field, q, params))

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.q == other.q and self.params == other.params)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        extra = " params=%s" % (self.params,) if self.params else ""
        return "PolyRing(q=%d%s over %r)" % (self.q, extra, self.field)

    def zero(self) -> "SimplexPoly":
        if self._zero is None:
            self._zero = SimplexPoly(self, {})
        return self._zero

    def one(self) -> "SimplexPoly":
        if self._one is None:
            self._one = self.constant(1)
        return self._one

    def constant(self, x) -> "SimplexPoly":
        v = self.field.value(x)
        if v.is_zero:
            return self.zero()
        return SimplexPoly(self, {(0,) * self.nvars: v})

    def coordinate(self, j) -> "SimplexPoly":
        """The simplex coordinate t_j in canonical form (t_q eliminated)."""
        if not isinstance(j, int) or not 0 <= j <= self.q:
            raise InputError("coordinate index out of range 0..%d" % self.q)
        if self.q == 0:
            return self.one()
        one = self.field.one
        if j < self.q:
            exp = [0] * self.nvars
            exp[j] = 1
            return SimplexPoly(self, {tuple(exp): one})
        terms = {(0,) * self.nvars: one}
        for i in range(self.q):
            exp = [0] * self.nvars
            exp[i] = 1
            terms[tuple(exp)] = -one
        return SimplexPoly(self, terms)

    def parameter(self, name) -> "SimplexPoly":
        try:
            idx = self.params.index(name)
        except ValueError:
            raise InputError("unknown parameter %r" % (name,)) from None
        exp = [0] * self.nvars
        exp[self.q + idx] = 1
        return SimplexPoly(self, {tuple(exp): self.field.one})

    def poly(self, terms) -> "SimplexPoly":
        """Build from a raw {exponent-tuple: coefficient} map (can contain zeros)."""
        clean = {}
        for exp, coef in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise InputError("bad exponent vector %r" % (exp,))
            v = self.field.value(coef)
            if not v.is_zero:
                if exp in clean:
                    v = clean[exp] + v
                    if v.is_zero:
                        del clean[exp]
                        continue
                clean[exp] = v
        return SimplexPoly(self, clean)


class SimplexPoly:
    """A polynomial on the q-simplex (times parameters), in canonical form.

    ``terms`` maps exponent tuples over (t_0..t_{q-1}, params) to nonzero
    ScalarValue coefficients; the zero polynomial is the empty map.  Over a
    fixed ring, equality of term maps is equality of functions.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SimplexPoly):
            if other.ring != self.ring:
                raise RingMismatch("polynomials over different rings")
            return other
        if isinstance(other, (int, Fraction, ScalarValue)):
            return self.ring.constant(other)
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms:
            return o
        if not o.terms:
            return self
        out = dict(self.terms)
        for exp, coef in o.terms.items():
            cur = out.get(exp)
            if cur is None:
                out[exp] = coef
            else:
                s = cur + coef
                if s.is_zero:
                    del out[exp]
                else:
                    out[exp] = s
        return SimplexPoly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__add__(o.__neg__())

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __neg__(self):
        return SimplexPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScalarValue)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return self.ring.zero()
        a, b = self.terms, o.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                cur = get(exp)
                prod = ca * cb
                if cur is None:
                    out[exp] = prod
                else:
                    s = cur + prod
                    if s.is_zero:
                        del out[exp]
                    else:
                        out[exp] = s
        return SimplexPoly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, s):
        v = self.ring.field.value(s)
        if v.is_zero:
            return self.ring.zero()
        return SimplexPoly(self.ring, {e: c * v for e, c in self.terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError("polynomial powers must be nonnegative integers")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- inspection ----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return not self.terms or (len(self.terms) == 1
                                  and next(iter(self.terms)) == (0,) * self.ring.nvars)

    def constant_value(self) -> ScalarValue:
        if not self.terms:
            return self.ring.field.zero
        if not self.is_constant:
            raise InputError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def map_coefficients(self, fn) -> "SimplexPoly":
        out = {}
        for exp, coef in self.terms.items():
            v = fn(coef)
            if not v.is_zero:
                out[exp] = v
        return SimplexPoly(self.ring, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ScalarValue)):
            other = self.ring.constant(other)
        if not isinstance(other, SimplexPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ["t%d" % i for i in range(self.ring.q)] + list(self.ring.params)
        parts = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e)):
            coef = self.terms[exp]
            factors = ["%s^%d" % (n, e) if e > 1 else n
                       for n, e in zip(names, exp) if e]
            cs = repr(coef)
            if ("+" in cs[1:]) or ("-" in cs[1:]):
                cs = "(%s)" % cs
            parts.append("*".join([cs] + factors) if factors else cs)
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# the published operations
# ---------------------------------------------------------------------------

def make_simplex_coordinate(q, j, field=QQ, params=()) -> SimplexPoly:
    """t_j on the q-simplex; for j = q this is 1 - t_0 - ... - t_{q-1}."""
    return PolyRing(field, q, params).coordinate(j)


def poly_arith(a: SimplexPoly, b: SimplexPoly, op: str) -> SimplexPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError("unknown operation %r" % (op,))


def _evaluate(p: SimplexPoly, images, target_ring: PolyRing):
    """Evaluate p at a full list of variable images (ring elements)."""
    total = target_ring.zero()
    powcache = {}
    for exp, coef in p.terms.items():
        term = target_ring.constant(coef)
        for v, e in enumerate(exp):
            if e:
                key = (v, e)
                pw = powcache.get(key)
                if pw is None:
                    pw = images[v] ** e
                    powcache[key] = pw
                term = term * pw
        total = total + term
    return total


def substitute_simplex_map(p: SimplexPoly, alpha: SimplexMap) -> SimplexPoly:
    """Pull back along the affine map of simplices extending alpha: [p]->[q].

    Each t_j with j in [q] becomes the sum of t_i over the alpha-preimage
    of j (an empty sum is 0); the result is canonical on the p-simplex.
    """
    ring = p.ring
    if alpha.q != ring.q:
        raise InputError("map target [%d] does not match the polynomial's simplex [%d]"
                         % (alpha.q, ring.q))
    target = PolyRing(ring.field, alpha.p, ring.params)
    images = []
    for j in range(ring.q):
        img = target.zero()
        for i in alpha.preimage(j):
            img = img + target.coordinate(i)
        images.append(img)
    images.extend(target.parameter(name) for name in ring.params)
    return _evaluate(p, images, target)


def permute_coordinates(p: SimplexPoly, perm) -> SimplexPoly:
    """Substitute t_j -> t_{perm[j]} for a permutation of {0, ..., q}."""
    ring = p.ring
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(ring.q + 1)):
        raise InputError("not a permutation of 0..%d" % ring.q)
    images = [ring.coordinate(perm[j]) for j in range(ring.q)]
    images.extend(ring.parameter(name) for name in ring.params)
    return _evaluate(p, images, ring)


def extend_to_simplex(p: SimplexPoly, q: int) -> SimplexPoly:
    """View a polynomial constant in t (a q = 0 ring) on the q-simplex."""
    ring = p.ring
    if ring.q != 0:
        raise InputError("only t-constant polynomials can be extended")
    target = PolyRing(ring.field, q, ring.params)
    return SimplexPoly(target, {(0,) * q + exp: coef for exp, coef in p.terms.items()})


def eval_at_weights(p: SimplexPoly, weights, param_values=None) -> ScalarValue:
    """Exact evaluation at a weight sequence (q+1 scalars summing to 1)."""
    ring = p.ring
    field = ring.field
    ws = [field.value(w) for w in weights]
    if len(ws) != ring.q + 1:
        raise InputError("expected %d weights, got %d" % (ring.q + 1, len(ws)))
    total_w = field.zero
    for w in ws:
        total_w = total_w + w
    if total_w != field.one:
        raise InputError("weights must sum to 1 exactly")
    values = list(ws[: ring.q])
    pv = param_values or {}
    for name in ring.params:
        if name not in pv:
            raise InputError("missing value for parameter %r" % (name,))
        values.append(field.value(pv[name]))
    acc = field.zero
    for exp, coef in p.terms.items():
        v = coef
        for x, e in zip(values, exp):
            if e:
                v = v * x ** e
        acc = acc + v
    return acc


# ---------------------------------------------------------------------------
# Galois actions on extension fields
# ---------------------------------------------------------------------------

class FieldAutomorphism:
    """A field automorphism of a simple extension, fixing Q, given by the
    image of the generator (which must again be a root of m(x))."""

    __slots__ = ("field", "image", "_powers")

    def __init__(self, field: ScalarField, image):
        if field.is_rationals:
            raise InputError("automorphisms are only defined for extensions")
        self.field = field
        self.image = field.value(image)
        powers = [field.one]
        for _ in range(field.degree - 1):
            powers.append(powers[-1] * self.image)
        self._powers = tuple(powers)
        # the generator must go to a root of the defining polynomial
        acc = field.zero
        for k, c in enumerate(field.minpoly):
            if c:
                acc = acc + (self._powers[k] if k < field.degree
                             else self.image ** k) * c
        if not acc.is_zero:
            raise InputError("generator image is not a root of the defining polynomial")
        self._spot_check()

    def _spot_check(self):
        # ring-automorphism property on a few pseudo-random pairs
        rng = random.Random(20240 + self.field.degree)
        for _ in range(4):
            a = self.field.value([Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                                  for _ in range(self.field.degree)])
            b = self.field.value([Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                                  for _ in range(self.field.degree)])
            if self.apply_value(a * b) != self.apply_value(a) * self.apply_value(b):
                raise InputError("generator image does not define a ring map")
            if self.apply_value(a + b) != self.apply_value(a) + self.apply_value(b):
                raise InputError("generator image does not define a ring map")

    def apply_value(self, v: ScalarValue) -> ScalarValue:
        if v.field != self.field:
            raise RingMismatch("value is not over this automorphism's field")
        acc = self.field.zero
        for c, pw in zip(v.coords, self._powers):
            if c:
                acc = acc + pw * c
        return acc

    def __call__(self, v):
        if isinstance(v, ScalarValue):
            return self.apply_value(v)
        if isinstance(v, SimplexPoly):
            if v.ring.field != self.field:
                raise RingMismatch("polynomial is not over this automorphism's field")
            return v.map_coefficients(self.apply_value)
        raise InputError("cannot apply an automorphism to %r" % type(v).__name__)

    def __repr__(self):
        return "FieldAutomorphism(%s -> %r)" % (self.field.var, self.image)


class GaloisAction:
    """A chosen set of generators of a Galois group acting on an extension."""

    __slots__ = ("field", "generators")

    def __init__(self, field: ScalarField, generator_images):
        self.field = field
        self.generators = tuple(FieldAutomorphism(field, im) for im in generator_images)
        if not self.generators:
            raise InputError("a Galois action needs at least one generator")

    def __repr__(self):
        return "GaloisAction(%r, %d generators)" % (self.field, len(self.generators))


def apply_galois(g: FieldAutomorphism, v):
    """Apply an automorphism coefficientwise to a scalar or polynomial."""
    return g(v)
