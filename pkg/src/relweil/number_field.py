"""Arithmetic in ``base[T]/(m)`` with a power basis.

A :class:`NumberField` is the case ``base = Q``, ``m`` monic squarefree of
degree at least 2. The same element class serves the quotient rings
``F0[T]/(q)`` used for dynamic splitting: when ``q`` is reducible an
inversion may hit a zero divisor, and :meth:`NFElement.inverse` then raises
:class:`~relweil.errors.ZeroDivisorEncountered` carrying the splitting.
"""

from dataclasses import dataclass
from fractions import Fraction

from relweil import kernels
from relweil.arith.algorithms import discriminant, poly_xgcd
from relweil.arith.multipoly import MultiPoly
from relweil.arith.rational import format_rational, is_rational_square
from relweil.arith.unipoly import UniPoly
from relweil.errors import (
    FieldMismatch,
    InseparableField,
    PreconditionError,
    UnsupportedDegree,
    VariableCollision,
    ZeroDivisorEncountered,
)


class QuotientRing:
    """``base[T]/(modulus)``; ``base`` is ``None`` for Q or another QuotientRing."""

    def __init__(self, modulus, base=None, name="a"):
        if not modulus or modulus.degree < 1:
            raise PreconditionError("modulus must have positive degree")
        if modulus.lc != 1:
            raise PreconditionError(f"modulus {modulus} is not monic")
        self.base = base
        self.modulus = modulus
        self.degree = modulus.degree
        self.name = name
        self._m = list(modulus.coeffs)
        self._zero = Fraction(0) if base is None else base.zero
        self._one = Fraction(1) if base is None else base.one

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.modulus.coeffs == other.modulus.coeffs
            and self.base == other.base
        )

    def __hash__(self):
        return hash((str(self.modulus), self.base))

    def __repr__(self):
        return f"{type(self).__name__}({self.modulus})"

    @property
    def zero(self):
        return NFElement(self, ())

    @property
    def one(self):
        return NFElement(self, (self._one,))

    @property
    def gen(self):
        if self.degree == 1:
            return NFElement(self, (-self._m[0],))
        return NFElement(self, (self._zero, self._one))

    def _base_coerce(self, c):
        if self.base is None:
            if isinstance(c, Fraction):
                return c
            if isinstance(c, int):
                return Fraction(c)
            raise FieldMismatch(f"{c!r} is not rational")
        return self.base.coerce(c)

    def coerce(self, x):
        if isinstance(x, NFElement):
            if x.ring is self or x.ring == self:
                return x
        if self.base is None:
            if isinstance(x, (int, Fraction)):
                return NFElement(self, (Fraction(x),))
            raise FieldMismatch(f"cannot coerce {x!r} into {self}")
        return NFElement(self, (self.base.coerce(x),))

    __call__ = coerce

    def element(self, coords):
        return NFElement(self, coords)

    def from_poly(self, u):
        """Image of a polynomial in the generator (coefficients in base)."""
        return NFElement(self, u.coeffs)

    def is_field_over_q(self):
        return self.base is None


class NumberField(QuotientRing):
    """``L = Q[t]/(m)`` with basis ``1, a, ..., a**(n-1)``."""

    def __init__(self, min_poly, name="a"):
        if any(not isinstance(c, Fraction) for c in min_poly.coeffs):
            raise PreconditionError("minimal polynomial must have rational coefficients")
        if min_poly.degree < 2:
            raise PreconditionError("number field degree must be at least 2")
        super().__init__(min_poly, None, name)
        if discriminant(min_poly) == 0:
            raise InseparableField(f"{min_poly} is not squarefree")

    @classmethod
    def quadratic(cls, d, name="a"):
        d = Fraction(d)
        if d == 0 or is_rational_square(d):
            raise PreconditionError(f"{d} is a rational square; Q(sqrt({d})) is not a quadratic field")
        return cls(UniPoly((-d, Fraction(0), Fraction(1)), "t"), name)


class NFElement:
    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        n = ring.degree
        c = [ring._base_coerce(x) for x in coords]
        if len(c) > n:
            c = kernels.dense_rem_monic(c, ring._m)
            c = [ring._base_coerce(x) for x in c]
        c.extend([ring._zero] * (n - len(c)))
        self.ring = ring
        self.coords = tuple(c)

    @classmethod
    def _raw(cls, ring, coords):
        e = object.__new__(cls)
        e.ring = ring
        e.coords = coords
        return e

    def _other(self, other):
        if isinstance(other, NFElement) and (other.ring is self.ring or other.ring == self.ring):
            return other
        try:
            return self.ring.coerce(other)
        except FieldMismatch:
            raise
        except (TypeError, AttributeError):
            raise FieldMismatch(f"cannot combine {self.ring} with {other!r}") from None

    def __add__(self, other):
        if isinstance(other, (MultiPoly, UniPoly)):
            return NotImplemented
        o = self._other(other)
        return NFElement._raw(self.ring, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement._raw(self.ring, tuple(-a for a in self.coords))

    def __sub__(self, other):
        if isinstance(other, (MultiPoly, UniPoly)):
            return NotImplemented
        o = self._other(other)
        return NFElement._raw(self.ring, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, (MultiPoly, UniPoly)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return NFElement._raw(self.ring, tuple(a * other for a in self.coords))
        o = self._other(other)
        ring = self.ring
        prod = kernels.dense_mul(self.coords, o.coords)
        if len(prod) > ring.degree:
            prod = kernels.dense_rem_monic(prod, ring._m)
        prod = list(prod)
        for i, x in enumerate(prod):
            if type(x) is int:
                prod[i] = ring._base_coerce(x)
        prod.extend([ring._zero] * (ring.degree - len(prod)))
        return NFElement._raw(ring, tuple(prod))

    __rmul__ = __mul__

    def rep(self, var="t"):
        return UniPoly(self.coords, var)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        ring = self.ring
        g, s, _ = poly_xgcd(self.rep(ring.modulus.var), ring.modulus)
        if g.degree > 0:
            raise ZeroDivisorEncountered(ring, g, ring.modulus.exquo(g).monic())
        return NFElement(ring, s.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (MultiPoly, UniPoly)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return NFElement._raw(self.ring, tuple(a / other for a in self.coords))
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.ring == other.ring and self.coords == other.coords
        if isinstance(other, (MultiPoly, UniPoly)):
            return NotImplemented
        try:
            o = self.ring.coerce(other)
        except (FieldMismatch, TypeError):
            return False
        return self.coords == o.coords

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash(self.coords)

    def is_base(self):
        """True when the element lies in the base ring (only the constant coordinate)."""
        return not any(self.coords[1:])

    def mult_matrix(self):
        """Matrix of multiplication by ``self``; column j holds ``self * a**j``."""
        cols = []
        x = self
        g = self.ring.gen
        for _ in range(self.ring.degree):
            cols.append(x.coords)
            x = x * g
        n = self.ring.degree
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def trace(self):
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def norm(self):
        return det(self.mult_matrix())

    def conjugate(self, which=1):
        return nf_conjugate(self, which)

    def __repr__(self):
        return f"NFElement({self.ring.name}: {list(self.coords)!r})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else (self.ring.name if i == 1 else f"{self.ring.name}^{i}")
            if isinstance(c, Fraction):
                mag = format_rational(abs(c))
                sign = "-" if c < 0 else "+"
            else:
                mag, sign = f"({c})", "+"
            body = mono if (mono and mag == "1") else (f"{mag}*{mono}" if mono else mag)
            terms.append((sign, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def det(matrix):
    """Determinant by Gaussian elimination over a field."""
    a = [list(row) for row in matrix]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                for k in range(col, n):
                    a[r][k] = a[r][k] - f * a[col][k]
    return result


# ------------------------------------------------------------------ operations
def nf_mul(a, b):
    if not isinstance(a, NFElement) or not isinstance(b, NFElement) or a.ring != b.ring:
        raise FieldMismatch("nf_mul needs two elements of the same field")
    return a * b


def nf_conjugate(a, which=1):
    """Galois conjugate; only the identity is available beyond degree 2."""
    if which == 0:
        return a
    if a.ring.degree != 2:
        raise UnsupportedDegree("conjugation implemented for quadratic fields only")
    if which != 1:
        raise UnsupportedDegree(f"quadratic field has two embeddings, not index {which}")
    c0, c1 = a.coords
    m1 = a.ring.modulus[1]
    # a -> -m1 - a
    return NFElement._raw(a.ring, (c0 - c1 * m1, -c1))


@dataclass(frozen=True)
class TraceForm:
    matrix: tuple
    determinant: Fraction


def power_sums(min_poly, count):
    """``p_k`` = sum of k-th powers of the roots, ``k = 0..count-1`` (Newton)."""
    n = min_poly.degree
    c = min_poly.coeffs  # monic: c[n] == 1
    p = [Fraction(n)]
    for k in range(1, count):
        s = sum((c[n - i] * p[k - i] for i in range(1, min(k, n + 1))), Fraction(0))
        if k <= n:
            s += k * c[n - k]
        p.append(-s)
    return p


def trace_form(field):
    n = field.degree
    p = power_sums(field.modulus, 2 * n - 1)
    matrix = tuple(tuple(p[i + j] for j in range(n)) for i in range(n))
    d = det(matrix)
    if d == 0:
        raise InseparableField(f"trace form of {field} is degenerate")
    return TraceForm(matrix, d)


# ------------------------------------------------------------ basis expansion
def default_expansion(variables, n, taken=()):
    """``x -> (x1, ..., xn)`` for each variable."""
    return {v: tuple(f"{v}{i}" for i in range(1, n + 1)) for v in variables}


def _check_expansion(variables, var_map, n, params=()):
    seen = set()
    for v in variables:
        if v in params:
            continue
        names = var_map.get(v)
        if names is None:
            raise PreconditionError(f"variable {v!r} has no expansion")
        if len(names) != n:
            raise PreconditionError(f"variable {v!r} needs {n} coordinates, got {len(names)}")
        for w in names:
            if w in seen or w in variables or w in params:
                raise VariableCollision(f"coordinate variable {w!r} is not fresh")
            seen.add(w)


def linear_forms(field, var_map):
    """``x -> x1 + x2*a + ... + xn*a**(n-1)`` as MultiPolys over the field."""
    out = {}
    g = field.one
    powers = []
    for _ in range(field.degree):
        powers.append(g)
        g = g * field.gen
    for v, names in var_map.items():
        out[v] = MultiPoly(names, {tuple(1 if j == i else 0 for j in range(len(names))): powers[i]
                                   for i in range(len(names))})
    return out


def expanded_vars(variables, var_map, params=()):
    out = []
    for v in variables:
        if v in params:
            out.append(v)
        else:
            out.extend(var_map[v])
    return tuple(out)


def substitute_linear_forms(p, field, var_map, params=()):
    """``p`` with every L-variable replaced by its linear form (coefficients in L)."""
    forms = linear_forms(field, {v: var_map[v] for v in p.vars if v not in params})
    q = p.subs(forms)
    return q.with_vars(expanded_vars(p.vars, var_map, params))


def split_coordinates(q, field):
    """Power-basis coordinates ``(g_1, ..., g_n)`` of a MultiPoly over L."""
    n = field.degree
    parts = [dict() for _ in range(n)]
    for e, c in q.terms.items():
        if isinstance(c, NFElement):
            if c.ring != field:
                raise FieldMismatch(f"coefficient from {c.ring}, expected {field}")
            coords = c.coords
        else:
            coords = (c,)
        for i, x in enumerate(coords):
            if x:
                parts[i][e] = x
    return [MultiPoly(q.vars, t) for t in parts]


def combine_coordinates(parts, field):
    """Inverse of :func:`split_coordinates`: ``sum g_i * a**(i-1)``."""
    acc = None
    g = field.one
    for part in parts:
        term = part * g
        acc = term if acc is None else acc + term
        g = g * field.gen
    return acc


def basis_expand(p, var_map, field, params=()):
    """Expand ``p`` over the power basis after ``x -> sum x_i a**(i-1)``.

    ``params`` lists variables that are already rational and pass through.
    Returns ``[g_1, ..., g_n]`` over Q with ``sum g_i a**(i-1)`` equal to the
    substituted polynomial.
    """
    _check_expansion(p.vars, var_map, field.degree, params)
    return split_coordinates(substitute_linear_forms(p, field, var_map, params), field)


def embed_poly(p, field, generator):
    """Read a Q-polynomial that mentions ``generator`` as a polynomial over L."""
    if generator not in p.vars:
        return p.map_coeffs(field.coerce)
    u = p.as_univariate(generator)
    acc = None
    g = field.one
    for c in u.coeffs:
        term = c * g
        acc = term if acc is None else acc + term
        g = g * field.gen
    rest = tuple(v for v in p.vars if v != generator)
    if acc is None:
        return MultiPoly(rest)
    return acc.map_coeffs(field.coerce).with_vars(rest) if acc.vars != rest else acc.map_coeffs(field.coerce)


def lift_poly(p, field, generator):
    """Inverse of :func:`embed_poly`: a Q-polynomial in the variables plus ``generator``."""
    parts = split_coordinates(p, field)
    gen = MultiPoly.gen(generator, p.vars + (generator,))
    acc = MultiPoly(p.vars + (generator,))
    for i, part in enumerate(parts):
        acc = acc + part.with_vars(p.vars + (generator,)) * gen ** i
    return acc
