"""Sparse multivariate polynomials.

Terms are stored as ``{exponent tuple: coefficient}`` with zero coefficients
never stored. Monomials are ordered graded-lexicographically with respect to
the declared variable order (first variable largest); printing and leading
terms follow that order, which makes serialization deterministic.
"""

import math
import re
from fractions import Fraction

from relweil import kernels
from relweil.arith.rational import format_rational
from relweil.arith.ring import exquo as _exquo
from relweil.arith.unipoly import UniPoly
from relweil.errors import NotDivisible, ParseError


def _norm(c):
    return Fraction(c) if type(c) is int else c


def grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        n = len(self.vars)
        if len(set(self.vars)) != n:
            raise ValueError(f"repeated variable in {self.vars}")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = _norm(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # ----------------------------------------------------------- constructors
    @classmethod
    def const(cls, c, vars=()):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def gen(cls, name, vars=None, one=Fraction(1)):
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            vars = vars + (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {e: one})

    @classmethod
    def parse(cls, text, vars=None, strict=False):
        return _Parser(text, vars, strict).parse()

    # ------------------------------------------------------------- variables
    def with_vars(self, new_vars):
        """Re-express over ``new_vars`` (must contain every variable in use)."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(new_vars)}
        used = self.used_vars()
        missing = [v for v in used if v not in pos]
        if missing:
            raise ValueError(f"variables {missing} not in {new_vars}")
        idx = [pos.get(v) for v in self.vars]
        n = len(new_vars)
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] = k
            terms[tuple(ne)] = c
        return MultiPoly._raw(new_vars, terms)

    def used_vars(self):
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def prune(self):
        return self.with_vars(self.used_vars())

    def _unify(self, other):
        if self.vars == other.vars:
            return self, other
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(merged), other.with_vars(merged)

    def _lift(self, c):
        return MultiPoly._raw(self.vars, {(0,) * len(self.vars): _norm(c)} if c else {})

    # ------------------------------------------------------------ arithmetic
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            a, b = self._unify(other)
            return a.terms == b.terms
        if isinstance(other, UniPoly):
            return NotImplemented
        if not other:
            return not self.terms
        return self.is_constant() and self.constant_value() == other

    def __hash__(self):
        p = self.prune()
        return hash((p.vars, frozenset(p.terms.items())))

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = self._lift(other)
        a, b = self._unify(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                v = v + c
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        return MultiPoly._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = self._lift(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items() if c * other})
        a, b = self._unify(other)
        return MultiPoly._raw(a.vars, kernels.sparse_mul(a.terms, b.terms))

    def __rmul__(self, other):
        if not other:
            return MultiPoly._raw(self.vars, {})
        return MultiPoly._raw(self.vars, {e: other * c for e, c in self.terms.items() if other * c})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self._lift(Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            return self.exquo(c)
        return MultiPoly._raw(self.vars, {e: v / c for e, v in self.terms.items()})

    def exquo(self, other):
        """Exact division; raises :class:`NotDivisible` when there is a remainder."""
        if not isinstance(other, MultiPoly):
            return MultiPoly._raw(self.vars, {e: _exquo(c, other) for e, c in self.terms.items()})
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        a, b = self._unify(other)
        le, lc = b.leading_term()
        rem = dict(a.terms)
        quotient = {}
        other_terms = list(b.terms.items())
        while rem:
            e = max(rem, key=grlex_key)
            d = tuple(x - y for x, y in zip(e, le))
            if min(d, default=0) < 0:
                raise NotDivisible(f"({other}) does not divide ({self})")
            qc = _exquo(rem[e], lc)
            quotient[d] = qc
            for eo, co in other_terms:
                ee = tuple(x + y for x, y in zip(d, eo))
                v = rem.get(ee, 0) - qc * co
                if v:
                    rem[ee] = v
                else:
                    rem.pop(ee, None)
        return MultiPoly._raw(a.vars, quotient)

    def divides(self, other):
        """True when ``self`` divides ``other`` exactly."""
        try:
            other.exquo(self)
        except NotDivisible:
            return False
        return True

    # -------------------------------------------------------------- queries
    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficients(self):
        return list(self.terms.values())

    def map_coeffs(self, fn):
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    # -------------------------------------------------------- substitutions
    def as_univariate(self, var):
        """View as a :class:`UniPoly` in ``var`` with MultiPoly coefficients."""
        rest = tuple(v for v in self.vars if v != var)
        if var not in self.vars:
            return UniPoly((self,), var) if self else UniPoly((), var)
        i = self.vars.index(var)
        buckets = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        deg = max(buckets) if buckets else -1
        zero = MultiPoly._raw(rest, {})
        coeffs = [MultiPoly._raw(rest, buckets[k]) if k in buckets else zero for k in range(deg + 1)]
        return UniPoly(coeffs, var)

    @classmethod
    def from_univariate(cls, u, vars=None):
        """Inverse of :meth:`as_univariate`; ``vars`` fixes the output order."""
        x = cls.gen(u.var)
        acc = cls.const(0, (u.var,))
        for c in reversed(u.coeffs):
            acc = acc * x + c
        if vars is not None:
            acc = acc.with_vars(tuple(vars))
        return acc

    def to_unipoly(self, var=None):
        """Univariate polynomial with scalar coefficients (other variables must be absent)."""
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: uses {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "x")
        elif any(v != var for v in used):
            raise ValueError(f"not univariate in {var}: uses {used}")
        if var not in self.vars:
            return UniPoly((self.constant_value(),), var)
        i = self.vars.index(var)
        deg = self.degree(var)
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return UniPoly(coeffs, var)

    @classmethod
    def from_unipoly(cls, u, vars=None):
        vars = tuple(vars) if vars is not None else (u.var,)
        i = vars.index(u.var)
        n = len(vars)
        terms = {}
        for k, c in enumerate(u.coeffs):
            if c:
                e = [0] * n
                e[i] = k
                terms[tuple(e)] = c
        return cls._raw(vars, terms)

    def subs(self, mapping):
        """Substitute polynomials (or scalars) for variables.

        Output variables: the unsubstituted ones, then those introduced by the
        substituted values, in order of first appearance.
        """
        keep = tuple(v for v in self.vars if v not in mapping)
        out_vars = keep
        for v in self.vars:
            val = mapping.get(v)
            if isinstance(val, MultiPoly):
                out_vars += tuple(w for w in val.vars if w not in out_vars)
        sub_idx = [(i, mapping[v]) for i, v in enumerate(self.vars) if v in mapping]
        keep_idx = [i for i, v in enumerate(self.vars) if v not in mapping]
        cache = {}

        def pw(i, val, k):
            key = (i, k)
            if key not in cache:
                if k == 1:
                    cache[key] = val if isinstance(val, MultiPoly) else _norm(val)
                else:
                    half = pw(i, val, k // 2)
                    sq = half * half
                    cache[key] = sq * (val if isinstance(val, MultiPoly) else _norm(val)) if k % 2 else sq
            return cache[key]

        acc = MultiPoly._raw(out_vars, {})
        nk = len(out_vars)
        for e, c in self.terms.items():
            base = [0] * nk
            for j, i in enumerate(keep_idx):
                base[j] = e[i]
            term = MultiPoly._raw(out_vars, {tuple(base): c})
            for i, val in sub_idx:
                if e[i]:
                    term = term * pw(i, val, e[i])
            acc = acc + term
        return acc.with_vars(out_vars) if acc.vars != out_vars else acc

    def evaluate(self, point):
        """Evaluate at a full assignment ``{var: value}``."""
        total = 0
        powers = {}
        for e, c in self.terms.items():
            v = c
            for name, k in zip(self.vars, e):
                if k:
                    key = (name, k)
                    p = powers.get(key)
                    if p is None:
                        p = powers[key] = point[name] ** k
                    v = v * p
            total = total + v
        return total

    def diff(self, var):
        if var not in self.vars:
            return MultiPoly._raw(self.vars, {})
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return MultiPoly._raw(self.vars, terms)

    # --------------------------------------------------- rational normal form
    def content(self):
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        num, den = 0, 1
        for c in self.terms.values():
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def canonical(self):
        """Primitive integer form with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return MultiPoly._raw(self.vars, {e: v / c for e, v in self.terms.items()})

    # ----------------------------------------------------------------- text
    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            if isinstance(c, Fraction):
                neg = c < 0
                mag = format_rational(abs(c))
            else:
                neg = False
                s = str(c)
                mag = s if re.fullmatch(r"[\w/]+", s) else f"({s})"
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)


# --------------------------------------------------------------------- parser
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text, vars, strict):
        self.text = text
        self.vars = tuple(vars) if vars is not None else ()
        self.strict = strict
        self.tokens = []
        pos = 0
        text_end = len(text.rstrip())
        while pos < text_end:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", line=1, column=pos + 1)
            kind = "num" if m.group(1) else "name" if m.group(2) else "op"
            value = m.group(m.lastindex)
            self.tokens.append((kind, "^" if value == "**" else value, m.start(m.lastindex)))
            pos = m.end()
        self.i = 0
        self.seen = list(self.vars)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg, pos):
        raise ParseError(msg, line=1, column=pos + 1)

    def parse(self):
        if not self.tokens:
            self.fail("empty polynomial", 0)
        p = self.expr()
        kind, value, pos = self.peek()
        if kind is not None:
            self.fail(f"unexpected {value!r}", pos)
        return p.with_vars(tuple(self.seen))

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, _ = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    self.fail("division by a non-constant", pos)
                c = rhs.constant_value()
                if not c:
                    self.fail("division by zero", pos)
                acc = acc * (1 / Fraction(c))
        return acc

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if value == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer", pos)
            base = base ** int(value)
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return MultiPoly.const(int(value), ())
        if kind == "name":
            if value not in self.seen:
                if self.strict:
                    self.fail(f"unknown variable {value!r}", pos)
                self.seen.append(value)
            return MultiPoly.gen(value)
        if kind == "op" and value == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                self.fail("expected ')'", p2)
            return inner
        self.fail(f"unexpected {value!r}" if value else "unexpected end of input", pos)
