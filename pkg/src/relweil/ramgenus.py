"""Fiber types of maps P^1 -> P^1, fibered-product genera and degree-3 configurations.

Branch values are never factored. A set of conjugate branch values is kept
as a squarefree polynomial ``q(T)`` over the base field ``F0`` and the fiber
of ``num(x) - T*den(x)`` is studied over ``F0[T]/(q)`` as if that ring were a
field. When an inversion meets a zero divisor, ``q`` splits and each factor is
treated separately (dynamic evaluation). Every descriptor of degree ``r``
stands for ``r`` geometric branch points with the same fiber type.
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from relweil.arith.algorithms import discriminant, yun_squarefree
from relweil.arith.unipoly import UniPoly
from relweil.errors import (
    FormulaMismatch,
    InconsistentProfile,
    NonzeroResidue,
    NotSquarefree,
    PreconditionError,
    ZeroDivisorEncountered,
)
from relweil.number_field import NFElement, NumberField, QuotientRing, nf_conjugate
from relweil.arith.rational import is_rational_square


# ------------------------------------------------------------------ types
@dataclass(frozen=True, order=True)
class FiberType:
    parts: tuple

    def __init__(self, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts or min(parts) < 1:
            raise PreconditionError(f"invalid fiber type {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def degree(self):
        return sum(self.parts)

    def is_trivial(self):
        return all(p == 1 for p in self.parts)

    @classmethod
    def trivial(cls, degree):
        return cls((1,) * degree)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class BranchPoint:
    """Conjugate branch values: roots of ``min_poly`` (``None`` means infinity)."""

    min_poly: UniPoly = None

    @property
    def residue_degree(self):
        return 1 if self.min_poly is None else self.min_poly.degree

    @property
    def is_infinity(self):
        return self.min_poly is None

    @property
    def label(self):
        return "oo" if self.min_poly is None else str(self.min_poly)

    def __str__(self):
        return self.label


INFINITY = BranchPoint(None)


@dataclass(frozen=True)
class ProfilePoint:
    """Fiber types of all maps over one branch descriptor."""

    types: tuple
    residue_degree: int = 1
    label: str = ""


@dataclass(frozen=True)
class RamificationProfile:
    degrees: tuple
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        object.__setattr__(self, "points", tuple(self.points))
        for pt in self.points:
            if len(pt.types) != len(self.degrees):
                raise InconsistentProfile(f"point {pt.label!r} has {len(pt.types)} types for {len(self.degrees)} maps")
            for t, d in zip(pt.types, self.degrees):
                if t.degree != d:
                    raise InconsistentProfile(f"type {t} at {pt.label!r} does not sum to degree {d}")
            if pt.residue_degree < 1:
                raise InconsistentProfile("residue degree must be positive")

    @property
    def r(self):
        return sum(pt.residue_degree for pt in self.points)

    @classmethod
    def from_types(cls, degrees, rows):
        """``rows`` holds, per branch point, one fiber type (or list of parts) per map."""
        pts = []
        for i, row in enumerate(rows):
            types = tuple(t if isinstance(t, FiberType) else FiberType(t) for t in row)
            pts.append(ProfilePoint(types, 1, f"p{i + 1}"))
        return cls(tuple(degrees), tuple(pts))


@dataclass
class GenusReport:
    arithmetic_genus: int
    formula_a_value: Fraction
    formula_b_value: Fraction
    per_point_contributions: list = dc_field(default_factory=list)
    possibly_disconnected: bool = False


# ----------------------------------------------------------- fiber types
def _normalize_map(f):
    num, den = f if isinstance(f, tuple) else (f, UniPoly((1,), f.var))
    if not num and not den:
        raise PreconditionError("0/0 is not a map")
    if not den:
        raise PreconditionError("zero denominator")
    if max(num.degree, den.degree) < 1:
        raise PreconditionError("constant map")
    return num, den


def map_degree(f):
    num, den = _normalize_map(f)
    return max(num.degree, den.degree)


def _base_ring_of(num, den):
    for c in num.coeffs + den.coeffs:
        if isinstance(c, NFElement):
            return c.ring
    return None


def _fiber_in_ring(num, den, ring):
    """Fiber type of ``num - T*den`` over ``ring = F0[T]/(q)`` (may raise on zero divisors)."""
    T = ring.gen
    n = max(num.degree, den.degree)
    coeffs = [ring.coerce(num[i]) - T * ring.coerce(den[i]) for i in range(n + 1)]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    deficiency = n - (len(coeffs) - 1)
    parts = [deficiency] if deficiency else []
    P = UniPoly(coeffs, "x")
    if P.degree > 0:
        for part in yun_squarefree(P).parts:
            parts.extend([part.multiplicity] * part.degree)
    return FiberType(parts)


def _ring_for(q, base):
    return QuotientRing(q.monic(), base, "T")


def _split_types(maps, q, base):
    """``[(q_i, [type per map])]`` with ``q = prod q_i`` after dynamic splitting."""
    work = [q.monic()]
    out = []
    while work:
        cur = work.pop()
        ring = _ring_for(cur, base)
        try:
            types = [_fiber_in_ring(num, den, ring) for num, den in maps]
        except ZeroDivisorEncountered as exc:
            if exc.ring != ring:
                raise
            work.append(exc.cofactor.monic())
            work.append(exc.factor.monic())
            continue
        out.append((cur, types))
    out.sort(key=lambda item: (item[0].degree, str(item[0])))
    return out


def _infinity_types(maps):
    base = None
    types = []
    for num, den in maps:
        # fiber over T = oo of num/den is the fiber over 0 of den/num
        q = UniPoly.gen("T", Fraction(1))
        ring = QuotientRing(q, _base_ring_of(num, den) or base, "T")
        types.append(_fiber_in_ring(den, num, ring))
    return types


def fiber_type_at(f, p):
    """Fiber types over the branch descriptor ``p``.

    Returns ``[(BranchPoint, FiberType)]``: one entry unless dynamic splitting
    separated the roots of ``p.min_poly`` into classes with different types.
    """
    num, den = _normalize_map(f)
    if p.is_infinity:
        return [(INFINITY, _infinity_types([(num, den)])[0])]
    base = _base_ring_of(num, den)
    return [(BranchPoint(q), types[0]) for q, types in _split_types([(num, den)], p.min_poly, base)]


def fiber_type_over(f, value):
    """Fiber type over a single value of the base field (``None`` for infinity)."""
    if value is None:
        return fiber_type_at(f, INFINITY)[0][1]
    one = value.ring.one if isinstance(value, NFElement) else Fraction(1)
    q = UniPoly((-value, one), "T")
    return fiber_type_at(f, BranchPoint(q))[0][1]


def _as_T_poly(c, base):
    one = base.one if base is not None else Fraction(1)
    return UniPoly((c * one,), "T") if c else UniPoly((), "T")


def branch_candidates(f):
    """Squarefree ``q(T)`` vanishing at every finite branch value of ``f``."""
    num, den = _normalize_map(f)
    base = _base_ring_of(num, den)
    one = base.one if base is not None else Fraction(1)
    n = max(num.degree, den.degree)
    T = UniPoly((0 * one, one), "T")
    coeffs = [_as_T_poly(num[i], base) - T * den[i] for i in range(n + 1)]
    P = UniPoly(coeffs, "x")
    cand = []
    if P.degree >= 2:
        disc = discriminant(P)
        if isinstance(disc, UniPoly) and disc.degree > 0:
            cand.append(disc)
    lead = P.lc
    if isinstance(lead, UniPoly) and lead.degree > 0:
        cand.append(lead)
    if num.degree == den.degree:
        cand.append(UniPoly((-num.lc / den.lc, one), "T"))
    return cand


def _squarefree_lcm(polys):
    acc = None
    for p in polys:
        acc = p if acc is None else acc * p
    if acc is None:
        return None
    return yun_squarefree(acc).squarefree_part()


def profile_points(maps):
    """``[(BranchPoint, [type per map])]`` over every point where some map ramifies."""
    maps = [_normalize_map(f) for f in maps]
    base = None
    for num, den in maps:
        base = base or _base_ring_of(num, den)
    cands = []
    for m in maps:
        cands.extend(branch_candidates(m))
    out = []
    q = _squarefree_lcm(cands)
    if q is not None and q.degree > 0:
        for piece, types in _split_types(maps, q, base):
            if any(not t.is_trivial() for t in types):
                out.append((BranchPoint(piece), types))
    inf = _infinity_types(maps)
    if any(not t.is_trivial() for t in inf):
        out.append((INFINITY, inf))
    return out


def branch_locus(f):
    """Branch descriptors of a single map (finite ones first, then infinity)."""
    return [bp for bp, _ in profile_points([f])]


def branch_fibers(f):
    """``[(BranchPoint, FiberType)]`` for a single map."""
    return [(bp, types[0]) for bp, types in profile_points([f])]


def ramification_profile(maps):
    """Profile of the fibered product of ``maps`` (all from P^1 to the same P^1)."""
    pts = profile_points(maps)
    degrees = tuple(map_degree(f) for f in maps)
    return RamificationProfile(
        degrees,
        tuple(ProfilePoint(tuple(types), bp.residue_degree, bp.label) for bp, types in pts),
    )


def ramification_total(f):
    """Sum over branch points of residue degree times Hurwitz contribution."""
    return sum(bp.residue_degree * hurwitz_contribution(t) for bp, t in branch_fibers(f))


def conjugate_map(f, which=1):
    """Apply the Galois conjugation of a quadratic base field to the coefficients."""
    num, den = _normalize_map(f)

    def conj(c):
        return nf_conjugate(c, which) if isinstance(c, NFElement) else c

    return num.map_coeffs(conj), den.map_coeffs(conj)


# ----------------------------------------------------- local combinatorics
def _lcm(values):
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def local_component_count(r):
    """``(prod(r) / R, R)`` with ``R = lcm(r)``."""
    r = [int(x) for x in r]
    if not r or min(r) < 1:
        raise PreconditionError("ramification indices must be positive")
    R = _lcm(r)
    return math.prod(r) // R, R


def combine_types(types):
    """Fiber type of the normalized fibered product over a common point."""
    if not types:
        raise PreconditionError("combine_types needs at least one type")
    parts = []
    for combo in itertools.product(*(t.parts for t in types)):
        count, R = local_component_count(combo)
        parts.extend([R] * count)
    return FiberType(parts)


def hurwitz_contribution(t):
    return sum(p - 1 for p in t.parts)


# ---------------------------------------------------------------- genus
def fiber_product_genus(profile, g_S=0):
    """Arithmetic genus of the normalized fibered product, by two formulas.

    ``a``: ``1 + (g_S - 1)*prod(d) + 1/2 * sum r_1...r_n (1 - 1/R)``;
    ``b``: ``1 + 1/2*(r + 2*g_S - 2)*prod(d) - 1/2 * sum r_1...r_n / R``, the
    second sum running over all points of the fibered product above branch
    points. Sums are weighted by residue degree.
    """
    if g_S < 0:
        raise PreconditionError("base genus must be nonnegative")
    deg = math.prod(profile.degrees)
    half = Fraction(1, 2)
    sum_a = Fraction(0)
    sum_b = 0
    rows = []
    for pt in profile.points:
        local_a = Fraction(0)
        local_pts = 0
        for combo in itertools.product(*(t.parts for t in pt.types)):
            count, R = local_component_count(combo)
            local_a += math.prod(combo) * (1 - Fraction(1, R))
            local_pts += count
        sum_a += pt.residue_degree * local_a
        sum_b += pt.residue_degree * local_pts
        combined = combine_types(list(pt.types))
        rows.append({
            "point": pt.label,
            "residue_degree": pt.residue_degree,
            "types": [str(t) for t in pt.types],
            "combined": str(combined),
            "contribution": hurwitz_contribution(combined),
            "points_above": local_pts,
        })
    a = 1 + (g_S - 1) * deg + half * sum_a
    b = 1 + half * (profile.r + 2 * g_S - 2) * deg - half * sum_b
    if a != b:
        raise FormulaMismatch(f"genus formulas disagree: {a} != {b}")
    if a.denominator != 1:
        raise InconsistentProfile(f"profile gives non-integral genus {a}")
    g = int(a)
    return GenusReport(g, a, b, rows, possibly_disconnected=g < 0)


def hyperelliptic_genus(rhs):
    """Genus of ``y^2 = rhs(x)`` for squarefree ``rhs`` of degree at least 1."""
    if rhs.degree < 1:
        raise PreconditionError("right-hand side must be nonconstant")
    if rhs.degree >= 2 and discriminant(rhs) == 0:
        raise NotSquarefree(f"{rhs} has a repeated root")
    return (rhs.degree - 1) // 2


# ----------------------------------------------------------- degree three
DEG3_TYPES = (FiberType((1, 1, 1)), FiberType((2, 1)), FiberType((3,)))


@dataclass(frozen=True)
class Table1Row:
    pair: tuple
    combined: FiberType
    contributions: tuple
    combined_contribution: int
    symmetrized: tuple
    symmetrized_combined: int


def table1():
    """Fiber types and Hurwitz contributions for pairs of degree-3 maps.

    Asymmetric pairs are counted together with their mirror image, as the
    Galois involution exchanges the two maps.
    """
    rows = []
    trivial = DEG3_TYPES[0]
    for a, b in itertools.combinations_with_replacement(DEG3_TYPES, 2):
        if a == trivial and b != trivial:
            a, b = b, a
        combined = combine_types([a, b])
        ca, cb = hurwitz_contribution(a), hurwitz_contribution(b)
        cc = hurwitz_contribution(combined)
        if a == b:
            sym, symc = (ca, cb), cc
        else:
            sym, symc = (ca + cb, ca + cb), 2 * cc
        rows.append(Table1Row((a, b), combined, (ca, cb), cc, sym, symc))
    return rows


def _deg3_totals(d=3):
    per_map = 2 * d - 2
    return per_map, 2 * d * d - 2


def enumerate_deg3_configs(require_symmetric=True):
    """Multisets of (F, conj F) fiber-type pairs with Hurwitz totals 4, 4 and 16.

    The totals come from Riemann-Hurwitz for degree-3 maps P^1 -> P^1 and for
    their degree-9 fibered product (assumed of genus 0). With
    ``require_symmetric`` the multiset must be invariant under swapping the
    pair, as conjugation exchanges the two maps.
    """
    per_map, combined_total = _deg3_totals()
    pairs = [(a, b) for a in DEG3_TYPES for b in DEG3_TYPES if not (a.is_trivial() and b.is_trivial())]
    weights = [
        (hurwitz_contribution(a), hurwitz_contribution(b), hurwitz_contribution(combine_types([a, b])))
        for a, b in pairs
    ]
    found = []

    def rec(start, chosen, ta, tb, tc):
        if ta == per_map and tb == per_map and tc == combined_total:
            found.append(list(chosen))
            return
        for i in range(start, len(pairs)):
            wa, wb, wc = weights[i]
            if ta + wa > per_map or tb + wb > per_map or tc + wc > combined_total:
                continue
            chosen.append(pairs[i])
            rec(i, chosen, ta + wa, tb + wb, tc + wc)
            chosen.pop()

    rec(0, [], 0, 0, 0)
    out = []
    for config in found:
        if require_symmetric:
            c = Counter(config)
            if any(c[(b, a)] != n for (a, b), n in c.items()):
                continue
        out.append(tuple(config))
    return out


# -------------------------------------------------- degree-two parametrization
@dataclass
class ParametrizationVerdict:
    numerator: UniPoly
    denominator: UniPoly
    value_numerator: UniPoly
    value_denominator: UniPoly
    residue: UniPoly


def parametrization(a, b, d):
    """``x(t) = (d*b*t^2 + 2*a*t + b)(sqrt(d)*t + 1) / (t*(d*t^2 + 3))`` over Q(sqrt(d))."""
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    L = NumberField.quadratic(d, "w")
    w = L.gen
    first = UniPoly((b * L.one, 2 * a * L.one, d * b * L.one), "t")
    second = UniPoly((L.one, w), "t")
    den = UniPoly((0 * L.one, 3 * L.one, 0 * L.one, d * L.one), "t")
    return L, first * second, den


def degree2_parametrization_check(a, b, d):
    """Check that ``p(x(t))`` is rational for ``p(x) = x^2 (x - alpha)``, ``alpha = a + b*sqrt(d)``.

    ``p(N/D) = N^2 (N - alpha*D) / D^3`` with ``D`` rational, so the residue is
    the sqrt(d)-coordinate of ``N^2 (N - alpha*D)``; it must vanish identically.
    """
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    if b == 0:
        raise PreconditionError("alpha must not be rational (b = 0)")
    if d == 0 or is_rational_square(d):
        raise PreconditionError(f"d = {d} must be a nonzero non-square")
    L, N, D = parametrization(a, b, d)
    alpha = a + b * L.gen
    value = N * N * (N - D * alpha)
    residue = UniPoly([c.coords[1] for c in value.coeffs], "t")
    if residue:
        raise NonzeroResidue(residue)
    rational_value = UniPoly([c.coords[0] for c in value.coeffs], "t")
    D_q = UniPoly([c.coords[0] for c in D.coeffs], "t")
    return ParametrizationVerdict(N, D, rational_value, D_q ** 3, residue)


def reciprocal_substitution(num, den):
    """``(num, den)`` of ``num(1/t) / den(1/t)`` cleared of negative powers."""
    dn, dd = num.degree, den.degree
    top = max(dn, dd)
    zero = num.coeffs[0] * 0 if num.coeffs else Fraction(0)
    rn = UniPoly([zero] * (top - dn) + list(reversed(num.coeffs)), num.var)
    rd = UniPoly([zero] * (top - dd) + list(reversed(den.coeffs)), den.var)
    return rn, rd


def same_rational_function(n1, d1, n2, d2):
    return n1 * d2 == n2 * d1
