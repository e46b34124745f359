"""Weil restrictions of affine curves and the elimination pipelines built on them.

An L-point ``P`` of a curve ``C`` is encoded by the rational coordinates of
its affine coordinates in the power basis of ``L``. Expanding the equations of
``C`` gives the restriction ``R(C)``; requiring that a morphism ``h`` sends
``P`` to a rational point adds the *rationality equations*. The resulting
system describes the relative restriction ``Res_h(C)`` over Q.

For a coordinate ``N/D`` of ``h`` the denominator is cleared with the
adjugate ``D*`` of multiplication by ``D`` (for quadratic fields this is the
Galois conjugate of ``D``), so that ``h = N*D* / Norm(D)`` with a rational
denominator. The rationality equations are then the coordinates 2..n of
``N*D*`` and ``Norm(D) != 0`` is kept as an inequation.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from relweil.arith.algorithms import discriminant, yun_squarefree
from relweil.arith.multipoly import MultiPoly
from relweil.arith.rational import is_rational_square
from relweil.arith.unipoly import UniPoly
from relweil.errors import (
    DegenerateInstance,
    NotDivisible,
    NotEliminable,
    PreconditionError,
    SingularInstance,
    VariableCollision,
    ZeroDenominator,
)
from relweil.number_field import (
    NFElement,
    NumberField,
    basis_expand,
    default_expansion,
    embed_poly,
    expanded_vars,
)


# ------------------------------------------------------------------ data
@dataclass(frozen=True)
class CurveOverL:
    """Affine curve over ``field``; ``parameters`` are rational symbols left free."""

    field: NumberField
    variables: tuple
    equations: tuple = ()
    parameters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        eqs = []
        allowed = set(self.variables) | set(self.parameters)
        for eq in self.equations:
            if not eq:
                raise PreconditionError("curve equations must be nonzero")
            extra = set(eq.used_vars()) - allowed
            if extra:
                raise PreconditionError(f"equation uses undeclared symbols {sorted(extra)}")
            eqs.append(eq)
        object.__setattr__(self, "equations", tuple(eqs))

    @classmethod
    def parse(cls, field, variables, equations, generator="a", parameters=()):
        """Read equations written with ``generator`` standing for the field generator."""
        return cls(field, variables, tuple(parse_over(field, e, generator) for e in equations), parameters)


@dataclass(frozen=True)
class MorphismData:
    """Affine coordinates of ``h`` as ``(numerator, denominator)`` pairs over L."""

    coordinates: tuple

    def __post_init__(self):
        pairs = []
        for num, den in self.coordinates:
            if not den:
                raise ZeroDenominator("morphism coordinate has a zero denominator")
            pairs.append((num, den))
        object.__setattr__(self, "coordinates", tuple(pairs))

    @classmethod
    def parse(cls, field, coordinates, generator="a"):
        """``coordinates`` holds strings ``"num"`` or pairs ``("num", "den")``."""
        pairs = []
        for item in coordinates:
            num, den = (item, "1") if isinstance(item, str) else item
            pairs.append((parse_over(field, num, generator), parse_over(field, den, generator)))
        return cls(tuple(pairs))

    @classmethod
    def polynomial(cls, *polys):
        return cls(tuple((p, MultiPoly.const(1, p.vars)) for p in polys))


@dataclass
class RestrictionResult:
    field: NumberField
    variable_expansion: dict
    restriction_equations: list
    rationality_equations: list = dc_field(default_factory=list)
    denominator_nonvanishing: list = dc_field(default_factory=list)
    variables: tuple = ()

    def all_equations(self):
        return list(self.restriction_equations) + list(self.rationality_equations)


@dataclass
class PlaneModel:
    """``equation = 0`` in ``variables``; ``rhs`` is set for models ``y^2 = rhs(x)``."""

    variables: tuple
    equation: MultiPoly
    derivation_log: list = dc_field(default_factory=list)
    rhs: UniPoly = None
    invariants: dict = dc_field(default_factory=dict)

    def __str__(self):
        if self.rhs is not None:
            return f"{self.variables[1]}^2 = {self.rhs}"
        return f"{self.equation} = 0"


def parse_over(field, text, generator="a"):
    """Parse a polynomial over L; ``generator`` names the power-basis generator."""
    p = MultiPoly.parse(text)
    return embed_poly(p, field, generator)


def canonical(p):
    return p.canonical() if p else p


def _log(log, step, detail, result=None):
    entry = {"step": step, "detail": detail}
    if result is not None:
        entry["result"] = result if isinstance(result, str) else str(result)
    log.append(entry)


# --------------------------------------------------------- restriction
def _expansion_for(c):
    taken = set(c.variables) | set(c.parameters)
    var_map = default_expansion(c.variables, c.field.degree)
    for names in var_map.values():
        clash = taken.intersection(names)
        if clash:
            raise VariableCollision(f"expanded names {sorted(clash)} clash with curve symbols")
    return var_map


def weil_restrict(c, var_map=None):
    """The n rational coordinate equations of every equation of ``c``."""
    var_map = var_map or _expansion_for(c)
    out_vars = expanded_vars(c.variables, var_map) + c.parameters
    eqs = []
    for eq in c.equations:
        eq = eq.with_vars(c.variables + tuple(v for v in eq.vars if v not in c.variables))
        for g in basis_expand(eq, var_map, c.field, c.parameters):
            eqs.append(canonical(_onto(g, out_vars)))
    return RestrictionResult(c.field, dict(var_map), eqs, variables=out_vars)


def _onto(p, out_vars):
    extra = tuple(v for v in p.used_vars() if v not in out_vars)
    return p.prune().with_vars(tuple(out_vars) + extra)


def _expand_function(p, c, var_map, out_vars):
    """Coordinates of a function over L in terms of the expanded variables."""
    p = p.with_vars(c.variables + tuple(v for v in p.vars if v not in c.variables))
    return [_onto(g, out_vars) for g in basis_expand(p, var_map, c.field, c.parameters)]


def _times_gen(coords, field):
    """Coordinates of ``alpha * v`` for a coordinate vector ``v`` of polynomials."""
    m = field.modulus.coeffs
    last = coords[-1]
    out = [coords[0] * 0] + list(coords[:-1])
    if last:
        out = [out[i] - last * m[i] for i in range(len(out))]
    return out


def coordinate_matrix(coords, field):
    """Multiplication matrix (columns ``v * alpha**j``) of an element with polynomial coordinates."""
    cols = []
    v = list(coords)
    for _ in range(field.degree):
        cols.append(v)
        v = _times_gen(v, field)
    n = field.degree
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def poly_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * poly_det(minor)
        term = term if j % 2 == 0 else -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0] * 0


def adjugate_column(m):
    """First column of ``adj(m)``: ``m @ col = det(m) * e_1``."""
    n = len(m)
    if n == 1:
        return [m[0][0] * 0 + 1]
    col = []
    for i in range(n):
        minor = [row[:i] + row[i + 1:] for row in m[1:]]
        c = poly_det(minor)
        col.append(c if i % 2 == 0 else -c)
    return col


def _apply(m, v):
    n = len(m)
    out = []
    for i in range(n):
        acc = m[i][0] * v[0]
        for j in range(1, n):
            acc = acc + m[i][j] * v[j]
        out.append(acc)
    return out


def clear_denominator(num_coords, den_coords, field):
    """``(coords of N*D*, Norm(D), D* coords)`` for ``h = N/D``.

    When ``D`` is already rational the cofactor is 1 and the norm is ``D``.
    """
    zero = den_coords[0] * 0
    if not any(den_coords):
        raise ZeroDenominator("denominator vanishes identically after expansion")
    if not any(den_coords[1:]):
        one = zero + 1
        return list(num_coords), den_coords[0], [one] + [zero] * (len(den_coords) - 1)
    md = coordinate_matrix(den_coords, field)
    dstar = adjugate_column(md)
    norm = _apply(md, dstar)
    if any(norm[1:]):  # defensive: M_D * adj column must be (det, 0, ..., 0)
        raise ArithmeticError("adjugate identity failed")
    return _apply(coordinate_matrix(num_coords, field), dstar), norm[0], dstar


def relative_restrict(c, h, var_map=None):
    """Equations over Q for the L-points of ``c`` whose image under ``h`` is rational."""
    var_map = var_map or _expansion_for(c)
    res = weil_restrict(c, var_map)
    out_vars = res.variables
    rat, ineq = [], []
    for num, den in h.coordinates:
        nc = _expand_function(num, c, var_map, out_vars)
        dc = _expand_function(den, c, var_map, out_vars)
        cleared, norm, _ = clear_denominator(nc, dc, c.field)
        if not norm:
            raise ZeroDenominator("norm of the denominator vanishes identically")
        for g in cleared[1:]:
            g = canonical(g)
            if g and g not in rat:
                rat.append(g)
        if not norm.is_constant():
            norm = canonical(norm)
            if norm not in ineq:
                ineq.append(norm)
    res.rationality_equations = rat
    res.denominator_nonvanishing = ineq
    return res


def restriction_point(x, var_map, variables):
    """Assignment of expanded variables for an L-point given as ``{var: NFElement}``."""
    point = {}
    for v in variables:
        coords = x[v].coords if isinstance(x[v], NFElement) else (Fraction(x[v]),) + (Fraction(0),) * (len(var_map[v]) - 1)
        for name, value in zip(var_map[v], coords):
            point[name] = value
    return point


# -------------------------------------------------------- elimination
def substitute_relation(eqs, relation, var, clearing_factor=None):
    """Eliminate ``var`` with a relation ``c1*var + c0 = 0`` (``c1`` free of ``var``).

    Each equation ``e`` of degree ``k`` in ``var`` becomes
    ``clearing_factor * sum_j e_j (-c0)**j c1**(k-j) / c1**k``; the division must
    be exact, otherwise :class:`NotEliminable` is raised. Without a clearing
    factor, ``c1**k`` is used.
    """
    u = relation.as_univariate(var)
    if u.degree != 1:
        raise NotEliminable(f"relation {relation} is not linear in {var}")
    c0, c1 = u.coeffs
    out = []
    for e in eqs:
        ue = e.as_univariate(var)
        k = ue.degree
        if k <= 0:
            out.append(e.prune() if k == 0 else e)
            continue
        acc = None
        neg = -c0
        for j, ej in enumerate(ue.coeffs):
            if not ej:
                continue
            term = ej * neg ** j * c1 ** (k - j)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = MultiPoly(ue.coeffs[0].vars)
        if clearing_factor is not None:
            acc = acc * clearing_factor
            try:
                acc = acc.exquo(c1 ** k)
            except NotDivisible:
                raise NotEliminable(
                    f"clearing factor {clearing_factor} does not clear ({c1})^{k}"
                ) from None
        if var in acc.used_vars():
            raise NotEliminable(f"{var} still occurs after elimination")
        out.append(acc.prune())
    return out


def discard_redundant(eqs, others=()):
    """Drop equations exactly divisible by another equation of the pool.

    Returns ``(kept, dropped)`` where ``dropped`` pairs each removed equation with
    its divisor.
    """
    pool = list(eqs) + [o for o in others if o not in eqs]
    kept, dropped = [], []
    for i, e in enumerate(eqs):
        divisor = None
        for j, f in enumerate(pool):
            if j == i or f.is_constant():
                continue
            if f.degree() >= e.degree() and canonical(f) == canonical(e):
                continue
            if f.degree() <= e.degree() and f.divides(e):
                divisor = f
                break
        if divisor is None:
            kept.append(e)
        else:
            dropped.append((e, divisor))
    return kept, dropped


def substitute_rational(eq, var, num, den):
    """``eq`` with ``var = num/den``, cleared of the denominator.

    The equation is multiplied by ``den**k`` (``k`` = degree in ``var``) and
    then divided by ``den`` as often as possible.
    """
    u = eq.as_univariate(var)
    k = u.degree
    if not isinstance(num, MultiPoly):
        num = MultiPoly.const(num)
    if not isinstance(den, MultiPoly):
        den = MultiPoly.const(den)
    acc = None
    for j, cj in enumerate(u.coeffs):
        if not cj:
            continue
        term = cj * num ** j * den ** (k - j)
        acc = term if acc is None else acc + term
    if den.is_constant():
        return acc.prune()
    while True:
        try:
            acc = acc.exquo(den)
        except NotDivisible:
            break
    return acc.prune()


def hyperelliptic_rhs(eq, x, y):
    """``rhs`` with ``eq = c*(y^2 - rhs(x))`` for a rational constant ``c``."""
    u = eq.as_univariate(y)
    if u.degree != 2 or u[1] or not u[2].is_constant():
        raise PreconditionError(f"{eq} is not of the form c*(y^2 - r({x}))")
    lead = u[2].constant_value()
    rhs = -u[0] / lead
    extra = [v for v in rhs.used_vars() if v != x]
    if extra:
        return None
    return rhs.to_unipoly(x)


# -------------------------------------------------- symbolic quadratic
def quadratic_expand(p, var_map, root, d, params=()):
    """Coordinates ``(g1, g2)`` of ``p`` in ``Q(sqrt(d))`` with ``d`` a symbol.

    ``p`` is a rational polynomial in which the symbol ``root`` stands for
    ``sqrt(d)``; every variable in ``var_map`` is replaced by ``v1 + v2*root``
    and ``root**2`` is reduced to ``d``.
    """
    forms = {}
    for v, (v1, v2) in var_map.items():
        forms[v] = MultiPoly.gen(v1, (v1, v2, root)) + MultiPoly.gen(v2, (v1, v2, root)) * MultiPoly.gen(root, (v1, v2, root))
    q = p.subs(forms)
    u = q.as_univariate(root)
    dv = MultiPoly.gen(d, (d,))
    parts = [MultiPoly(()), MultiPoly(())]
    for k, c in enumerate(u.coeffs):
        if c:
            parts[k % 2] = parts[k % 2] + c * dv ** (k // 2)
    return parts


# -------------------------------------------------------- example D
def _sym(v, name):
    """A rational value, or a symbol when ``v`` is a string."""
    if isinstance(v, str):
        return MultiPoly.gen(v)
    return Fraction(v)


def _example_D_system(a, b, d, log):
    """``r1, r2`` and the rationality equations for ``y^2 = g(x^2 + sqrt(d))``."""
    A, B = _sym(a, "a"), _sym(b, "b")
    params = tuple(v for v in (a, b) if isinstance(v, str))
    if isinstance(d, str):
        s = MultiPoly.gen("s")
        x, y = MultiPoly.gen("x"), MultiPoly.gen("y")
        u = x ** 2 + s
        curve = y ** 2 - (u ** 3 + A * u + B)
        var_map = {"x": ("x1", "x2"), "y": ("y1", "y2")}
        r1, r2 = quadratic_expand(curve, var_map, "s", d)
        h1 = quadratic_expand(x ** 2 + s, {"x": ("x1", "x2")}, "s", d)
        h2 = quadratic_expand(y, {"y": ("y1", "y2")}, "s", d)
        rat = [canonical(h1[1]), canonical(h2[1])]
        restr = [canonical(r1), canonical(r2)]
        _log(log, "restrict", f"expand over Q(sqrt({d})) with symbolic {d}", "; ".join(map(str, restr)))
    else:
        d = Fraction(d)
        if d == 0 or is_rational_square(d):
            raise PreconditionError(f"d = {d} must be a non-square")
        L = NumberField.quadratic(d, "w")
        w = L.gen
        x = MultiPoly.gen("x", ("x", "y"))
        y = MultiPoly.gen("y", ("x", "y"))
        u = x ** 2 + w
        curve = y ** 2 - (u ** 3 + u * A + B)
        c = CurveOverL(L, ("x", "y"), (curve,), params)
        h = MorphismData.polynomial(x ** 2 + w, y)
        res = relative_restrict(c, h)
        restr, rat = res.restriction_equations, res.rationality_equations
        _log(log, "restrict", f"relative restriction over Q(sqrt({d}))",
             "; ".join(map(str, restr + rat)))
    return restr, rat


def derive_example_D(a, b, d):
    """Plane model ``y^2 = x^12 + ...`` of the restriction of ``y^2 = g(x^2 + sqrt(d))``.

    ``g(x) = x^3 + a*x + b``. Each of ``a, b, d`` is a rational or a symbol name
    (string); with symbols the squarefree check is skipped and logged.
    """
    log = []
    restr, rat = _example_D_system(a, b, d, log)
    y2 = MultiPoly.gen("y2")
    rel = next((r for r in rat if r == y2 or r == -y2), None)
    x_rel = next((r for r in rat if r != y2 and r != -y2), None)
    if rel is None or x_rel is None:
        raise PreconditionError("unexpected rationality equations")
    eqs = substitute_relation(restr, y2, "y2")
    _log(log, "substitute", "y2 = 0", "; ".join(map(str, eqs)))
    eqs = [e for e in eqs if e]
    kept, dropped = discard_redundant(eqs, [x_rel])
    for e, f in dropped:
        _log(log, "discard", f"equation divisible by {canonical(f)}", str(canonical(e)))
    if len(kept) != 1:
        raise PreconditionError(f"expected one remaining equation, found {len(kept)}")
    x1 = MultiPoly.gen("x1")
    factor = 2 ** 12 * x1 ** 6
    (eq,) = substitute_relation(kept, x_rel, "x2", factor)
    _log(log, "eliminate", f"x2 via {x_rel} = 0 after multiplying by 2^12*x1^6", eq)
    eq = substitute_rational(eq, "y1", MultiPoly.gen("y"), 64 * x1 ** 3)
    _log(log, "substitute", "y1 = y/(2^6*x1^3)", eq)
    eq = substitute_rational(eq, "x1", MultiPoly.gen("x"), 2)
    eq = canonical(eq)
    eq = eq.with_vars(("x", "y") + tuple(v for v in eq.used_vars() if v not in ("x", "y")))
    _log(log, "substitute", "x1 = x/2", eq)
    rhs = hyperelliptic_rhs(eq, "x", "y")
    model = PlaneModel(("x", "y"), eq, log, rhs)
    if rhs is not None:
        if discriminant(rhs) == 0:
            parts = yun_squarefree(rhs).as_tuples()
            raise SingularInstance(
                f"y^2 = {rhs} is singular: repeated factors "
                + ", ".join(f"({f})^{m}" for m, f, _ in parts if m > 1)
            )
        _log(log, "check", "right-hand side squarefree", f"degree {rhs.degree}")
    else:
        _log(log, "check", "squarefree check skipped for symbolic parameters")
    return model


def quotient_even(model, var="x"):
    """Image of ``y^2 = r(x^2)`` under ``(x, y) -> (x^2, y)``."""
    if model.rhs is None:
        eq = model.equation
        u = eq.as_univariate(var)
        if any(c for k, c in enumerate(u.coeffs) if k % 2):
            raise PreconditionError("equation is not even in " + var)
        acc = None
        xv = MultiPoly.gen(var)
        for k, c in enumerate(u.coeffs):
            if c:
                t = c * xv ** (k // 2)
                acc = t if acc is None else acc + t
        log = list(model.derivation_log)
        _log(log, "quotient", f"({var}, y) -> ({var}^2, y)", acc)
        return PlaneModel(model.variables, canonical(acc), log)
    r = model.rhs
    if any(c for k, c in enumerate(r.coeffs) if k % 2):
        raise PreconditionError(f"{r} is not a polynomial in {r.var}^2")
    rq = UniPoly(r.coeffs[::2], r.var)
    y = model.variables[1]
    eq = canonical(MultiPoly.gen(y, (r.var, y)) ** 2 - MultiPoly.from_unipoly(rq, (r.var, y)))
    log = list(model.derivation_log)
    _log(log, "quotient", f"({r.var}, {y}) -> ({r.var}^2, {y})", eq)
    return PlaneModel(model.variables, eq, log, rq)


# ------------------------------------------------------------ ECC curve
def derive_ecc_curve(a0, a1, a2, b1, b2, d):
    """Model ``(s*t)^2 = t^3*(a2*x(t)^2 + a1*x(t) + a0)``, ``x(t) = b2^2/(4t) + d*t - b1``.

    The right-hand side is returned as the quintic ``rhs`` in ``t``; the
    equation is ``16*s^2*t^2 - 16*rhs(t)`` made primitive.
    """
    a0, a1, a2, b1, b2, d = (Fraction(v) for v in (a0, a1, a2, b1, b2, d))
    if b2 == 0:
        raise PreconditionError("b2 must be nonzero")
    if d == 0 or is_rational_square(d):
        raise PreconditionError(f"d = {d} must be a nonzero non-square")
    log = []
    t = UniPoly.gen("t")
    # t*x(t) = b2^2/4 + d*t^2 - b1*t
    tx = UniPoly((b2 * b2 / 4, -b1, d), "t")
    rhs = a2 * t * tx * tx + a1 * t * t * tx + a0 * t ** 3
    _log(log, "clear", "t^3*(a2*x^2 + a1*x + a0) with x = b2^2/(4t) + d*t - b1", rhs)
    if rhs.degree != 5:
        raise DegenerateInstance(f"right-hand side has degree {rhs.degree}, not 5")
    disc = discriminant(rhs)
    factors = ecc_discriminant_factors(a0, a1, a2, b1, b2, d)
    _log(log, "discriminant", "discriminant of the quintic", disc)
    _log(log, "factors", "a2, b2, d, 4*a0*a2 - a1^2, norm of q(-b1 - b2*sqrt(d))",
         ", ".join(f"{k} = {v}" for k, v in factors.items()))
    if disc != ecc_discriminant_from_factors(factors):
        raise ArithmeticError("quintic discriminant disagrees with its factorization")
    if disc == 0:
        vanishing = [k for k, v in factors.items() if v == 0]
        raise DegenerateInstance(
            f"quintic {rhs} has a repeated root (vanishing factors: {', '.join(vanishing)})"
        )
    s = MultiPoly.gen("s", ("s", "t"))
    tm = MultiPoly.gen("t", ("s", "t"))
    eq = canonical(s ** 2 * tm ** 2 - MultiPoly.from_unipoly(rhs, ("s", "t")))
    invariants = {"discriminant": disc, **factors}
    return PlaneModel(("s", "t"), eq, log, rhs, invariants)


def ecc_discriminant_factors(a0, a1, a2, b1, b2, d):
    """The factors whose product (with fixed exponents) is the quintic discriminant.

    ``norm`` is ``q(-b1 - b2*sqrt(d)) * q(-b1 + b2*sqrt(d))`` for
    ``q(x) = a2*x^2 + a1*x + a0``: it vanishes exactly when the elliptic curve
    or its conjugate is singular at the root of the linear factor.
    """
    a0, a1, a2, b1, b2, d = (Fraction(v) for v in (a0, a1, a2, b1, b2, d))
    # q(-b1 + e*b2*sqrt(d)) = u + e*v*sqrt(d)
    u = a2 * (b1 * b1 + b2 * b2 * d) - a1 * b1 + a0
    v = b2 * (a1 - 2 * a2 * b1)
    return {
        "a2": a2,
        "b2": b2,
        "d": d,
        "quadratic_disc": 4 * a0 * a2 - a1 * a1,
        "norm": u * u - d * v * v,
    }


def ecc_discriminant_from_factors(f):
    return (f["a2"] ** 2 * f["b2"] ** 12 * f["d"] ** 2 * f["quadratic_disc"] ** 2 * f["norm"]) / 4096
