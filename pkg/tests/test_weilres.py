import random
from fractions import Fraction

import pytest

from relweil.arith import MultiPoly, UniPoly, discriminant
from relweil.errors import (
    DegenerateInstance,
    NotEliminable,
    PreconditionError,
    SingularInstance,
    VariableCollision,
    ZeroDenominator,
)
from relweil.number_field import NumberField
from relweil.ramgenus import hyperelliptic_genus
from relweil.weilres import (
    CurveOverL,
    MorphismData,
    derive_ecc_curve,
    derive_example_D,
    discard_redundant,
    quadratic_expand,
    quotient_even,
    relative_restrict,
    restriction_point,
    substitute_relation,
    weil_restrict,
)

Q2 = NumberField.quadratic(2)


def mp(text, vars):
    return MultiPoly.parse(text, vars)


# ------------------------------------------------------------ weil_restrict
def test_example_curve_coordinate_equation():
    c = CurveOverL.parse(Q2, ("x", "y"), ["y^2 - (x^3 - a*x^2)"])
    res = weil_restrict(c)
    vs = ("x1", "x2", "y1", "y2")
    first, second = res.restriction_equations
    assert second == mp("2*y1*y2 - (3*x1^2*x2 + 2*x2^3 - x1^2 - 2*x2^2)", vs).canonical()
    # hand expansion: x^3 - a*x^2 = (x1^3 + 6*x1*x2^2 - 4*x1*x2) + (...)*a
    assert first == mp("y1^2 + 2*y2^2 - x1^3 - 6*x1*x2^2 + 4*x1*x2", vs).canonical()
    # reconstruction: sum g_i a^(i-1) equals the substituted equation
    x = Q2.element([Fraction(3, 2), Fraction(-1, 5)])
    y = Q2.element([Fraction(7), Fraction(2, 3)])
    point = restriction_point({"x": x, "y": y}, res.variable_expansion, ("x", "y"))
    value = c.equations[0].evaluate({"x": x, "y": y})
    # the canonical forms are scaled; compare vanishing instead of values
    assert (value == 0) == all(g.evaluate(point) == 0 for g in res.restriction_equations)


def test_point_curve():
    c = CurveOverL.parse(Q2, ("x",), ["x"])
    assert [str(e) for e in weil_restrict(c).restriction_equations] == ["x1", "x2"]


def test_constant_section():
    K = NumberField.quadratic(3)
    c = CurveOverL.parse(K, ("y",), ["y - a"])
    assert [str(e) for e in weil_restrict(c).restriction_equations] == ["y1", "y2 - 1"]


def test_weil_restrict_count_and_reconstruction():
    t = UniPoly.gen("t")
    L = NumberField(t ** 3 - t - 1)
    c = CurveOverL.parse(L, ("x", "y"), ["y^2 - x^3 - a", "x*y - a^2*x + 1"])
    res = weil_restrict(c)
    assert len(res.restriction_equations) == L.degree * len(c.equations)
    rng = random.Random(7)
    for _ in range(20):
        x = L.element([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)])
        y = L.element([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)])
        point = restriction_point({"x": x, "y": y}, res.variable_expansion, ("x", "y"))
        for k, eq in enumerate(c.equations):
            value = eq.evaluate({"x": x, "y": y})
            coords = [g.evaluate(point) for g in res.restriction_equations[3 * k:3 * k + 3]]
            # canonical scaling is per equation: zero pattern must agree coordinatewise
            assert [bool(v) for v in coords] == [bool(v) for v in value.coords]


def test_weil_restrict_name_clash():
    c = CurveOverL.parse(Q2, ("x", "x1"), ["x - x1"])
    with pytest.raises(VariableCollision):
        weil_restrict(c)


def test_curve_rejects_undeclared_symbols():
    with pytest.raises(PreconditionError):
        CurveOverL.parse(Q2, ("x",), ["x - z"])


# --------------------------------------------------------- relative_restrict
def test_identity_map_gives_rational_points():
    t = UniPoly.gen("t")
    for L in (Q2, NumberField(t ** 3 - 2)):
        res = relative_restrict(CurveOverL(L, ("x",)), MorphismData.parse(L, ["x"]))
        n = L.degree
        assert [str(e) for e in res.rationality_equations] == [f"x{i}" for i in range(2, n + 1)]
        assert res.denominator_nonvanishing == []


def test_identity_map_on_curve_keeps_restriction():
    c = CurveOverL.parse(Q2, ("x", "y"), ["y^2 - x^3 - a"])
    res = relative_restrict(c, MorphismData.parse(Q2, ["x"]))
    assert res.rationality_equations == [mp("x2", res.variables)]
    assert len(res.restriction_equations) == 2


def test_rational_map_norm_inequation():
    res = relative_restrict(CurveOverL(Q2, ("x",)), MorphismData.parse(Q2, [("x*(x - a)", "x - 1")]))
    assert res.denominator_nonvanishing == [mp("x1^2 - 2*x2^2 - 2*x1 + 1", ("x1", "x2"))]


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        MorphismData.parse(Q2, [("x", "a - a")])


# --------------------------------------------------------- elimination steps
def test_substitute_relation_examples():
    vs = ("x1", "x2")
    (out,) = substitute_relation([mp("x2^2", vs)], mp("2*x1*x2 + 1", vs), "x2", mp("4*x1^2", vs))
    assert out == MultiPoly.const(1, out.vars)
    (out,) = substitute_relation([mp("y^2 + y", ("x", "y"))], mp("y - x^2", ("x", "y")), "y")
    assert out == mp("x^4 + x^2", ("x",)).with_vars(out.vars)


def test_substitute_relation_errors():
    vs = ("x1", "x2")
    with pytest.raises(NotEliminable):
        substitute_relation([mp("x2", vs)], mp("x2^2 - x1", vs), "x2")
    with pytest.raises(NotEliminable):
        substitute_relation([mp("x2^2", vs)], mp("2*x1*x2 + 1", vs), "x2", mp("x1", vs))


def test_symbolic_first_equation_has_degree_12_in_x1():
    x, y, s = MultiPoly.gen("x"), MultiPoly.gen("y"), MultiPoly.gen("s")
    a, b = MultiPoly.gen("a"), MultiPoly.gen("b")
    u = x ** 2 + s
    r1, r2 = quadratic_expand(y ** 2 - (u ** 3 + a * u + b), {"x": ("x1", "x2"), "y": ("y1", "y2")}, "s", "d")
    (r1,) = substitute_relation([r1], MultiPoly.gen("y2"), "y2")
    rel = mp("2*x1*x2 + 1", ("x1", "x2"))
    (eq,) = substitute_relation([r1], rel, "x2", 2 ** 12 * MultiPoly.gen("x1") ** 6)
    assert "x2" not in eq.used_vars()
    assert eq.degree("x1") == 12
    assert set(eq.used_vars()) == {"x1", "y1", "a", "b", "d"}


def test_discard_redundant():
    vs = ("x", "y")
    f = mp("x*y + 1", vs)
    g = mp("(x*y + 1)*(x - y)", vs)
    kept, dropped = discard_redundant([g, mp("x^2 + y", vs)], [f])
    assert kept == [mp("x^2 + y", vs)]
    assert dropped == [(g, f)]


# ------------------------------------------------------------- example D
def d_rhs(a, b, d):
    return UniPoly([64 * d ** 3, 0, 0, 0, 16 * d * (3 * d + 4 * a), 0, 64 * b, 0, 4 * (3 * d + 4 * a), 0, 0, 0, 1])


def test_example_D_instance():
    model = derive_example_D(1, 3, 13)
    assert model.rhs == d_rhs(1, 3, 13)
    assert hyperelliptic_genus(model.rhs) == 5
    assert [e["step"] for e in model.derivation_log][:2] == ["restrict", "substitute"]


def test_example_D_symbolic_form():
    model = derive_example_D("a", "b", "d")
    vs = ("x", "y", "a", "b", "d")
    expected = mp("y^2 - (x^12 + 4*(3*d + 4*a)*x^8 + 64*b*x^6 + 16*d*(3*d + 4*a)*x^4 + 64*d^3)", vs)
    assert model.equation.with_vars(vs) == expected.canonical()


def test_example_D_commutes_with_specialization():
    symbolic = derive_example_D("a", "b", "d").equation
    rng = random.Random(11)
    checked = 0
    while checked < 10:
        a, b = Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        d = rng.choice([2, 3, 5, 6, 7, 10, 11, 13, -1, -2, -3])
        if d_rhs(a, b, d).degree != 12 or discriminant(d_rhs(a, b, d)) == 0:
            continue
        const = {v: MultiPoly.const(val, ("x", "y")) for v, val in (("a", a), ("b", b), ("d", d))}
        specialized = symbolic.subs(const).with_vars(("x", "y")).canonical()
        assert specialized == derive_example_D(a, b, d).equation
        checked += 1


def test_example_D_singular_instance():
    with pytest.raises(SingularInstance, match=r"\(x\^4 \+ 20\)\^3"):
        derive_example_D(0, 0, 5)


def test_example_D_square_d():
    with pytest.raises(PreconditionError):
        derive_example_D(1, 3, 4)


def test_quotient_F():
    F = quotient_even(derive_example_D(1, 3, 13))
    assert str(F.rhs) == "x^6 + 172*x^4 + 192*x^3 + 8944*x^2 + 140608"
    assert hyperelliptic_genus(F.rhs) == 2


# --------------------------------------------------------------- ECC curve
def test_ecc_instance():
    model = derive_ecc_curve(1, 0, 1, 0, 1, 2)
    assert model.rhs.degree == 5
    assert model.rhs == UniPoly([0, Fraction(1, 16), 0, 2, 0, 4], "t")
    assert model.invariants["discriminant"] == Fraction(9, 64)
    assert hyperelliptic_genus(model.rhs) == 2


def test_ecc_rhs_matches_definition():
    a0, a1, a2, b1, b2, d = 2, -1, 3, Fraction(1, 2), 5, 7
    model = derive_ecc_curve(a0, a1, a2, b1, b2, d)
    for tv in (Fraction(1, 3), Fraction(-2), Fraction(5, 7)):
        xv = Fraction(b2 * b2) / (4 * tv) + d * tv - b1
        assert model.rhs(tv) == tv ** 3 * (a2 * xv * xv + a1 * xv + a0)


def test_ecc_discriminant_factorization_random():
    rng = random.Random(13)
    for _ in range(30):
        vals = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(5)]
        d = rng.choice([2, 3, 5, -1, -7])
        if vals[2] == 0 or vals[4] == 0:
            continue
        try:
            model = derive_ecc_curve(*vals, d)
        except DegenerateInstance:
            continue
        assert model.invariants["discriminant"] == discriminant(model.rhs) != 0


def test_ecc_preconditions():
    with pytest.raises(PreconditionError):
        derive_ecc_curve(1, 0, 1, 0, 0, 2)
    with pytest.raises(PreconditionError):
        derive_ecc_curve(1, 0, 1, 0, 1, 9)
    with pytest.raises(DegenerateInstance):
        derive_ecc_curve(1, 0, 0, 0, 1, 2)  # a2 = 0 drops the degree
    with pytest.raises(DegenerateInstance):
        derive_ecc_curve(1, 2, 1, 0, 1, 2)  # 4*a0*a2 - a1^2 = 0
