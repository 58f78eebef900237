import pytest
from hypothesis import given, settings, strategies as st

from jetlab.errors import ContextMismatch, ParseError, UnknownVariable
from jetlab.fields import QQ, PrimeField, parse_field
from jetlab.poly import (
    DEGREVLEX,
    LEX,
    Polynomial,
    VariableContext,
    parse_polynomial,
    partial_derivative,
    poly_mul,
    substitute_truncated,
)

from conftest import ring

F2a = parse_field("Fp(2)(a)")


def test_products():
    P = ring("x0 y0")
    assert poly_mul(P("x0 + y0"), P("x0 - y0")) == P("x0^2 - y0^2")
    Q = ring("x y", PrimeField(2))
    assert Q("x + y") ** 2 == Q("x^2 + y^2")
    R = ring("x", parse_field("Fp(5)(s)"))
    assert str(poly_mul(R("s*x + 1"), R("x"))) == "s*x^2 + x"


def test_partials():
    P = ring("x y")
    assert partial_derivative(P("y^2 - x^3"), "y") == P("2*y")
    S = ring("x y z", F2a)
    f = S("x^2 + y*z^2 - a")
    assert partial_derivative(f, "x").is_zero()
    assert partial_derivative(f, "y") == S("z^2")


def test_substitution_examples():
    P = ring("x y")
    ctx = VariableContext(["x0", "x1"])
    x0, x1 = (Polynomial.variable(ctx, QQ, n) for n in ("x0", "x1"))
    assert substitute_truncated(P("x"), {"x": [x0, x1], "y": [0, 0]}, 1, ctx) == [x0, x1]
    out = substitute_truncated(P("y^2 - x^3"), {"x": [QQ(1), QQ(1)], "y": [QQ(1), QQ("3/2")]}, 1)
    assert all(c.is_zero() for c in out)
    out = substitute_truncated(P("x*y"), {"x": [0, 1, 0], "y": [0, 1, 0]}, 2)
    assert [str(c) for c in out] == ["0", "0", "1"]


@pytest.mark.parametrize(
    "text",
    ["x^5 + y*z^5 - a", "(3/2)*x1", "-x^2*y + (3/2)*x + 1/3", "y0*z0^2 + x0^2 + a", "0", "-1"],
)
def test_print_parse_round_trip(text):
    names = "x y z x1 x0 y0 z0"
    f = ring(names, parse_field("QQ(a)"))(text)
    g = ring(names, parse_field("QQ(a)"))(str(f))
    assert f == g and str(f) == str(g)


def test_print_order_is_degrevlex():
    P = ring("x y")
    assert str(P("1/3 + (3/2)*x - x^2*y")) == "-x^2*y + (3/2)*x + 1/3"
    assert P("x + y^2").to_str(LEX) == "x + y^2"


def test_whitespace_insensitive():
    P = ring("x y")
    assert P("x^2+y") == P("  x ^ 2 +   y ")


def test_parse_errors_have_columns():
    P = ring("x y")
    with pytest.raises(ParseError) as e:
        P("x + w")
    assert e.value.column == 5
    with pytest.raises(ParseError):
        P("x +")
    with pytest.raises(ParseError):
        P("(x + y")


def test_context_mismatch():
    a = ring("x y")("x")
    b = ring("x z")("x")
    with pytest.raises(ContextMismatch):
        a + b


def test_evaluate_and_unknown_variable():
    P = ring("x y")
    f = P("y^2 - x^3")
    assert f.evaluate({"x": 1, "y": 1}).is_zero()
    assert f.evaluate({"x": 1, "y": 2}) == QQ(3)
    with pytest.raises(UnknownVariable):
        VariableContext(["x"]).index("q")


def test_leading_terms():
    P = ring("x y")
    f = P("x + y^2")
    assert f.leading_term(LEX)[0] == (1, 0)
    assert f.leading_term(DEGREVLEX)[0] == (0, 2)


# -- properties -------------------------------------------------------------

CTX = VariableContext(["x", "y", "z"])


@st.composite
def polys(draw, field=QQ, max_deg=3):
    terms = draw(
        st.lists(
            st.tuples(
                st.tuples(*[st.integers(0, max_deg)] * 3).filter(lambda e: sum(e) <= max_deg),
                st.integers(-4, 4),
            ),
            max_size=4,
        )
    )
    return Polynomial.from_terms(CTX, field, terms)


def _jets(f, n):
    names = [f"{b}{i}" for i in range(n + 1) for b in "xyz"]
    jctx = VariableContext(names)
    assign = {b: [Polynomial.variable(jctx, f.field, f"{b}{i}") for i in range(n + 1)] for b in "xyz"}
    return substitute_truncated(f, assign, n, jctx)


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), st.integers(0, 4))
def test_truncated_substitution_is_multiplicative(f, g, n):
    Ff, Fg, Ffg = _jets(f, n), _jets(g, n), _jets(f * g, n)
    for i in range(n + 1):
        conv = sum((Ff[j] * Fg[i - j] for j in range(i + 1)), Ffg[i] * 0)
        assert Ffg[i] == conv


@settings(max_examples=40, deadline=None)
@given(polys(), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 3))
def test_constant_assignment(f, a, b, c, n):
    out = substitute_truncated(f, {"x": [a] + [0] * n, "y": [b] + [0] * n, "z": [c] + [0] * n}, n)
    assert out[0] == f.evaluate({"x": a, "y": b, "z": c})
    assert all(v.is_zero() for v in out[1:])


@settings(max_examples=60, deadline=None)
@given(polys(PrimeField(3)), polys(PrimeField(3)), st.sampled_from("xyz"))
def test_leibniz(f, g, v):
    assert (f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_round_trip_random(f):
    assert parse_polynomial(str(f), CTX, QQ) == f
