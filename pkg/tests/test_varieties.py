import pytest
from hypothesis import given, settings, strategies as st

from jetlab.errors import ParseError
from jetlab.varieties import parse_arc, parse_variety

COUNT = "field: Fp(2)(a)\nvars: x y z\ngens: x^2 + y*z^2 - a"


def test_count_surface():
    spec = parse_variety(COUNT)
    assert spec.field.grammar() == "Fp(2)(a)"
    assert spec.variables == ("x", "y", "z")
    assert [str(g) for g in spec.gens] == ["y*z^2 + x^2 + a"]


def test_cusp_and_round_trip():
    spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3")
    again = parse_variety(spec.to_text())
    assert again == spec and again.to_text() == spec.to_text()


def test_incomplete_generator_reports_line_3():
    with pytest.raises(ParseError) as e:
        parse_variety("field: QQ\nvars: x\ngens: x^2 +")
    assert e.value.line == 3 and e.value.column == 12


def test_comments_continuations_codim():
    spec = parse_variety(
        "# two equations\nfield: Fp(5)\nvars: x, y, z\ngens: x - z^2,\n  y - z^3  # cubic\ncodim: 2\n"
    )
    assert len(spec.gens) == 2 and spec.codim == 2
    assert parse_variety(spec.to_text()) == spec


@pytest.mark.parametrize(
    "text, line",
    [
        ("field: QQ\nvars: x1\ngens: x1", 2),
        ("field: Fp(2)(a)\nvars: a\ngens: a", 2),
        ("field: QQ\nvars: x\ngens: x\nfoo: 1", 4),
        ("field: QQ\nfield: QQ\nvars: x\ngens: x", 2),
        ("field: ZZ\nvars: x\ngens: x", 1),
        ("field: QQ\nvars: x\ngens: x\ncodim: one", 4),
        ("field: QQ\nvars: x\ngens: x,,x", 3),
        ("field: QQ\nvars: x\ngens: y", 3),
    ],
)
def test_diagnostics(text, line):
    with pytest.raises(ParseError) as e:
        parse_variety(text)
    assert e.value.line == line


def test_missing_key():
    with pytest.raises(ParseError):
        parse_variety("field: QQ\nvars: x\n")


def test_arc_syntax():
    spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3")
    arc = parse_arc("x:(1,1); y:(1)", spec)
    assert str(arc) == "x:(1,1); y:(1,0)"
    assert str(parse_arc("x:(1/2)", spec, level=1)) == "x:(1/2,0); y:(0,0)"
    for bad in ("w:(1)", "x:1", "x:(1); x:(2)", "x:()"):
        with pytest.raises(ParseError):
            parse_arc(bad, spec)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(["QQ", "Fp(3)", "Fp(2)(a)", "QQ(s)"]),
    st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4),
)
def test_random_round_trip(field, terms):
    body = " + ".join(f"({c})*u^{i}*v^{j}" for c, i, j in terms)
    spec = parse_variety(f"field: {field}\nvars: u v\ngens: {body}, u*v")
    assert parse_variety(spec.to_text()) == spec
