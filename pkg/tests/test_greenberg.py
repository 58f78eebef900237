import pytest

from jetlab.errors import BudgetExceeded, FieldMismatch, LevelOutOfRange, ResidualNonzero, SingularCenter
from jetlab.fields import QQ, PrimeField
from jetlab.greenberg import (
    LiftProblem,
    enumerate_jets,
    greenberg_scan,
    hensel_lift,
    image_truncation,
    reduce_mod_p,
    smooth_center_lifts,
)
from jetlab.jets import TruncatedArc, jet_ideal, evaluate_jet_point, truncate_arc
from jetlab.poly import VariableContext, Polynomial
from jetlab.varieties import parse_arc, parse_variety


class TestHensel:
    def test_cusp(self, cusp):
        arc = parse_arc("x:(1,1); y:(1)", cusp, level=1)
        lift = hensel_lift(LiftProblem(cusp.gens, arc, 1, 1, ["y"]))
        assert str(lift) == "x:(1,1); y:(1,3/2)"

    def test_conic_mod5(self):
        spec = parse_variety("field: Fp(5)\nvars: x y\ngens: x^2 + y^2 - 1\n")
        arc = parse_arc("y:(0,1); x:(1)", spec, level=1)
        lift = hensel_lift(LiftProblem(spec.gens, arc, 1, 2, ["x"]))
        assert str(lift) == "x:(1,0,2); y:(0,1,0)"
        J = jet_ideal(spec.gens, 2)
        assert all(v.is_zero() for v in evaluate_jet_point(J, lift))

    def test_higher_precision_input_is_kept(self, cusp):
        arc = parse_arc("x:(1,1,0,0); y:(1,3/2)", cusp)
        lift = hensel_lift(LiftProblem(cusp.gens, arc, 2, 3, ["y"]))
        assert str(lift) == "x:(1,1,0,0); y:(1,3/2,3/8,-1/16)"

    def test_singular_centre(self, cusp):
        arc = parse_arc("x:(0,1); y:(0)", cusp, level=1)
        with pytest.raises(SingularCenter):
            hensel_lift(LiftProblem(cusp.gens, arc, 1, 2, ["y"]))

    def test_bad_input(self, cusp):
        arc = parse_arc("x:(1); y:(2)", cusp)
        with pytest.raises(ResidualNonzero):
            hensel_lift(LiftProblem(cusp.gens, arc, 1, 2, ["y"]))
        with pytest.raises(LevelOutOfRange):
            LiftProblem(cusp.gens, arc, 0, 2, ["y"])


class TestEnumeration:
    def test_cusp_points(self, cusp):
        pts = enumerate_jets(cusp.gens, 5, 0)
        assert {(a.coeffs[0][0], a.coeffs[1][0]) for a in pts} == {(0, 0), (1, 1), (1, 4), (4, 2), (4, 3)}

    def test_conic_points(self, conic):
        assert len(enumerate_jets(conic.gens, 5, 0)) == 4

    def test_zero_ideal(self):
        zero = Polynomial(VariableContext(["x"]), PrimeField(3), {})
        assert len(enumerate_jets([zero], 3, 1)) == 9

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_strategies_agree(self, cusp, n):
        a = enumerate_jets(cusp.gens, 5, n, strategy="levelwise")
        b = enumerate_jets(cusp.gens, 5, n, strategy="grid")
        assert a == b

    def test_every_point_satisfies_equations(self, cusp):
        eqs = reduce_mod_p(cusp.gens, 5)
        J = jet_ideal(eqs, 2)
        for arc in enumerate_jets(cusp.gens, 5, 2):
            assert all(v.is_zero() for v in evaluate_jet_point(J, arc))

    def test_budget(self, cusp):
        with pytest.raises(BudgetExceeded):
            enumerate_jets(cusp.gens, 5, 6)

    def test_not_prime(self, cusp):
        with pytest.raises(FieldMismatch):
            enumerate_jets(cusp.gens, 4, 0)

    def test_denominator_divisible_by_q(self):
        spec = parse_variety("field: QQ\nvars: x\ngens: x/5 - 1\n")
        with pytest.raises(FieldMismatch):
            enumerate_jets(spec.gens, 5, 0)


def test_image_truncation():
    F = PrimeField(5)
    S = {TruncatedArc.from_vectors(F, {"x": [1, c]}, ("x",), 1) for c in (1, 2)}
    assert image_truncation(S, 1) == S
    assert {str(a) for a in image_truncation(S, 0)} == {"x:(1)"}


class TestScan:
    def test_conic(self, conic):
        rep = greenberg_scan(conic.gens, 5, 1, 3)
        assert rep.sizes == [4, 4, 4, 4]
        assert rep.stabilization_level == 0 and rep.a_candidate == 1

    @pytest.mark.parametrize("nu", [1, 2])
    def test_cusp(self, cusp, nu):
        rep = greenberg_scan(cusp.gens, 5, nu, 4)
        assert rep.monotone and rep.stabilized
        stable = rep.images[rep.levels[-1]]
        for pt, lift in smooth_center_lifts(cusp.gens, 5, nu, 4):
            assert truncate_arc(lift, nu - 1) == pt
            assert pt in stable

    def test_cusp_nu2_frozen(self, cusp):
        rep = greenberg_scan(cusp.gens, 5, 2, 4)
        assert rep.sizes == [45, 25, 21, 21]
        assert rep.stabilization_level == 3 and rep.a_candidate == 2

    def test_zero_ideal_constant(self):
        zero = Polynomial(VariableContext(["x", "y"]), QQ, {})
        rep = greenberg_scan([zero], 3, 1, 2)
        assert rep.sizes == [9, 9, 9]

    def test_report_dict(self, conic):
        d = greenberg_scan(conic.gens, 5, 1, 2).to_dict()
        assert d["sizes"] == [4, 4, 4] and d["monotone"] is True


def test_truncated_level1_points_lie_over_level0(cusp):
    over = image_truncation(enumerate_jets(cusp.gens, 5, 1), 0)
    assert over <= enumerate_jets(cusp.gens, 5, 0)
