"""Named scenarios: finite, machine-checked certificates about jet schemes.

Every scenario returns a :class:`ScenarioReport` made of named checks.  A
check that raises becomes an ``error`` verdict instead of aborting the run.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field

from .errors import BudgetExceeded, JetlabError, StepLimitExceeded, UnknownScenario
from .fields import QQ, FieldHom, PrimeField, parse_field
from .greenberg import greenberg_scan, reduce_mod_p, smooth_center_lifts
from .groebner import (
    Ideal,
    ideal_member,
    krull_dimension,
    radical_member,
    saturate,
    step_limit_scope,
)
from .jets import (
    TruncatedArc,
    base_change_ideal,
    constant_jet,
    evaluate_jet_point,
    iterated_jet_ideal,
    jet_ideal,
    truncate_arc,
    jet_name,
    wedge_name,
)
from .poly import Polynomial, VariableContext, parse_polynomial
from .smoothness import nonsmooth_ideal
from .varieties import VarietySpec, parse_variety

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class Check:
    name: str
    verdict: str
    evidence: str
    error_type: str | None = None

    def to_dict(self):
        return {"name": self.name, "verdict": self.verdict, "evidence": self.evidence}


@dataclass
class ScenarioReport:
    scenario: str
    checks: list = dc_field(default_factory=list)
    parameters: dict = dc_field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return bool(self.checks) and all(c.verdict == PASS for c in self.checks)

    @property
    def hit_limit(self) -> bool:
        return any(c.error_type in ("StepLimitExceeded", "BudgetExceeded") for c in self.checks)

    def check(self, name: str, fn):
        """Run ``fn() -> (ok, evidence)`` and record the outcome."""
        try:
            ok, evidence = fn()
        except (StepLimitExceeded, BudgetExceeded) as exc:
            self.checks.append(Check(name, ERROR, f"{type(exc).__name__}: {exc}", type(exc).__name__))
            return False
        except JetlabError as exc:
            self.checks.append(Check(name, ERROR, f"{type(exc).__name__}: {exc}", type(exc).__name__))
            return False
        self.checks.append(Check(name, PASS if ok else FAIL, evidence))
        return ok

    def to_dict(self):
        return {
            "scenario": self.scenario,
            "checks": [c.to_dict() for c in self.checks],
            "overall": PASS if self.overall else FAIL,
        }


def render_report(r: ScenarioReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2, ensure_ascii=False)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    params = ", ".join(f"{k}={v}" for k, v in r.parameters.items())
    lines = [f"scenario: {r.scenario}" + (f" ({params})" if params else "")]
    for c in r.checks:
        lines.append(f"  [{c.verdict.upper()}] {c.name}: {c.evidence}")
    lines.append(f"OVERALL: {'PASS' if r.overall else 'FAIL'}")
    return "\n".join(lines)


def _ctx(*names):
    return VariableContext(names)


def random_polynomial(rng: random.Random, ctx, field, max_degree=3, max_terms=4, coeff_range=5):
    """A random polynomial with small integer coefficients (may be zero)."""
    n = len(ctx)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms.append((tuple(e), c))
    return Polynomial.from_terms(ctx, field, terms)


# ---------------------------------------------------------------------------
# scenarios


def count_counterexample(p: int = 2) -> ScenarioReport:
    """Level-1 shadow of the regular surface x^p + y z^p = a with reducible arcs."""
    r = ScenarioReport("count-counterexample", parameters={"p": p})
    k = parse_field(f"Fp({p})(a)")
    ctx = _ctx("x", "y", "z")
    f = parse_polynomial(f"x^{p} + y*z^{p} - a", ctx, k)
    J = jet_ideal([f], 1)
    J1 = J.ideal()
    z0, y1 = J.var("z", 0), J.var("y", 1)
    expected_f1 = J.parse(f"y1*z0^{p}")

    def f1_formula():
        F1 = J.F[1][0]
        return F1 == expected_f1, f"F_1 = {F1}"

    r.check("f1-formula", f1_formula)

    # a -> u^p makes a a p-th power, so x0 = u solves F_0 with y0 = z0 = 0
    ku = parse_field(f"Fp({p})(u)")
    h = FieldHom(k, ku, {"a": f"u^{p}"})
    witness = TruncatedArc.from_vectors(ku, {"x": ["u", 0], "y": [0, 1], "z": [0, 0]}, ctx.names, 1)

    def witness_check():
        vals = evaluate_jet_point(J, witness, h)
        ok = all(v.is_zero() for v in vals)
        return ok, f"a -> u^{p}, {witness} gives ({', '.join(str(v) for v in vals)})"

    r.check("witness-in-jet-scheme", witness_check)

    cache = {}

    def sat():
        if "S" not in cache:
            cache["S"] = saturate(J1, z0)
        return cache["S"]

    def witness_outside_saturation():
        S = sat()
        member = ideal_member(y1, S)
        y1_at_witness = witness.coefficient("y", 1)
        ok = member and not y1_at_witness.is_zero()
        return ok, f"y1 in J_1 : z0^inf = ({', '.join(str(g) for g in S.gens)}); y1(witness) = {y1_at_witness}"

    r.check("witness-outside-saturation", witness_outside_saturation)

    point = {"x0": 0, "y0": "a", "z0": 1, "x1": 0, "y1": 0, "z1": 0}

    def z0_point():
        vals = [g.evaluate(point) for g in J.generators()]
        on = all(v.is_zero() for v in vals)
        z_val = z0.evaluate(point)
        return on and not z_val.is_zero(), (
            f"(x0,y0,z0,x1,y1,z1) = (0,a,1,0,0,0) satisfies J_1, z0 = {z_val} so it avoids V(J_1 + (z0))"
        )

    r.check("point-outside-z0", z0_point)

    def cover():
        # V(J_1) = V(J_1 + (z0)) u V(S) iff z0*s in rad(J_1) for all s in S
        ok = all(radical_member(z0 * s, J1) for s in sat().gens)
        return ok, (
            "V(J_1) = V(J_1 + (z0)) u V(J_1 : z0^inf), both proper (witness, z0-point): "
            "level-1 jet scheme reducible"
        )

    r.check("reducible-cover", cover)

    def claim_one():
        N = nonsmooth_ideal([f], 1)
        dim = krull_dimension(N)
        fz = Ideal([f, parse_polynomial("z", ctx, k)])
        same = all(radical_member(g, fz) for g in N.gens) and all(radical_member(g, N) for g in fz.gens)
        return dim == 1 and same, (
            f"nSm = V({', '.join(str(g) for g in N.gens)}) has dimension {dim}; radical equals rad(f, z): {same}"
        )

    r.check("nonsmooth-locus", claim_one)
    return r


def kolchin_cusp_jets() -> ScenarioReport:
    r = ScenarioReport("kolchin-cusp-jets")
    ctx = _ctx("x", "y")
    f = parse_polynomial("y^2 - x^3", ctx, QQ)
    J = jet_ideal([f], 1)
    J1 = J.ideal()
    x0, y0 = J.var("x", 0), J.var("y", 0)
    fiber = Ideal([x0, y0])
    cache = {}

    def sat():
        if "M" not in cache:
            cache["M"] = saturate(J1, x0)
        return cache["M"]

    def outside():
        for g in sat().gens:
            if not ideal_member(g, fiber):
                return True, f"{g} in J_1 : x0^inf is not in (x0, y0)"
        return False, "every saturation generator lies in (x0, y0)"

    r.check("saturation-generator-outside-fiber", outside)

    def fiber_component():
        inside = all(ideal_member(g, fiber) for g in J1.gens)
        rad = radical_member(y0, J1 + [x0])
        return inside and rad, "V(x0, y0) lies in L_1 and equals V(J_1 + (x0))"

    r.check("fiber-in-jet-scheme", fiber_component)

    def main_not_in_fiber():
        ok = not radical_member(x0, sat())
        return ok, "x0 is not in rad(J_1 : x0^inf): the closure of the smooth part leaves the fiber"

    r.check("main-part-not-in-fiber", main_not_in_fiber)

    def cover():
        ok = all(radical_member(x0 * m, J1) for m in sat().gens)
        return ok, "V(J_1) = V(x0, y0) u V(J_1 : x0^inf), neither contains the other: L_1(cusp) reducible"

    r.check("reducible-cover", cover)

    def origin():
        arc = constant_jet([f], {"x": 0, "y": 0}, 1)
        pt = arc.jet_assignment()
        in_m = all(g.evaluate(pt).is_zero() for g in sat().gens)
        in_fiber = all(g.evaluate(pt).is_zero() for g in fiber.gens)
        return in_m and in_fiber, f"constant jet {arc} lies on both parts (union connected)"

    r.check("shared-origin", origin)
    return r


def inseparable_jets(p: int = 2, n: int = 4) -> ScenarioReport:
    """Which jet coordinates of Spec k[x]/(x^p - a) are nilpotent."""
    r = ScenarioReport("remark-inseparable-jets", parameters={"p": p, "n": n})
    k = parse_field(f"Fp({p})(a)")
    f = parse_polynomial(f"x^{p} - a", _ctx("x"), k)
    J = jet_ideal([f], n)
    I = J.ideal()
    for i in range(n + 1):
        expected = 1 <= i and i * p <= n

        def one(i=i, expected=expected):
            got = radical_member(J.var("x", i), I)
            word = "in" if got else "not in"
            return got == expected, f"x{i} {word} rad(J_{n}); expected {'in' if expected else 'not in'}"

        r.check(f"x{i}", one)
    return r


def etale_jets(n: int = 3) -> ScenarioReport:
    r = ScenarioReport("etale-jets", parameters={"n": n})
    f = parse_polynomial("x^2 + 1", _ctx("x"), QQ)
    J = jet_ideal([f], n)
    I = J.ideal()
    for i in range(1, n + 1):
        r.check(
            f"x{i}",
            lambda i=i: (ideal_member(J.var("x", i), I), f"x{i} in J_{n}"),
        )
    return r


def tangent_scheme(samples: int = 10, seed: int = 0) -> ScenarioReport:
    """F_1 is the differential: sum_j dg/dx_j(x^(0)) * x_j^(1)."""
    r = ScenarioReport("tangent-scheme", parameters={"samples": samples, "seed": seed})
    rng = random.Random(seed)
    ctx = _ctx("x", "y", "z")
    for label, K in (("char0", QQ), ("char2", PrimeField(2)), ("char5", PrimeField(5))):

        def one(K=K):
            bad = 0
            for _ in range(samples):
                g = random_polynomial(rng, ctx, K, max_degree=4)
                J = jet_ideal([g], 1)
                jctx = J.ctx
                lin = Polynomial(jctx, K, {})
                for v in ctx.names:
                    d = g.derivative(v).embed(jctx, {b: jet_name(b, 0) for b in ctx.names})
                    lin = lin + d * J.var(v, 1)
                if lin != J.F[1][0]:
                    bad += 1
            return bad == 0, f"{samples - bad}/{samples} random generators over {K} satisfy the identity"

        r.check(label, one)
    return r


def nilpotent_shadow(n: int = 4) -> ScenarioReport:
    r = ScenarioReport("nilpotent-shadow", parameters={"n": n})
    f = parse_polynomial("x^2", _ctx("x"), QQ)
    J = jet_ideal([f], n)
    I = J.ideal()
    for i in range(n + 1):
        expected = 2 * i <= n

        def one(i=i, expected=expected):
            got = radical_member(J.var("x", i), I)
            return got == expected, f"x{i} {'in' if got else 'not in'} rad(J_{n}); expected {'in' if expected else 'not in'}"

        r.check(f"x{i}", one)
    return r


def affine_fibration(d: int = 2, n: int = 2) -> ScenarioReport:
    r = ScenarioReport("affine-fibration", parameters={"d": d, "n": n})
    names = ["x", "y", "z", "u", "v", "w"][:d] if d <= 6 else [f"x_{k}_" for k in range(d)]
    ctx = VariableContext(names)
    J = jet_ideal([Polynomial(ctx, QQ, {})], n)

    def dim():
        got = krull_dimension(J.ideal())
        return got == (n + 1) * d, f"dim L_{n}(A^{d}) = {got}, expected (n+1)*d = {(n + 1) * d}"

    r.check("dimension", dim)
    return r


def base_change_naturality(levels: int = 2) -> ScenarioReport:
    r = ScenarioReport("base-change-naturality", parameters={"levels": levels})
    for p in (2, 3):
        k = parse_field(f"Fp({p})(s)")
        ku = parse_field(f"Fp({p})(u)")
        h = FieldHom(k, ku, {"s": "u^2"})
        ctx = _ctx("x", "y", "z")
        f = parse_polynomial(f"x^{p} + y*z^{p} - s", ctx, k)
        for n in range(levels + 1):

            def one(n=n, f=f, h=h):
                left = base_change_ideal(jet_ideal([f], n), h).strings()
                right = jet_ideal([f.map_coefficients(h)], n).strings()
                return left == right, f"level {n}: F_0 = {left[0][0]}, F_{n} = {left[n][0]}"

            r.check(f"p{p}-level{n}", one)
    return r


def wedge_shadow(max_level: int = 2) -> ScenarioReport:
    r = ScenarioReport("wedge-shadow", parameters={"max_level": max_level})
    ctx = _ctx("x", "y")
    f = parse_polynomial("y^2 - x^3", ctx, QQ)
    W = iterated_jet_ideal([f], (1, 1))

    def count():
        gens = W.generators()
        return len(gens) == 4, f"{len(gens)} generators; F_(0,0) = {W.F[(0, 0)][0]}"

    r.check("generator-count", count)

    def symmetry():
        sw = W.swapped()
        ok = all(sw[(i1, i2)] == W.F[(i2, i1)] for (i1, i2) in W.F)
        return ok, "relabeling x_(i1,i2) -> x_(i2,i1) maps F_(i1,i2) to F_(i2,i1)"

    r.check("swap-symmetry", symmetry)

    def specialization():
        for n in range(max_level + 1):
            Wn = iterated_jet_ideal([f], (n, 0))
            Jn = jet_ideal([f], n)
            rename = {jet_name(b, i): wedge_name(b, i, 0) for b in ctx.names for i in range(n + 1)}
            for i in range(n + 1):
                if [g.embed(Wn.ctx, rename) for g in Jn.F[i]] != Wn.F[(i, 0)]:
                    return False, f"orders ({n},0) differ from jet level {n} at i={i}"
        return True, f"orders (n,0) reproduce the level-n jet ideal for n <= {max_level}"

    r.check("specialization", specialization)
    return r


CUSP_TEXT = "field: QQ\nvars: x y\ngens: y^2 - x^3\n"
CONIC_TEXT = "field: QQ\nvars: x y\ngens: x^2 + y^2 - 1\n"


def greenberg_scan_scenario(spec: VarietySpec | None = None, q: int = 5, nu: int = 2, m_max: int = 4) -> ScenarioReport:
    spec = spec or parse_variety(CUSP_TEXT)
    r = ScenarioReport("greenberg-scan", parameters={"q": q, "nu": nu, "m_max": m_max})
    gens = list(spec.gens)
    holder = {}

    def scan():
        rep = greenberg_scan(gens, q, nu, m_max)
        holder["rep"] = rep
        return rep.monotone, rep.summary()

    r.check("monotone", scan)

    def stabilized():
        rep = holder["rep"]
        return rep.stabilized, (
            f"stabilizes at m={rep.stabilization_level}, a*={rep.a_candidate} (evidence only)"
            if rep.stabilized
            else "stabilization not observed"
        )

    if "rep" in holder:
        r.check("stabilized", stabilized)

        def cross():
            rep = holder["rep"]
            image = rep.images[rep.levels[-1]]
            lifts = smooth_center_lifts(reduce_mod_p(gens, q), q, nu, m_max)
            missing = [str(pt) for pt, lift in lifts if truncate_arc(lift, nu - 1) != pt or pt not in image]
            return not missing, f"{len(lifts)} smooth-centre points Hensel-lift into the stable image" + (
                f"; missing {missing}" if missing else ""
            )

        r.check("hensel-cross-check", cross)
    return r


SCENARIOS = {
    "count-counterexample": count_counterexample,
    "kolchin-cusp-jets": kolchin_cusp_jets,
    "remark-inseparable-jets": inseparable_jets,
    "etale-jets": etale_jets,
    "tangent-scheme": tangent_scheme,
    "nilpotent-shadow": nilpotent_shadow,
    "affine-fibration": affine_fibration,
    "base-change-naturality": base_change_naturality,
    "wedge-shadow": wedge_shadow,
    "greenberg-scan": greenberg_scan_scenario,
}


def run_scenario(name: str, step_limit: int | None = None, **options) -> ScenarioReport:
    """Run a registered scenario; unknown keyword options raise TypeError."""
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None
    options = {k: v for k, v in options.items() if v is not None}
    if step_limit is None:
        return fn(**options)
    with step_limit_scope(step_limit):
        return fn(**options)


__all__ = [
    "Check",
    "ScenarioReport",
    "SCENARIOS",
    "render_report",
    "run_scenario",
    "random_polynomial",
]
