"""Acceptance gate: ten criteria, exact arithmetic, each under a time limit.

Every test records one ``PASS``/``FAIL`` line; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

import random
import sys
import time
from functools import wraps

from jetlab.fields import QQ, FieldHom, parse_field
from jetlab.greenberg import greenberg_scan, smooth_center_lifts
from jetlab.groebner import (
    Ideal,
    buchberger_reduced,
    check_confluence,
    ideal_member,
    is_reduced,
    krull_dimension,
    radical_member,
)
from jetlab.jets import (
    base_change_ideal,
    hs_coefficient_char0,
    iterated_jet_ideal,
    jet_ideal,
    jet_name,
    truncate_arc,
    wedge_name,
)
from jetlab.poly import DEGREVLEX, LEX, Polynomial, VariableContext, parse_polynomial
from jetlab.scenarios import random_polynomial, run_scenario
from jetlab.varieties import parse_variety

from desk import desk_instances, random_instances

RESULTS = []

CUSP = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3\n")
CONIC = parse_variety("field: QQ\nvars: x y\ngens: x^2 + y^2 - 1\n")


def criterion(number, limit, title):
    def deco(fn):
        @wraps(fn)
        def run():
            t0 = time.perf_counter()
            ok, detail = False, ""
            try:
                detail = fn() or ""
                ok = True
            except AssertionError as exc:
                detail = f"assertion failed: {exc}"
                raise
            finally:
                elapsed = time.perf_counter() - t0
                if ok and elapsed >= limit:
                    ok, detail = False, "over the time limit"
                verdict = "PASS" if ok else "FAIL"
                RESULTS.append(f"criterion {number:2d} {verdict}  {title}  ({elapsed:.2f}s, limit {limit}s) {detail}".rstrip())
            assert ok, detail

        return run

    return deco


@criterion(1, 10, "HS coefficient equals substitution coefficient")
def test_criterion_01_hasse_schmidt():
    rng = random.Random(20240101)
    names = ["x", "y", "z"]
    agree = 0
    for k in range(100):
        ctx = VariableContext(names[: 1 + k % 3])
        f = random_polynomial(rng, ctx, QQ, max_degree=4, max_terms=5)
        n = rng.randint(0, 4)
        J = jet_ideal([f], n)
        if all(hs_coefficient_char0(f, i, level=n) == J.F[i][0] for i in range(n + 1)):
            agree += 1
    assert agree == 100, f"{agree}/100"
    return "100/100 exact"


@criterion(2, 30, "count counterexample, p = 2 and 3")
def test_criterion_02_count_counterexample():
    for p in (2, 3):
        r = run_scenario("count-counterexample", p=p)
        assert len(r.checks) == 6
        bad = [c.name for c in r.checks if c.verdict != "pass"]
        assert not bad, f"p={p}: {bad}"
        assert r.checks[0].evidence == f"F_1 = y1*z0^{p}"
    return "6/6 checks for both primes"


@criterion(3, 10, "inseparable jets: radical membership pattern")
def test_criterion_03_inseparable_jets():
    count = 0
    for p in (2, 3):
        K = parse_field(f"Fp({p})(a)")
        f = parse_polynomial(f"x^{p} - a", VariableContext(["x"]), K)
        for n in range(7):
            J = jet_ideal([f], n)
            I = J.ideal()
            for i in range(n + 1):
                want = 1 <= i and i * p <= n
                assert radical_member(J.var("x", i), I) == want, f"p={p} n={n} i={i}"
                count += 1
    return f"{count} verdicts"


@criterion(4, 5, "etale shadow for x^2 + 1")
def test_criterion_04_etale():
    f = parse_polynomial("x^2 + 1", VariableContext(["x"]), QQ)
    for n in range(1, 6):
        J = jet_ideal([f], n)
        for i in range(1, n + 1):
            assert ideal_member(J.var("x", i), J.ideal()), f"x{i} not in J_{n}"


@criterion(5, 10, "cusp level-1 jets reducible, shared origin")
def test_criterion_05_kolchin():
    r = run_scenario("kolchin-cusp-jets")
    assert r.overall, [(c.name, c.evidence) for c in r.checks if c.verdict != "pass"]
    return r.checks[0].evidence


@criterion(6, 10, "jet dimension of affine space")
def test_criterion_06_fibration():
    names = ["x", "y", "z"]
    for d in (1, 2, 3):
        ctx = VariableContext(names[:d])
        for n in (1, 2, 3):
            J = jet_ideal([Polynomial(ctx, QQ, {})], n)
            assert krull_dimension(J.ideal()) == (n + 1) * d
    return "9/9"


@criterion(7, 60, "Greenberg scans over F_5")
def test_criterion_07_greenberg():
    rep = greenberg_scan(CONIC.gens, 5, 1, 3)
    assert rep.sizes == [4, 4, 4, 4] and rep.a_candidate == 1
    seen = []
    for nu in (1, 2):
        rep = greenberg_scan(CUSP.gens, 5, nu, 4)
        assert rep.monotone and rep.stabilized, rep.summary()
        stable = rep.images[rep.levels[-1]]
        lifts = smooth_center_lifts(CUSP.gens, 5, nu, 4)
        assert lifts
        for pt, lift in lifts:
            assert truncate_arc(lift, nu - 1) == pt and pt in stable
        seen.append(f"nu={nu}: {rep.sizes}")
    return "; ".join(seen)


@criterion(8, 60, "Groebner engine soundness")
def test_criterion_08_groebner():
    rng = random.Random(7)
    for gens in desk_instances():
        ref = buchberger_reduced(Ideal(gens), DEGREVLEX)
        assert check_confluence(ref) and is_reduced(ref)
        assert check_confluence(buchberger_reduced(Ideal(gens), LEX))
        for _ in range(2):
            perm = gens[:]
            rng.shuffle(perm)
            assert buchberger_reduced(Ideal(perm), DEGREVLEX).strings() == ref.strings()
    for f, gens in random_instances(50):
        I = Ideal(gens)
        assert ideal_member(f, I, LEX) == ideal_member(f, I, DEGREVLEX)
    return "25 desk instances, 50 membership pairs"


@criterion(9, 10, "base change square and constant sections")
def test_criterion_09_naturality():
    src, dst = parse_field("Fp(2)(s)"), parse_field("Fp(2)(u)")
    h = FieldHom(src, dst, {"s": "u^2"})
    f = parse_polynomial("x^2 + y*z^2 - s", VariableContext(["x", "y", "z"]), src)
    for n in range(3):
        left = base_change_ideal(jet_ideal([f], n), h).strings()
        right = jet_ideal([f.map_coefficients(h)], n).strings()
        assert left == right
    rng = random.Random(99)
    ctx = VariableContext(["x", "y", "z"])
    for _ in range(25):
        gens = [random_polynomial(rng, ctx, QQ, max_degree=3) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()] or [Polynomial.variable(ctx, QQ, "x")]
        n = rng.randint(1, 3)
        J = jet_ideal(gens, n)
        section = {jet_name(b, i): 0 for b in ctx.names for i in range(1, n + 1)}
        for i in range(1, n + 1):
            assert all(F.substitute(section).is_zero() for F in J.F[i])


@criterion(10, 5, "wedge shadow for the cusp")
def test_criterion_10_wedge():
    f = CUSP.gens[0]
    W = iterated_jet_ideal([f], (1, 1))
    assert len(W.generators()) == 4
    sw = W.swapped()
    assert all(sw[(a, b)] == W.F[(b, a)] for (a, b) in W.F)
    for n in range(4):
        Wn, Jn = iterated_jet_ideal([f], (n, 0)), jet_ideal([f], n)
        rename = {jet_name(b, i): wedge_name(b, i, 0) for b in "xy" for i in range(n + 1)}
        for i in range(n + 1):
            assert [g.embed(Wn.ctx, rename) for g in Jn.F[i]] == Wn.F[(i, 0)]


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
