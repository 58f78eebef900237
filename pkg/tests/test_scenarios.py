import json

import pytest

from jetlab.errors import UnknownScenario
from jetlab.scenarios import SCENARIOS, ScenarioReport, render_report, run_scenario


def test_count_p2_evidence():
    r = run_scenario("count-counterexample", p=2)
    assert r.overall
    assert r.checks[0].evidence == "F_1 = y1*z0^2"
    assert len(r.checks) == 6


def test_etale_memberships():
    r = run_scenario("etale-jets", n=3)
    assert r.overall and [c.name for c in r.checks] == ["x1", "x2", "x3"]


def test_unknown():
    with pytest.raises(UnknownScenario):
        run_scenario("no-such-thing")


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_every_scenario_passes_with_defaults(name):
    r = run_scenario(name)
    assert r.overall, render_report(r)
    assert not r.hit_limit


def test_text_and_json_rendering():
    r = run_scenario("etale-jets", n=2)
    text = render_report(r)
    assert "OVERALL: PASS" in text
    data = json.loads(render_report(r, "json"))
    assert set(data) == {"scenario", "checks", "overall"}
    assert data["overall"] == "pass"
    assert all(set(c) == {"name", "verdict", "evidence"} for c in data["checks"])
    assert render_report(run_scenario("etale-jets", n=2)) == text


def test_errors_become_verdicts():
    r = run_scenario("kolchin-cusp-jets", step_limit=3)
    assert not r.overall and r.hit_limit
    assert any(c.verdict == "error" for c in r.checks)


def test_failing_check_fails_overall():
    r = ScenarioReport("demo")
    r.check("ok", lambda: (True, "fine"))
    r.check("bad", lambda: (False, "broken"))
    assert not r.overall
    assert "OVERALL: FAIL" in render_report(r)


def test_evidence_polynomials_reparse():
    from jetlab.jets import jet_ideal
    from jetlab.varieties import parse_variety

    spec = parse_variety("field: Fp(3)(a)\nvars: x y z\ngens: x^3 + y*z^3 - a\n")
    J = jet_ideal(spec.gens, 1)
    r = run_scenario("count-counterexample", p=3)
    lhs = r.checks[0].evidence.split("=", 1)[1].strip()
    assert J.parse(lhs) == J.F[1][0]
