import json
import subprocess
import sys

import pytest

from jetlab.cli import main

CUSP = "field: QQ\nvars: x y\ngens: y^2 - x^3\n"
CONIC = "field: QQ\nvars: x y\ngens: x^2 + y^2 - 1\n"
COUNT = "field: Fp(2)(a)\nvars: x y z\ngens: x^2 + y*z^2 - a\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("cusp", CUSP), ("conic", CONIC), ("count", COUNT), ("bad", "field: QQ\nvars: x\ngens: x^2 +\n")):
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_jet(files, capsys):
    code, out, _ = run(capsys, "jet", "--order", "1", files["count"])
    assert code == 0
    assert out.splitlines() == ["F_0[0] = y0*z0^2 + x0^2 + a", "F_1[0] = y1*z0^2"]


def test_gb_and_dim(files, capsys):
    code, out, _ = run(capsys, "gb", files["cusp"])
    assert code == 0 and out.strip() == "x^3 - y^2"
    code, out, _ = run(capsys, "--format", "json", "dim", files["cusp"])
    assert code == 0 and json.loads(out) == {"dimension": 1}


def test_nsm(files, capsys):
    code, out, _ = run(capsys, "nsm", files["count"])
    assert code == 0 and out.splitlines() == ["y*z^2 + x^2 + a", "z^2"]


def test_membership_exit_codes(files, capsys):
    assert run(capsys, "member", "x^3 - y^2", files["cusp"])[0] == 0
    assert run(capsys, "member", "x", files["cusp"])[0] == 1
    assert run(capsys, "radical-member", "z", files["count"])[0] == 1
    code, out, _ = run(capsys, "saturate", "x", files["cusp"])
    assert code == 0 and out.strip() == "x^3 - y^2"


def test_lift(files, capsys):
    code, out, _ = run(capsys, "lift", files["cusp"], "--arc", "x:(1,1); y:(1)", "--solve", "y", "--to", "1")
    assert code == 0 and out.strip() == "x:(1,1); y:(1,3/2)"


def test_enumerate_and_greenberg(files, capsys):
    code, out, _ = run(capsys, "enumerate", files["conic"], "--q", "5", "--order", "0")
    assert code == 0 and out.splitlines()[-1] == "count: 4"
    code, out, _ = run(capsys, "--format", "json", "greenberg", files["conic"], "--q", "5", "--nu", "1", "--max", "3")
    assert code == 0 and json.loads(out)["sizes"] == [4, 4, 4, 4]


def test_verify(files, capsys):
    code, out, _ = run(capsys, "verify", "count-counterexample", "--p", "2")
    assert code == 0 and "OVERALL: PASS" in out
    code, out, _ = run(capsys, "verify", "greenberg-scan", "--file", files["conic"], "--nu", "1", "--max", "3")
    assert code == 0


def test_usage_and_parse_errors(files, capsys):
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys, "verify", "etale-jets", "--d", "2")[0] == 2
    code, _, err = run(capsys, "gb", files["bad"])
    assert code == 2 and "line 3" in err
    assert run(capsys, "gb", "/nonexistent/file")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "member", "x +", files["cusp"])[0] == 2


def test_limits(files, capsys):
    assert run(capsys, "enumerate", files["cusp"], "--q", "5", "--order", "6")[0] == 3
    assert run(capsys, "--step-limit", "2", "verify", "kolchin-cusp-jets")[0] == 3
    assert run(capsys, "radical-member", "--step-limit", "1", "z", files["count"])[0] == 3


def test_deterministic_output(files):
    cmd = [sys.executable, "-m", "jetlab", "verify", "count-counterexample", "--p", "3"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and "OVERALL: PASS" in a
