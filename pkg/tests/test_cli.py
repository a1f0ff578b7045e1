import io
import json
from pathlib import Path

import pytest

from loopcoh.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["parse", "(y*(x*(y*z))) = ((y*(x*y))*z)"], "parse_bol.json"),
        (["diff", "--law", "bol", "--output", "json"], "diff_bol.json"),
        (["cohomology", "--law", "bol", "--n", "3", "--m", "2"], "cohomology_bol_3_2.json"),
        (["cohomology", "--law", "commutativity", "--n", "3", "--m", "2"], "cohomology_commutativity_3_2.json"),
        (["cohomology", "--law", "inverse-property", "--n", "3", "--m", "2"], "cohomology_ip_3_2.json"),
    ],
)
def test_golden(argv, golden):
    code, out, _ = run(*argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_golden_values():
    bol = json.loads((GOLDEN / "cohomology_bol_3_2.json").read_text())
    assert (bol["cocycles"], bol["coboundaries"], bol["h2"]) == (4, 4, 1)
    comm = json.loads((GOLDEN / "cohomology_commutativity_3_2.json").read_text())
    assert (comm["cocycles"], comm["coboundaries"], comm["h2"], comm["paperFormula"], comm["mismatch"]) == (8, 4, 2, 1.5, True)
    assert json.loads((GOLDEN / "parse_bol.json").read_text())["rho"] == [1, 2, 1, 3]


def test_deterministic():
    argv = ["cohomology", "--law", "left-moufang", "--n", "3", "--m", "4"]
    assert run(*argv)[1] == run(*argv)[1]


def test_parse_errors_exit_2():
    code, _, err = run("parse", "(x*y)=(y*x)")
    assert code == 2 and "commutativity" in err
    code, _, err = run("parse", "")
    assert code == 2 and "empty input" in err
    code, _, err = run("parse", "(x*(y*z) = ((x*y)*z)")
    assert code == 2 and "unbalanced" in err and "column 9" in err


def test_diff_text():
    code, out, _ = run("diff", "--law", "bol-unrepeated")
    assert code == 0
    assert out.splitlines() == [
        "+ f(x, y)·z",
        "+ f(w, (x*y))·z",
        "+ f((w*(x*y)), z)",
        "- f(w, (x*(y*z)))",
        "- f(x, (y*z))",
        "- f(y, z)",
    ]


def test_diff_trivial_law():
    code, _, err = run("diff", "--law", "(x*(y*z)) = (x*(y*z))")
    assert code == 2 and "law has no defining identity" in err


def test_usage_errors():
    assert run()[0] == 2
    assert run("cohomology", "--law", "bol", "--n", "3")[0] == 2
    code, _, err = run("cohomology", "--law", "bol", "--n", "3", "--m", "3", "--t", "2")
    assert code == 2 and "not a valid action" in err
    code, _, err = run("cohomology", "--law", "commutativity", "--n", "2", "--m", "3", "--t", "2")
    assert code == 2 and "trivial action" in err
    code, _, err = run("cohomology", "--law", "bol", "--n", "5", "--m", "5", "--method", "brute", "--limit", "100")
    assert code == 2


def test_csv_and_text():
    code, out, _ = run("cohomology", "--law", "bol", "--n", "3", "--m", "2", "--output", "csv")
    assert out.splitlines()[1] == "bol,3,2,1,16,4,4,4,1,both"
    code, out, _ = run("cohomology", "--law", "commutativity", "--n", "3", "--m", "2", "--output", "text")
    assert "MISMATCH" in out


def test_custom_law_string():
    code, out, _ = run("cohomology", "--law", "(x*(y*z)) = ((x*y)*z)", "--n", "2", "--m", "2")
    assert code == 0 and json.loads(out)["h2"] == 2


def test_env_limit(monkeypatch):
    monkeypatch.setenv("LOOPCOH_BRUTE_LIMIT", "1")
    code, out, _ = run("cohomology", "--law", "bol", "--n", "3", "--m", "2")
    assert json.loads(out)["method"] == "linear"


def test_classify():
    code, out, _ = run("classify", "--law", "commutativity", "--n", "3", "--m", "2")
    data = json.loads(out)
    assert code == 0 and len(data) == 2
    assert data[0]["provenance"]["law"] == "commutativity"


def test_verify_suite(capsys):
    code, out, _ = run("verify-paper")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("[")]
    assert len(lines) == 9 and all(ln.startswith("[PASS]") for ln in lines)
    assert "one extension class, representative associative=true" in out
