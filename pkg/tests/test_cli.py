import io
import json
import subprocess
import sys

from hecke_irred.cli import dispatch, emit_report


def run(*argv):
    buf = io.StringIO()
    code = dispatch(list(argv), out=buf)
    return code, buf.getvalue()


def test_hooks():
    code, out = run("hooks", "2,1")
    assert code == 0
    data = json.loads(out)
    assert data["E"] == [3, 1]
    assert data["Z_exponents"] == [-3, -1, 1, 3]


def test_hooks_literal_mode():
    data = json.loads(run("hooks", "2,1", "--mode", "literal")[1])
    assert data["E"] == [3, 1, -1]


def test_irreducible_hook():
    code, out = run("irreducible", "--lambda", "2,1", "--points", "0,3")
    assert code == 0
    data = json.loads(out)
    assert data["simple"] is False
    assert data["violations"] == [[0, 3, 3]]


def test_irreducible_all_methods():
    data = json.loads(run("irreducible", "--lambda", "1", "--points", "0,1", "--method", "all", "--factors")[1])
    assert data["simple"] is False
    assert data["product"]["simple"] is False
    assert data["burnside"] == {"simple": False, "dim": 2}
    assert data["factors"] == {"[0,0]+[1,1]": 1, "[0,1]": 1}


def test_canonical_basis():
    data = json.loads(run("canonical-basis", "--weight", "1:1,2:1")[1])
    assert data["index"] == ["[1,1]+[2,2]", "[1,2]"]
    assert data["entries"] == [["1", "q"], ["0", "1"]]
    same = json.loads(run("canonical-basis", "--multisegment", "[1,2]")[1])
    assert same == data


def test_dual_product():
    data = json.loads(run("dual-product", "[0,0]", "[2,2]")[1])
    assert data["simple"] is True
    assert data["expansion"] == [{"multisegment": "[0,0]+[2,2]", "coeff": 1}]


def test_qcommute():
    data = json.loads(run("qcommute", "1,3", "2,4", "--window", "4")[1])
    assert data["weakly_separated"] is False
    assert data["agree"] is True


def test_rmatrix_poles():
    data = json.loads(run("rmatrix-poles", "--lambda", "1", "--window", "2")[1])
    assert data["contained"] is True
    assert [p["u_exponent"] for p in data["poles"]] == [-1]


def test_verify_flag():
    code, out = run("verify", "--suite", "flag", "--max-size", "3")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True and data["cases"] > 0
    assert "rows" not in data and "seconds" not in data


def test_verify_hooks_reports_counterexample():
    data = json.loads(run("verify", "--suite", "hooks", "--max-size", "5")[1])
    assert data["ok"] is False
    assert data["counterexamples"][0]["lambda"] == "3,1,1"


def test_usage_errors():
    assert run()[0] == 2
    assert run("hooks", "1,2")[0] == 2
    assert run("irreducible", "--lambda", "1")[0] == 2
    assert run("hooks", "1", "--bogus")[0] == 2


def test_domain_errors():
    assert run("canonical-basis")[0] == 1
    assert run("qcommute", "1,5", "2", "--window", "4")[0] == 1
    assert run("rmatrix-poles", "--lambda", "1,1,1", "--window", "2")[0] == 1


def test_determinism():
    args = ("dual-product", "[0,0]", "[1,1]")
    assert run(*args)[1] == run(*args)[1]


def test_json_round_trip():
    _, out = run("hooks", "3,1")
    assert json.dumps(json.loads(out), sort_keys=True) == out.strip()


def test_emit_report_formats():
    assert emit_report({}) == "{}"
    table = emit_report({"lambda": "2,1", "E": [3, 1]}, "table")
    assert table.splitlines() == ["E       [3, 1]", "lambda  2,1"]


def test_table_output():
    code, out = run("--format", "table", "hooks", "2,1")
    assert code == 0
    assert out.splitlines()[0].startswith("E ")


def test_help_mentions_each_command():
    proc = subprocess.run([sys.executable, "-m", "hecke_irred.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for name in ("hooks", "irreducible", "canonical-basis", "dual-product", "qcommute", "rmatrix-poles", "verify"):
        assert name in proc.stdout


def test_console_script():
    proc = subprocess.run(["hecke-irred", "hooks", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["E"] == [1]
