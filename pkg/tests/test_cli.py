import io
import json
import subprocess
import sys

import pytest

from hopfgk.builtins import BUILTIN_ORDER
from hopfgk.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", BUILTIN_ORDER)
def test_check_passes_on_builtins(name):
    code, out, _ = run("check", name)
    assert code == 0
    assert "FAILED" not in out


def test_check_rejects_jacobi_sample():
    code, out, err = run("check", "jacobi-violating")
    assert code == 1
    assert "NOT confluent" in out
    assert "overlap z*y*x" in err


def test_gk_prints_exact_value():
    code, out, _ = run("gk", "wzz-3-5a", "--max-degree", "12")
    assert code == 0
    assert "exactGK = 4" in out


def test_normal_reports_witness():
    code, out, _ = run("normal", "wzz-3-5a", "--sub", "x1,x2,x3")
    assert code == 0
    assert out.startswith("not normal")
    assert "ad_l[z](x1)" in out


def test_primitives_and_ace_and_lemmas():
    assert "dim P2(H) = 4" in run("primitives", "wzz-3-5a", "--bound", "4")[1]
    code, out, _ = run("ace", "wzz-3-5a", "--sub", "x1,x2,z")
    assert code == 0 and out.startswith("almost centralizing") and "agrees" in out
    code, out, _ = run("lemmas", "central-acc", "--samples", "5")
    assert code == 0 and "5/5 pass" in out


def test_diagnostics_exit_one(tmp_path):
    bad = tmp_path / "bad.hopf"
    bad.write_text('hopf "bad"\ngen a deg 1\ngen b deg 1\n', encoding="utf-8")
    code, _, err = run("check", str(bad))
    assert code == 1
    assert "missing relation for pair (a,b)" in err


def test_file_path_input(tmp_path):
    f = tmp_path / "ab.hopf"
    f.write_text('hopf "ab"\ngen a deg 1\ngen b deg 1\nrel [a,b] = b\n', encoding="utf-8")
    code, out, _ = run("gk", str(f), "--max-degree", "6")
    assert code == 0 and "exactGK = 2" in out


def test_resource_cap_exit_two(monkeypatch):
    monkeypatch.setenv("HOPFGK_MAX_BASIS", "50")
    code, _, err = run("gk", "wzz-3-5a")
    assert code == 2
    assert "resource limit" in err


def test_invalid_subalgebra_exit_one():
    code, _, err = run("normal", "wzz-3-5a", "--sub", "x3,z")
    assert code == 1 and err


def test_report_is_byte_stable(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        subprocess.run(
            [sys.executable, "-m", "hopfgk.cli", "report", "wzz-3-5a", "-o", str(p)], check=True
        )
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_report_schema():
    code, out, _ = run("report", "wzz-3-5a", "--max-degree", "8", "--samples", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["schemaVersion"] == 1
    for key in (
        "checkConfluence", "verifyHopfAxioms", "growthFunction", "primitiveSpace",
        "antiCocommutativeSpace", "checkNormal", "bracketCriterion", "theorem00Check", "lemmas",
    ):
        assert key in doc
    assert doc["growthFunction"]["exactGK"] == 4
    z_rel = next(r for r in doc["parse"]["relations"] if (r["hi"], r["lo"]) == ("z", "x1"))
    assert z_rel["rhs"] == [{"coeff": "-1/1", "word": ["z"]}]
    assert doc["checkNormal"]["witnesses"][0]["actor"] == "z"


def test_report_on_non_confluent_input():
    doc = json.loads(run("report", "jacobi-violating", "--max-degree", "6")[1])
    assert doc["checkConfluence"]["confluent"] is False
    assert doc["growthFunction"]["estimateOnly"] is True
    assert "skipped" in doc["verifyHopfAxioms"]


def test_console_script_exit_code():
    proc = subprocess.run([sys.executable, "-m", "hopfgk.cli", "check", "jacobi-violating"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "overlap" in proc.stderr
