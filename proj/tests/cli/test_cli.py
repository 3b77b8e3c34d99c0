import json
import os
import re
import subprocess
from pathlib import Path

import jsonschema
import pytest

ROOT = Path(__file__).resolve().parents[2]
BIN = os.environ.get("JETREDUCE_BIN", str(ROOT / "build" / "jetreduce"))
FIXTURES = sorted((ROOT / "fixtures").glob("*.jr"))
SCHEMA = json.loads((ROOT / "schema" / "report.schema.json").read_text())

FREE = """theory p {
  base 1 coords [t];
  fields q1, q2;
  lagrangian = 1/2*q1_t^2 + 1/2*q2_t^2;
}
algebra g {
  basis [e1, e2];
}
action a of g on p {
  e1 -> { q1: 1 };
  e2 -> { q2: 1 };
}
momap m for a {
  mu 1: e1 -> SIGNq1_t;
  mu 1: e2 -> q2_t;
}
"""


def run(*args, check_code=None):
    p = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=300)
    if check_code is not None:
        assert p.returncode == check_code, p.stdout + p.stderr
    return p


def report(*args, code=0):
    p = run(*args, "--format=json", check_code=code)
    doc = json.loads(p.stdout)
    jsonschema.validate(doc, SCHEMA)
    return doc


def text_verdict(out):
    m = re.search(r"^verdict: (\w+)$", out, re.M)
    assert m, out
    return m.group(1)


@pytest.mark.parametrize("fixture", FIXTURES, ids=lambda p: p.stem)
@pytest.mark.parametrize("command", ["el", "symmetry", "verify-momap", "zero-locus", "check"])
def test_fixtures_pass_and_formats_agree(fixture, command):
    doc = report(command, fixture)
    assert doc["command"] == command
    assert doc["inputs"] == [str(fixture)]
    assert doc["verdict"] == "pass"
    assert text_verdict(run(command, fixture, check_code=0).stdout) == doc["verdict"]
    latex = run(command, fixture, "--format=latex", check_code=0).stdout
    assert "\\begin{tabular}" in latex and "verdict}: pass" in latex


def test_el_prints_canonical_forms():
    doc = report("el", ROOT / "fixtures" / "particle.jr")
    el = doc["results"][0]
    forms = {f["name"]: f["text"] for f in el["forms"]}
    assert forms["EL"] == "-(q1_tt + V_1)*v(q1)^^d(t) - (q2_tt + V_2)*v(q2)^^d(t) - (q3_tt + V_3)*v(q3)^^d(t)"
    assert forms["gamma"] == "q1_t*v(q1) + q2_t*v(q2) + q3_t*v(q3)"


def test_mutant_momap_fails_with_residual(tmp_path):
    good = tmp_path / "good.jr"
    good.write_text(FREE.replace("SIGN", ""))
    bad = tmp_path / "bad.jr"
    bad.write_text(FREE.replace("SIGN", "-"))
    assert report("verify-momap", good)["verdict"] == "pass"
    doc = report("verify-momap", bad, code=1)
    assert doc["verdict"] == "fail"
    failed = [r for r in doc["results"] if r["status"] == "fail"]
    assert failed and all("residual" in r for r in failed if r["kind"] == "momap_relation")
    assert text_verdict(run("verify-momap", bad).stdout) == "fail"


def test_zero_locus_is_a_classification(tmp_path):
    src = FREE.replace("SIGN", "") + "field line on p {\n  q1 = t;\n  q2 = 2;\n}\n"
    src += "field bent on p {\n  q1 = t^2;\n  q2 = 0;\n}\n"
    f = tmp_path / "z.jr"
    f.write_text(src)
    doc = report("zero-locus", f)
    status = {r["subject"]: r["status"] for r in doc["results"] if r["kind"] == "zero_locus"}
    assert status == {"m @ line": "member", "m @ bent": "non_member"}
    assert doc["verdict"] == "pass"


def test_zero_locus_without_fields_is_empty(tmp_path):
    f = tmp_path / "nofields.jr"
    f.write_text(FREE.replace("SIGN", ""))
    assert report("zero-locus", f)["results"] == []


def test_parse_failure_exits_2_with_diagnostics(tmp_path):
    f = tmp_path / "broken.jr"
    f.write_text("theory p {\n  base 1 coords [t];\n  fields q1;\n  lagrangian = q1_t^\n}\n")
    p = run("el", f, check_code=2)
    assert "broken.jr:4:20: syntax error" in p.stdout
    doc = report("el", f, code=2)
    assert doc["verdict"] == "error" and doc["diagnostics"]


def test_missing_file_and_bad_usage():
    run("el", "/nonexistent.jr", check_code=2)
    run("frobnicate", check_code=2)
    run("el", check_code=2)


def test_selftest_seed_zero_passes():
    doc = report("selftest", "--seed=0")
    ids = [r for r in doc["results"] if r["kind"] == "identity"]
    assert len(ids) == 13 and all(r["status"] == "pass" for r in ids)
    assert next(r for r in ids if r["subject"] == "bicomplex: d_h^2")["value"] == 200


def test_selftest_injected_fault_prints_residual():
    p = run("selftest", "--fault=d_h^2", check_code=1)
    assert "[fail] identity  bicomplex: d_h^2" in p.stdout
    assert "residual: q1_t*d(t)" in p.stdout


def test_selftest_empty_selection_is_noop():
    doc = report("selftest", "--suites=none")
    assert doc["results"] == [] and doc["verdict"] == "pass"


def test_fmt_is_canonical(tmp_path):
    for fx in FIXTURES:
        out = run("fmt", fx, check_code=0).stdout
        again = tmp_path / fx.name
        again.write_text(out)
        assert run("fmt", again, check_code=0).stdout == out
        run("fmt", "--check", fx, check_code=0)


def test_jet_order_override(tmp_path):
    f = tmp_path / "j.jr"
    f.write_text("theory p {\n  base 1 coords [t];\n  fields q;\n  jet_order 6;\n  lagrangian = q_tt^2;\n}\n")
    assert report("el", f)["verdict"] == "pass"
    doc = report("el", f, "--jet-order=3", code=1)
    assert doc["results"][0]["status"] == "error"
    assert "truncation" in doc["results"][0]["note"]
    run("el", f, "--jet-order=1", check_code=2)


def test_tolerance_override():
    fx = ROOT / "fixtures" / "harmonic.jr"
    assert report("check", fx, "--tol=1e-6")["verdict"] == "pass"
