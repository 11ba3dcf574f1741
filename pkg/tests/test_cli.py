import io
import json

from bhkmirror.cli import run_cli

from conftest import CHAIN, FERMAT, MIXED


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_analyze():
    code, out, _ = run("analyze", FERMAT, "--group", "j")
    assert code == 0
    d = json.loads(out)
    assert d["dual_group"]["invariants"] == [5, 5, 5, 5]
    assert d["ambient"]["verified"]


def test_mirror_explicit_group():
    code, out, _ = run("mirror", MIXED, "--group", "j;0,0,1/5,4/5,0")
    assert code == 0
    d = json.loads(out)
    assert d["dual_group"]["order"] == 100
    assert d["quotients"]["gt_tilde"] == [5]


def test_mirror_non_cy():
    code, out, err = run("mirror", "x0^3")
    assert code == 2
    assert "Calabi–Yau condition fails" in err
    assert out == ""


def test_compare_with_probe():
    code, out, _ = run("compare", FERMAT, CHAIN, "--group", "j", "--probe", "100", "--seed", "3")
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "birational"
    assert d["atlas"]["charts_identical"]
    assert d["atlas"]["probe"]["agreements"] == 100


def test_compare_weight_mismatch():
    code, _, err = run("compare", FERMAT, "x0^3+x1^3+x2^3", "--group", "j")
    assert code == 2 and err


def test_enumerate_compare_all():
    code, out, _ = run("enumerate", "--weights", "1,1,1", "--degree", "3", "--compare-all", "--probe", "3")
    assert code == 0
    d = json.loads(out)
    assert d["count"] == len(d["polynomials"])
    assert all(c["setup_ok"] and c["charts_identical"] and c["probe"]["passed"] for c in d["comparisons"])


def test_text_format_and_out(tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run("--format", "text", "analyze", CHAIN, "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "transpose.weights.c: [64, 48, 52, 51, 41]" in text
    code, out, _ = run("analyze", CHAIN, "--format", "text")
    assert out == text


def test_json_polynomial_input():
    code, out, _ = run("analyze", '{"exponents": [[3,0,0],[0,3,0],[0,0,3]]}')
    assert code == 0
    assert json.loads(out)["group"]["order"] == 3


def test_bad_group_and_syntax():
    assert run("analyze", FERMAT, "--group", "1/5,1/5")[0] == 2
    assert run("analyze", "x0^2 - x1^2")[0] == 2
    assert run("analyze", FERMAT, "--group", "1/3,2/3,0,0,0")[0] == 0  # not CY-type, still a report


def test_corpus_and_verify(tmp_path):
    path = tmp_path / "small.jsonl"
    assert run("corpus", str(path), "--max-vars", "3", "--max-degree", "6", "--max-order", "50")[0] == 0
    code, out, _ = run("verify", "--corpus", str(path))
    assert code == 0
    assert json.loads(out)["failed"] == 0


def test_verify_missing_file(tmp_path):
    code, _, err = run("verify", "--corpus", str(tmp_path / "none.jsonl"))
    assert code == 2 and err
