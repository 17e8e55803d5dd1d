import json
import subprocess
import sys

import pytest

from zetastar.cli import main, parse_n_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_n_range():
    assert parse_n_range("1..4") == [1, 2, 3, 4]
    assert parse_n_range("3") == [3]


def test_verify_mhs_text(capsys):
    code, out, _ = run(capsys, "verify-mhs", "2^1,3,2^1", "--n", "1..6")
    assert code == 0
    assert len(out.strip().splitlines()) == 6
    assert all(line.endswith("equal") for line in out.strip().splitlines())


def test_verify_mhs_json(capsys):
    code, out, _ = run(capsys, "verify-mhs", "2^1,3,2^1", "--n", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    (report,) = data["reports"]
    assert report["lhs"] == report["rhs"] == "165/128"


def test_verify_mhs_degenerate(capsys):
    code, out, _ = run(capsys, "verify-mhs", "2^0", "--n", "1..3")
    assert code == 0
    assert out.count("degenerate convention") == 3


def test_verify_mhs_parse_error(capsys):
    code, _, err = run(capsys, "verify-mhs", "2,1,2")
    assert code == 2
    assert "separator 1 < 2" in err


@pytest.mark.parametrize("bad", ["0..3", "4..2", "x"])
def test_verify_mhs_bad_range(capsys, bad):
    code, _, _ = run(capsys, "verify-mhs", "3", "--n", bad)
    assert code == 2


def test_verify_mhs_jobs_match_serial(capsys):
    _, serial, _ = run(capsys, "verify-mhs", "2,4,2", "--n", "1..5", "--json")
    _, parallel, _ = run(capsys, "verify-mhs", "2,4,2", "--n", "1..5", "--json", "--jobs", "3")
    assert serial == parallel


def test_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("ZETASTAR_JOBS", "2")
    code, out, _ = run(capsys, "verify-mhs", "3", "--n", "1..3")
    assert code == 0 and out.count("equal") == 3


def test_expand_first_example(capsys):
    code, out, _ = run(capsys, "expand", "2^7,3,2^2,3,2^3")
    assert code == 0
    assert out.strip() == "z*(2^7,3,2^2,3,2^3) = -2*z(b30) - 4*z(b23,7) - 8*z(b16,7,7) - 4*z(b16,14)"


def test_expand_second_example_json(capsys):
    code, out, _ = run(capsys, "expand", "2^3,3,2^2,4,2^5", "--mode", "both", "--json")
    data = json.loads(out)
    assert code == 0 and data["equal"]
    assert len(data["oplus"]) == 8
    assert {"coefficient": "-16", "composition": [-8, 7, 1, 11]} in data["oplus"]


def test_expand_rejects_c2(capsys):
    code, _, err = run(capsys, "expand", "3,c2", "--mode", "oplus")
    assert code == 2
    assert "c_j >= 3" in err


def test_expand_kappa_allows_c2(capsys):
    code, out, _ = run(capsys, "expand", "c2,c2", "--mode", "kappa")
    assert code == 0 and "-2*z(b4)" in out


def test_check_lemma_21(capsys):
    code, out, _ = run(capsys, "check-lemma", "21", "--n", "5", "--a", "1", "--c", "2", "--v", "1")
    assert code == 0 and "equal" in out


def test_check_lemma_42(capsys):
    code, out, _ = run(capsys, "check-lemma", "42", "--s", "", "--e", "2", "--n", "10,100,1000")
    assert code == 0 and "strictly decreasing" in out


def test_check_lemma_42_not_decreasing_exits_1(capsys):
    code, out, _ = run(capsys, "check-lemma", "42", "--s", "1", "--e", "1.5", "--n", "10,100")
    assert code == 1 and "NOT" in out


def test_check_lemma_42_rejects_e1(capsys):
    code, _, err = run(capsys, "check-lemma", "42", "--e", "1")
    assert code == 2 and "e > 1" in err


def test_eval_mhs(capsys):
    code, out, _ = run(capsys, "eval", "mhs", "--n", "2", "--s", "2,1")
    assert code == 0 and out.strip() == "1/4"


def test_eval_star_exact(capsys):
    code, out, _ = run(capsys, "eval", "star", "--n", "2", "--s", "2,1")
    assert out.strip() == "11/8"


def test_eval_zeta(capsys):
    code, out, _ = run(capsys, "eval", "zeta", "--s", "b2,1", "--tol", "1e-6", "--json")
    data = json.loads(out)
    assert code == 0
    assert abs(float(data["value"]) - 0.150257) < 1e-6


def test_eval_star_numeric(capsys):
    code, out, _ = run(capsys, "eval", "star", "--spec", "2^0,3,2^0", "--tol", "1e-6", "--json")
    data = json.loads(out)
    assert code == 0 and abs(float(data["value"]) - 1.202057) < 1e-6


def test_eval_zeta_divergent(capsys):
    code, _, _ = run(capsys, "eval", "zeta", "--s", "1,2")
    assert code == 2


def test_verify_limit(capsys):
    code, out, _ = run(capsys, "verify-limit", "2^1,3", "--tol", "1e-4")
    assert code == 0 and "consistent" in out


def test_out_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "expand", "3", "--json", "--out", str(target))
    assert code == 0
    assert target.read_text() == out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zetastar", "eval", "mhs", "--n", "2", "--s", "2,1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.strip() == "1/4"
