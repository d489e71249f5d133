import json

import pytest

from skewrank.cli import main

WORKED_F = "X^4+2X^3+3X^2+3X+1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_weight_report(capsys):
    code, out, _ = run(capsys, "--lambdas", "1,3,2,4", "weight", WORKED_F)
    assert code == 0
    assert "weight = 8" in out
    assert "annihilator = X^8+3X^7+X^6+X^5+X^3+4X^2+3X+4" in out
    assert "block ranks = [2, 1, 3, 2]" in out


def test_weight_json_schema_and_zero(capsys):
    code, out, _ = run(capsys, "weight", "0", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "skewrank.weight/1"
    assert doc["weight"] == 0 and doc["annihilator"] is None


def test_dickson_flag(capsys):
    code, out, _ = run(capsys, "--format", "json", "weight", WORKED_F, "--dickson")
    doc = json.loads(out)
    assert doc["dickson_rank"] == 8
    assert doc["dickson"]["rows"] == 12 and len(doc["dickson"]["data"][0]) == 12


def test_twisted_code(capsys):
    code, out, _ = run(capsys, "--lambdas", "1,4", "code", "--code", "twisted", "--k", "2", "--eta", "2")
    assert code == 0
    assert "d = 5" in out and "15624 codewords" in out and "MSRD" in out


def test_tz_mds_code(capsys):
    argv = ["--tower", "3,2,1", "--intermediate", "2", "--format", "json",
            "code", "--code", "tz-mds", "--k", "2", "--gamma", "g"]
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    assert code == 0 and doc["distance"]["d"] == 3 and doc["code"]["size"] == 81
    assert doc["distance"]["verdict"] == "MSRD"


def test_invalid_eta_names_the_group(capsys):
    code, _, err = run(capsys, "--lambdas", "1,4", "code", "--code", "twisted", "--k", "2", "--eta", "1")
    assert code == 1 and "⟨Λ⟩" in err


def test_corrupted_modulus(capsys):
    code, _, err = run(capsys, "--modulus", "1,0,0,1", "weight", "X")
    assert code == 1 and "ReducibleModulusError" in err


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "weight", "X^+1")
    assert code == 1 and "position 2" in err


def test_sampling_can_still_be_exact(capsys):
    # the degree bound closes the gap for LRS codes
    code, out, _ = run(capsys, "code", "--code", "lrs", "--k", "4", "--budget", "300", "--seed", "5")
    assert code == 0 and "d = 9 (sampled" in out


def test_budget_exit_code(capsys):
    argv = ["--lambdas", "1,4", "code", "--code", "lrs", "--k", "2", "--dual", "closed", "--budget", "300"]
    code, out, _ = run(capsys, *argv)
    assert code == 2 and "d = in [" in out and "verdict unknown" in out


def test_json_output_is_byte_identical(capsys):
    argv = ["--format", "json", "--lambdas", "1,4", "code", "--code", "twisted", "--k", "2",
            "--eta", "2", "--h", "1", "--budget", "500", "--seed", "9"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_demo_passes_and_reports_known_discrepancies(capsys):
    code, out, _ = run(capsys, "--format", "json", "demo")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "skewrank.demo/1"
    statuses = {c["name"]: c["status"] for c in doc["checks"]}
    assert "MISMATCH" not in statuses.values()
    assert statuses["f125-poly/dickson"] == "ok"
    assert statuses["f125-twisted/distance"] == "ok"
    assert statuses["f125-gamma-poly/weight"] == "known-discrepancy"


def test_convert_and_generator_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "--format", "json", "convert", WORKED_F)
    doc = json.loads(out)
    assert code == 0 and doc["weights"] == {"poly": 8, "vector": 8, "matrix": 8}
    path = tmp_path / "g.csv"
    code, _, _ = run(capsys, "--lambdas", "1,4", "code", "--code", "lrs", "--k", "2",
                     "--generator-csv", str(path))
    rows = path.read_text().splitlines()
    assert code == 0 and len(rows) == 2 and len(rows[0].split(",")) == 6


def test_dual_closed_form_from_cli(capsys):
    code, out, _ = run(capsys, "--tower", "5,1,2", "--lambdas", "1,4", "code", "--code", "lrs", "--k", "2",
                         "--dual", "closed")
    assert code == 0 and "d = 3" in out


def test_small_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--q", "3", "--n", "1,2")
    assert code == 0 and out.strip().endswith("0 not MSRD")


def test_missing_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
