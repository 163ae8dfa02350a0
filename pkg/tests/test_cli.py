import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from ozeta.cli import JOB_SCHEMA, JobError, main, run_job


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def column(out, name):
    rows = list(csv.DictReader(io.StringIO(out)))
    return [int(r["coefficient"]) for r in rows if r["name"] == name]


def test_local_table(capsys):
    code, out, _ = run(capsys, "local", "--q", "2", "--r", "2", "--m", "1", "--N", "8", "--format", "csv")
    assert code == 0
    assert column(out, "hey") == [1, 0, 3, 0, 7, 0, 15, 0, 31]
    assert column(out, "slice") == [1, 0, 3, 0, 19, 0, 99, 0, 563]


def test_local_factor_command(capsys):
    code, out, _ = run(capsys, "local", "--q", "2", "--r", "1", "--m", "1", "--k", "2", "--N", "4", "--format", "csv")
    assert code == 0
    assert [1, 0, 1, 0, 5] in [column(out, n) for n in {r["name"] for r in csv.DictReader(io.StringIO(out))}]


def test_global_three_lines(capsys):
    code, out, _ = run(capsys, "global", "--preset", "three_lines", "--d", "2", "--e", "2", "--q", "3", "--N", "6", "--format", "csv")
    assert code == 0
    assert column(out, "order_zeta") == [1, 9, 97, 738, 6019, 41076, 290869]
    assert column(out, "ratio_vs_matrix_algebra") == [1, 9, 45, 270, 1404, 6561, 32778]
    assert column(out, "euler") == [1, 3, 9, 22, 51, 108, 221]
    assert "check:ratio_closed_form,,PASS" in out


def test_global_inline_surface(capsys):
    surface = json.dumps({"factors": [["0", ["1", "-1"]], ["2", ["1", "-2"]], ["4", ["1", "-4"]]], "name": "P2"})
    code, out, _ = run(capsys, "global", "--surface", surface, "--d", "1", "--q", "2", "--N", "2", "--format", "csv")
    assert code == 0 and column(out, "order_zeta") == [1, 7, 49]


def test_global_catalog_with_stratum(capsys):
    code, out, _ = run(
        capsys, "global", "--surface", "A2", "--stratum", "P1:2", "--d", "2", "--q", "3", "--N", "4", "--format", "csv"
    )
    assert code == 0 and column(out, "order_zeta")[0] == 1


def test_poincare_csv_columns(capsys):
    code, out, _ = run(capsys, "poincare", "--surface", "P2", "--d", "1", "--q", "2", "--N", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["name", "degree", "z^0"]
    assert rows[3][2:] == ["1", "0", "2", "0", "3", "0", "2", "0", "1"]


def test_euler_sklyanin(capsys):
    code, out, _ = run(capsys, "euler", "--preset", "sklyanin", "--d", "3", "--e", "3", "--q", "2", "--trace", "1", "--N", "6")
    assert code == 0
    assert "PASS euler_equals_matrix_algebra" in out


def test_hecke_verify(capsys):
    code, out, _ = run(capsys, "hecke-verify", "--q", "2", "--r", "2", "--m", "2", "--N", "8")
    assert code == 0
    assert "FAIL" not in out and "PASS" in out


def test_oracle_verify_hey(capsys):
    code, out, _ = run(capsys, "oracle-verify", "--suite", "hey", "--q", "2", "--r", "2", "--n", "6")
    assert code == 0
    assert "PASS hey_vs_sublattices (matched counts 3, 7, 15)" in out


@pytest.mark.parametrize(
    "args",
    [
        ("--suite", "ideals2d", "--q", "3", "--n", "4"),
        ("--suite", "symbol", "--n", "2"),
        ("--suite", "tower", "--q", "2", "--n", "1", "--bound", "3"),
        ("--suite", "p2", "--q", "3"),
        ("--suite", "segal"),
        ("--suite", "delta", "--n", "3"),
    ],
)
def test_oracle_suites_pass(capsys, args):
    code, out, _ = run(capsys, "oracle-verify", *args)
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize(
    "args,key,want",
    [
        (("--kind", "ideals2d", "--q", "2", "--n", "4"), "counts", {"0": "1", "1": "1", "2": "3", "3": "7", "4": "19"}),
        (("--kind", "p2", "--q", "2", "--n", "2"), "counts", {"0": "1", "1": "7", "2": "49"}),
        (("--kind", "segal",), "counts", {"2": "2", "3": "3", "5": "5", "7": "7"}),
        (("--kind", "quaternion", "--n", "2"), "counts", {"0": "1", "1": "1", "2": "4"}),
    ],
)
def test_census_json(capsys, args, key, want):
    code, out, _ = run(capsys, "census", *args, "--format", "json")
    assert code == 0
    assert json.loads(out)["tables"][key] == want


def test_json_is_byte_deterministic(capsys):
    argv = ("global", "--preset", "conic_line", "--d", "2", "--e", "2", "--q", "3", "--N", "5", "--format", "json")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    proc = subprocess.run([sys.executable, "-m", "ozeta", *argv], capture_output=True, text=True, check=True)
    assert proc.stdout == a


def test_results_roundtrip_and_tamper(capsys, tmp_path):
    path = tmp_path / "res.json"
    code, _, _ = run(capsys, "global", "--preset", "three_lines", "--d", "2", "--e", "2", "--q", "3", "--N", "6", "--format", "json", "-o", str(path))
    assert code == 0
    code, out, _ = run(capsys, "results-verify", str(path))
    assert code == 0 and "FAIL" not in out
    data = json.loads(path.read_text())
    data["series"]["order_zeta"]["coefficients"][4] = "6020"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "results-verify", str(path))
    assert code == 1
    assert "first difference at t^4: stored 6020 vs recomputed 6019" in out


def test_results_verify_tables(capsys, tmp_path):
    path = tmp_path / "census.json"
    code, _, _ = run(capsys, "census", "--kind", "ideals2d", "--q", "2", "--n", "3", "--format", "json", "-o", str(path))
    assert code == 0
    code, out, _ = run(capsys, "results-verify", str(path))
    assert code == 0 and out.strip() == "PASS tables"
    data = json.loads(path.read_text())
    data["tables"]["counts"]["3"] = "8"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "results-verify", str(path))
    assert code == 1 and "FAIL tables" in out


def test_run_config_file(capsys, tmp_path):
    cfg = {"command": "local", "q": "3", "r": "1", "m": "1", "N": "3", "format": "csv"}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "run", str(path))
    assert code == 0 and column(out, "slice") == [1, 1, 4, 13]


def test_schema_errors_report_path(capsys, tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"command": "local", "q": 2, "r": "1", "m": "1", "N": "3"}))
    code, _, err = run(capsys, "run", str(path))
    assert code == 2
    assert "config invalid at q" in err
    path.write_text(json.dumps({"command": "global", "q": "3", "d": "2", "N": "3", "strata": [{"cover": {"catalog": "P1"}}]}))
    code, _, err = run(capsys, "run", str(path))
    assert code == 2 and "strata/0" in err


def test_cap(capsys):
    code, _, err = run(capsys, "local", "--q", "2", "--r", "1", "--m", "1", "--N", "30")
    assert code == 2 and "hard cap 24" in err
    code, _, _ = run(capsys, "local", "--q", "2", "--r", "1", "--m", "1", "--N", "30", "--cap", "40")
    assert code == 0


def test_bad_inputs_exit_two(capsys):
    assert run(capsys, "global", "--preset", "three_lines", "--d", "2", "--e", "2", "--q", "2", "--N", "3")[0] == 2
    assert run(capsys, "oracle-verify", "--suite", "ideals2d", "--q", "5", "--n", "2")[0] == 2
    assert run(capsys, "global", "--surface", "nowhere", "--d", "1", "--q", "2", "--N", "2")[0] == 2


def test_failed_check_exits_one():
    res = run_job({"command": "local", "q": "2", "r": "1", "m": "1", "N": "2"})
    res.check("forced", False, "x")
    assert res.failed


def test_schema_command_prints_valid_schema(capsys):
    code, out, _ = run(capsys, "schema")
    assert code == 0
    schema = json.loads(out)
    jsonschema.Draft202012Validator.check_schema(schema)
    assert schema == json.loads(json.dumps(JOB_SCHEMA))


def test_run_job_rejects_missing_fields():
    with pytest.raises(JobError):
        run_job({"command": "global", "q": "3", "d": "2", "N": "3"})
