"""
CLI tests: output shapes, formats, exit codes, file vectors, and the
byte-for-byte determinism contract.
"""

import json
import subprocess
import sys

TWO_ONE_ROWS = [
    [-2, 2, 0, 2, 0, -2],
    [2, 0, -2, -2, 2, 0],
    [0, -1, 1, 0, -1, 1],
    [0, -1, 1, 0, -1, 1],
]


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "lensq.cli", *args],
        capture_output=True, text=True)


def test_matrix_table():
    result = run_cli("matrix", "--p", "2", "--q", "1")
    assert result.returncode == 0
    assert "-2  2  0  2  0 -2" in result.stdout
    assert result.stdout.startswith("q matching matrix")


def test_matrix_json_envelope():
    result = run_cli("matrix", "--p", "2", "--q", "1", "--format", "json")
    assert result.returncode == 0
    data = json.loads(result.stdout)
    assert data["command"] == "matrix"
    assert data["params"] == {"p": 2, "q": 1}
    assert data["payload"]["rows"] == TWO_ONE_ROWS
    assert data["payload"]["row_labels"] == ["e1", "e2", "Eh", "Ev"]
    assert "tool_version" in data


def test_haken_matrix_dimensions():
    result = run_cli("matrix", "--p", "5", "--q", "2", "--system", "haken",
                     "--format", "json")
    payload = json.loads(result.stdout)["payload"]
    assert len(payload["rows"]) == 30
    assert len(payload["rows"][0]) == 35


def test_matrix_csv_round_trips():
    result = run_cli("matrix", "--p", "3", "--q", "1", "--format", "csv")
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 1 + 5  # header + p+2 rows
    assert lines[1].startswith("e1,")


def test_invalid_params_exit_code():
    result = run_cli("matrix", "--p", "4", "--q", "2")
    assert result.returncode == 1
    assert "InvalidParams" in result.stderr
    assert result.stderr.count("\n") == 1  # single-line reason


def test_enum_two_one():
    result = run_cli("enum", "--p", "2", "--q", "1", "--format", "json")
    payload = json.loads(result.stdout)["payload"]
    assert len(payload["fundamental"]) == 3
    names = sorted(rec["components"][0]["name"]
                   for rec in payload["fundamental"])
    assert names == ["projective plane", "projective plane", "torus"]


def test_enum_six_one_count():
    result = run_cli("enum", "--p", "6", "--q", "1", "--format", "json")
    payload = json.loads(result.stdout)["payload"]
    assert len(payload["fundamental"]) == 9


def test_enum_raw_hilbert():
    result = run_cli("enum", "--p", "3", "--q", "1", "--raw-hilbert",
                     "--format", "json")
    payload = json.loads(result.stdout)["payload"]
    assert len(payload["hilbert_basis"]) == 17
    raw = {tuple(v) for v in payload["hilbert_basis"]}
    fundamental = {tuple(rec["vector"]) for rec in payload["fundamental"]}
    assert fundamental < raw
    assert (1, 1, 1, 0, 0, 0, 0, 0, 0) in raw


def test_enum_budget_exit_code():
    result = run_cli("enum", "--p", "6", "--q", "1",
                     "--max-seconds", "0.001")
    assert result.returncode == 3
    assert "budget" in result.stderr


def test_enum_determinism_and_threads():
    runs = [run_cli("enum", "--p", "5", "--q", "2", "--format", "json",
                    "--threads", t).stdout for t in ("1", "1", "3")]
    assert runs[0] == runs[1] == runs[2]


def test_classify_inline_vector():
    result = run_cli("classify", "--p", "7", "--q", "1", "--vector",
                     ",".join(["1", "0", "0"] * 7), "--format", "json")
    payload = json.loads(result.stdout)["payload"]
    assert payload["euler"] == 0
    assert payload["orientable"] is True
    assert payload["components"][0]["name"] == "torus"
    assert payload["coefficients"]["a"] == ["1"] * 7
    assert payload["coefficients"]["b"] == ["-1/2"] * 7
    assert payload["integrality"] == {"B": "Z+1/2"}


def test_classify_from_fixture_file(tmp_path):
    path = tmp_path / "vectors.txt"
    path.write_text(
        "# records\n"
        "8 3 0,0,0,0,1,0,0,0,0,0,0,0,0,0,1,0,1,0,0,0,1,0,0,0 klein\n"
        "2 1 1,0,0,1,0,0 torus\n")
    result = run_cli("classify", "--p", "8", "--q", "3",
                     "--vector", f"@{path}", "--format", "json",
                     "--fundamental")
    payload = json.loads(result.stdout)["payload"]
    assert payload["euler"] == 0
    assert payload["orientable"] is False
    assert payload["components"][0]["name"] == "Klein bottle"
    assert payload["is_fundamental"] is True


def test_classify_file_needs_index_when_ambiguous(tmp_path):
    path = tmp_path / "vectors.txt"
    path.write_text("2 1 1,0,0,1,0,0 a\n2 1 0,1,0,0,0,1 b\n")
    result = run_cli("classify", "--p", "2", "--q", "1",
                     "--vector", f"@{path}")
    assert result.returncode == 1
    assert "--index" in result.stderr
    result = run_cli("classify", "--p", "2", "--q", "1",
                     "--vector", f"@{path}", "--index", "1",
                     "--format", "json")
    assert json.loads(result.stdout)["payload"]["euler"] == 1


def test_classify_zero_vector_is_invalid():
    result = run_cli("classify", "--p", "2", "--q", "1",
                     "--vector", "0,0,0,0,0,0")
    assert result.returncode == 1
    assert "EmptyVector" in result.stderr


def test_classify_non_solution_is_invalid():
    result = run_cli("classify", "--p", "2", "--q", "1",
                     "--vector", "1,0,0,0,0,0")
    assert result.returncode == 1
    assert "NotASolution" in result.stderr


def test_verify_pass_and_json():
    result = run_cli("verify", "--p", "3", "--q", "1")
    assert result.returncode == 0
    assert "verification passed" in result.stdout
    result = run_cli("verify", "--p", "7", "--q", "2", "--format", "json",
                     "--max-seconds", "120")
    assert result.returncode == 0
    data = json.loads(result.stdout)
    assert data["payload"]["passed"] is True


def test_verify_fixtures():
    result = run_cli("verify", "--fixtures", "--max-seconds", "120")
    assert result.returncode == 0, result.stdout + result.stderr
    assert "FAIL" not in result.stdout
    assert "(418,153) giant: haken-criterion" in result.stdout


def test_missing_verify_target():
    result = run_cli("verify")
    assert result.returncode == 1
