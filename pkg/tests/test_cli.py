import csv
import io
import json
import math

import pytest

from diskspace import cli

Z = json.dumps({"family": "power", "coeffs": [0, 1]})


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, list(csv.DictReader(io.StringIO(out.out))), out


def test_norm_bloch_identity(capsys):
    code, rows, _ = run(capsys, "norm", "--functional", "bloch", "--function", Z,
                        "--majorant", "identity", "--alpha", "1", "--beta", "0", "--p", "inf")
    assert code == 0 and len(rows) == 1
    assert float(rows[0]["value"]) == pytest.approx(1.0, abs=1e-9)
    assert rows[0]["functional"] == "bloch" and len(rows[0]["configHash"]) == 64


def test_compop_identity_is_unbounded_but_exit_zero(capsys):
    code, rows, _ = run(capsys, "compop", "--phi", "identity", "--alpha", "1", "--beta", "0")
    assert code == 0
    assert rows[0]["verdict"] == "Unbounded" and rows[0]["batteryAgreement"] == "True"


@pytest.mark.slow
def test_verify_suite_all(capsys):
    code, rows, _ = run(capsys, "verify", "--suite", "all")
    bad = [r for r in rows if r["verdict"] != r["expected"]]
    assert code == 0, bad
    assert len(rows) >= 20 and all(r["configHash"] for r in rows)


def test_verify_controls_count_as_expected(capsys):
    code, rows, _ = run(capsys, "verify", "--suite", "controls")
    assert code == 0
    assert [r["verdict"] for r in rows] == ["Fail"] * 3


def test_verify_single_check(capsys):
    code, rows, _ = run(capsys, "verify", "--check", "heinz", "--function", Z)
    assert code == 0 and rows[0]["theoremId"] and rows[0]["verdict"] == "Pass"


@pytest.mark.parametrize("argv", [
    ["norm", "--functional", "bloch", "--function", '{"family":"nope"}'],
    ["norm", "--functional", "bloch", "--function", "{not json"],
    ["norm", "--functional", "bloch", "--function", Z, "--alpha", "-1"],
    ["norm", "--functional", "bloch", "--function", Z, "--p", "0"],
    ["compop", "--phi", json.dumps({"family": "power", "coeffs": [0.5, 0.6]})],
    ["compop", "--phi", "identity", "--alpha", "1", "--beta", "2"],
])
def test_spec_errors_exit_two(capsys, argv):
    code, _, out = run(capsys, *argv)
    assert code == 2 and out.err.startswith("error:")


def test_output_is_byte_identical(tmp_path):
    argv = ["norm", "--functional", "lipschitz", "--function",
            json.dumps({"family": "power", "coeffs": [0, 1, 0.5]}), "--alpha", "0.5",
            "--seed", "7", "--n-pairs", "2000"]
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(argv + ["-o", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_hash_tracks_overrides(capsys):
    base = ["norm", "--functional", "hardy", "--function", Z, "--p", "2"]
    _, a, _ = run(capsys, *base)
    _, b, _ = run(capsys, *base, "--angular-nodes", "512")
    assert a[0]["configHash"] != b[0]["configHash"]
    assert float(a[0]["value"]) == pytest.approx(float(b[0]["value"]))


def test_sweep_rows(capsys):
    code, rows, _ = run(capsys, "sweep", "--function", Z, "--p", "2", "--n", "6")
    assert code == 0 and len(rows) == 7
    for row in rows:
        assert float(row["value"]) == pytest.approx(float(row["r"]))
    code, rows, _ = run(capsys, "sweep", "--quantity", "ratio", "--n", "10")
    assert code == 0
    assert all(math.isfinite(float(r["value"])) for r in rows[1:])


def test_g_functional(capsys):
    code, rows, _ = run(capsys, "norm", "--functional", "g", "--function", Z, "--zeta", "1")
    assert code == 0 and float(rows[0]["value"]) == pytest.approx(math.sqrt(0.5))
