import json
from pathlib import Path

import numpy as np
import pytest

from accord.cli import (
    EXIT_BAD_STATE,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    SCAN_COLUMNS,
    SCATTER_COLUMNS,
    main,
    scatter_rows,
)
from accord.verify import Check

DATA = Path(__file__).parent / "data"


def write_state(path, m):
    path.write_text(json.dumps({"d": 2, "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m]}))
    return path


def run_json(tmp_path, *argv):
    out = tmp_path / "out.json"
    assert main([*argv, "--out", str(out)]) == EXIT_OK
    return json.loads(out.read_text())


class TestCompute:
    def test_zero_accord_fixture(self, tmp_path):
        report = run_json(tmp_path, "compute", "--state", str(DATA / "zero_accord.json"))
        assert report["d"] == 2
        assert report["accord"]["value"] <= 1e-6
        assert report["concurrence"]["value"] > 0
        assert report["discord"]["measured_side"] == "A"
        assert report["chsh"]["violated"] is False

    def test_phi_plus(self, tmp_path):
        report = run_json(tmp_path, "compute", "--state", str(DATA / "phi_plus.json"), "--measured-side", "min")
        assert report["family"] == "pure"
        assert report["accord"] == {"value": pytest.approx(1), "method": "closed_form"}
        assert report["singlet_fraction"]["value"] == pytest.approx(1)
        assert report["discord"]["value"] == pytest.approx(1, abs=1e-6)
        assert report["mutual_information"]["value"] == pytest.approx(2)

    def test_qutrit_state_omits_two_qubit_measures(self, tmp_path):
        report = run_json(tmp_path, "compute", "--state", str(DATA / "isotropic_d3.json"))
        assert report["d"] == 3
        assert report["family"] == "isotropic"
        assert report["concurrence"] is None and report["discord"] is None and report["chsh"] is None
        assert 0 <= report["accord"]["value"] <= 1

    def test_missing_file(self, tmp_path, capsys):
        assert main(["compute", "--state", str(tmp_path / "nope.json")]) == EXIT_BAD_STATE
        assert "invalid input state" in capsys.readouterr().err

    def test_not_a_density_matrix(self, tmp_path, capsys):
        bad = write_state(tmp_path / "bad.json", np.diag([1.5, 0, 0, -0.5]))
        assert main(["compute", "--state", str(bad)]) == EXIT_BAD_STATE
        assert "eigenvalue" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["compute", "--state", str(bad)]) == EXIT_BAD_STATE


class TestCsv:
    def test_scan_isotropic(self, tmp_path):
        out = tmp_path / "scan.csv"
        assert main(["scan-isotropic", "--d", "2", "--steps", "5", "--out", str(out)]) == EXIT_OK
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == ",".join(SCAN_COLUMNS)
        assert len(lines) == 6
        last = dict(zip(SCAN_COLUMNS, lines[-1].split(",")))
        assert float(last["p"]) == 1 and float(last["accord"]) == pytest.approx(1)
        assert last["chsh_violated"] == "1"
        first = dict(zip(SCAN_COLUMNS, lines[1].split(",")))
        assert float(first["accord"]) == pytest.approx(1 / 3)
        assert float(first["discord"]) == pytest.approx(1 / 3)
        assert first["chsh_violated"] == "0"

    def test_scan_qutrits_leaves_qubit_columns_blank(self, tmp_path):
        out = tmp_path / "scan.csv"
        assert main(["scan-isotropic", "--d", "3", "--steps", "3", "--out", str(out)]) == EXIT_OK
        row = out.read_text().splitlines()[2].split(",")
        assert row[SCAN_COLUMNS.index("concurrence")] == ""
        assert row[SCAN_COLUMNS.index("singlet_fraction")] != ""

    def test_scan_steps_validated(self):
        assert main(["scan-isotropic", "--steps", "1"]) == EXIT_BAD_STATE

    def test_scatter_is_byte_identical_across_runs(self, tmp_path):
        paths = [tmp_path / f"{k}.csv" for k in range(2)]
        for p in paths:
            assert main(["scatter", "--family", "general_i", "--count", "6", "--seed", "4", "--out", str(p)]) == EXIT_OK
        assert paths[0].read_bytes() == paths[1].read_bytes()
        lines = paths[0].read_text().splitlines()
        assert lines[0] == ",".join(SCATTER_COLUMNS) and len(lines) == 7
        for line in lines[1:]:
            a, c, _, _, diff = map(float, line.split(","))
            assert diff == pytest.approx(a - c, abs=1e-11)

    def test_parallel_rows_keep_index_order(self):
        serial = scatter_rows("bell_diagonal", 9, seed=1)
        parallel = scatter_rows("bell_diagonal", 9, seed=1, jobs=2)
        assert serial == parallel


class TestGameAndVerify:
    def test_game_maximally_mixed(self, tmp_path):
        state = write_state(tmp_path / "mixed.json", np.eye(4) / 4)
        report = run_json(tmp_path, "game", "--state", str(state), "--na", "4", "--nb", "4", "--shots", "0")
        assert report["estimate"] == pytest.approx(0.5, abs=1e-12)
        assert report["accord_estimate"] == pytest.approx(0, abs=1e-11)
        assert report["empirical_distribution"] is None

    def test_verify_success(self, capsys):
        assert main(["verify", "--suite", "identities"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[PASS]" in out and "[FAIL]" not in out

    def test_verify_failure_exit_code(self, monkeypatch):
        monkeypatch.setattr("accord.cli.run_suite", lambda name, seed: [Check("x", False, "forced")])
        assert main(["verify"]) == EXIT_VERIFY_FAILED
