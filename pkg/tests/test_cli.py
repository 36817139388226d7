import json
import math

import pytest

from twomode.cli import EXIT_OK, EXIT_UNPHYSICAL, EXIT_USAGE, main

R_53 = 0.5 * math.acosh(5.0 / 3.0)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMeasure:
    def test_squeezed_state_report(self, capsys):
        code, out, _ = run(capsys, "measure", "--squeezed-r", str(R_53))
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["spectrum"]["nu_tilde_minus"] == pytest.approx(1 / 3, abs=1e-12)
        assert report["negativity"]["log_negativity"] == pytest.approx(math.log2(3.0), abs=1e-12)
        assert report["negativity"]["eof_symmetric"] == pytest.approx(1.0817041659455104, abs=1e-8)
        assert report["gaussian_em"]["gaussian_eof"] == pytest.approx(1.0817041659455104, abs=1e-8)
        assert report["purities"]["global"] == pytest.approx(1.0, abs=1e-9)

    def test_vacuum_has_no_entanglement(self, capsys, tmp_path):
        path = tmp_path / "vacuum.json"
        path.write_text(json.dumps({"cm": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}))
        code, out, _ = run(capsys, "measure", str(path))
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["negativity"]["separable"] is True
        assert report["negativity"]["negativity"] == 0.0
        assert report["gaussian_em"]["m_opt"] == 1.0
        assert report["gaussian_em"]["gaussian_eof"] == 0.0

    def test_standard_form_input(self, capsys, tmp_path):
        path = tmp_path / "sf.json"
        path.write_text(json.dumps({"standard_form": {
            "a": 2.0, "b": 1.5, "c_plus": 1.1, "c_minus": -1.1}}))
        code, out, _ = run(capsys, "measure", str(path))
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["standard_form"]["a"] == pytest.approx(2.0, rel=1e-12)

    def test_params_input_reports_closed_form(self, capsys):
        code, out, _ = run(capsys, "measure", "--params", "2", "0.5", "2.5", "1")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["closed_form"]["family"] == "gmems"
        closed = report["closed_form"]["m_opt"]
        assert closed == pytest.approx(1.0929752066115703, rel=1e-10)
        assert report["gaussian_em"]["m_opt"] == pytest.approx(closed, rel=1e-8)

    def test_glems_params(self, capsys):
        code, out, _ = run(capsys, "measure", "--params", "2", "0.5", "2.5", "-1")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["closed_form"]["family"] == "glems"
        assert report["closed_form"]["m_opt"] == pytest.approx(1.0551972518870598, rel=1e-10)

    def test_log_base_e(self, capsys):
        code, out, _ = run(capsys, "measure", "--squeezed-r", str(R_53), "--log-base", "e")
        report = json.loads(out)
        assert report["negativity"]["log_negativity"] == pytest.approx(math.log(3.0), abs=1e-12)

    def test_unphysical_input_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"cm": [[0.5 if i == j else 0 for j in range(4)] for i in range(4)]}))
        code, _, err = run(capsys, "measure", str(path))
        assert code == EXIT_UNPHYSICAL
        assert "Det sigma" in err or "purity" in err

    def test_asymmetric_matrix_exits_2_with_diagnostic(self, capsys, tmp_path):
        path = tmp_path / "asym.json"
        cm = [[1, 0.3, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        path.write_text(json.dumps({"cm": cm}))
        code, _, err = run(capsys, "measure", str(path))
        assert code == EXIT_UNPHYSICAL
        assert "symmetric" in err

    def test_invalid_json_exits_64(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "measure", str(path))
        assert code == EXIT_USAGE
        assert "invalid JSON" in err

    def test_unbuildable_params_exit_2(self, capsys):
        code, _, err = run(capsys, "measure", "--params", "2", "0.5", "1.5", "1")
        assert code == EXIT_UNPHYSICAL
        assert "g >= 2|d| + 1" in err

    def test_conflicting_inputs_exit_64(self, capsys):
        code, _, _ = run(capsys, "measure", "--squeezed-r", "0.3", "--params", "2", "0", "1.5", "0")
        assert code == EXIT_USAGE

    def test_unknown_flag_exits_64(self):
        with pytest.raises(SystemExit) as info:
            main(["measure", "--nonsense"])
        assert info.value.code == EXIT_USAGE


class TestScan:
    def test_small_slice(self, capsys, tmp_path):
        grid = tmp_path / "grid.csv"
        boundary = tmp_path / "boundary.csv"
        code, out, _ = run(
            capsys, "scan", "--fixed-a", "5", "--b-range", "1", "5",
            "--g-range", "1", "9", "--resolution", "24",
            "--grid", str(grid), "--boundary", str(boundary),
        )
        assert code == EXIT_OK
        summary = json.loads(out)
        assert summary["cells"] == 24 * 24
        assert set(summary["regimes"]) == {
            "unphysical", "both_separable", "coexistence",
            "ordering_preserved", "ordering_inverted",
        }
        header = grid.read_text().splitlines()[0]
        assert header == "s,d,g,m_gmems,m_glems,nu_tilde_gmems,nu_tilde_glems,regime"
        assert boundary.read_text().splitlines()[0] == "s,d,g_boundary"

    def test_scan3d_emits_files(self, capsys, tmp_path):
        grid = tmp_path / "grid3d.csv"
        boundary = tmp_path / "b3d.csv"
        code, out, _ = run(
            capsys, "scan3d", "--s-range", "1.5", "4", "--d-range", "-1", "1",
            "--g-range", "1", "7", "--resolution", "8",
            "--grid", str(grid), "--boundary", str(boundary),
        )
        assert code == EXIT_OK
        assert json.loads(out)["cells"] == 8**3
        assert len(grid.read_text().splitlines()) == 8**3 + 1


class TestBounds:
    def test_small_run_summary(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "bounds", "--samples", "40", "--seed", "3",
            "--points", str(tmp_path / "p.csv"), "--curves", str(tmp_path / "c.csv"),
        )
        assert code == EXIT_OK
        summary = json.loads(out)
        assert summary["violations_42"] == 0
        assert summary["numerical_failures"] == 0

    def test_byte_identical_reruns(self, capsys, tmp_path):
        for tag in ("one", "two"):
            code, _, _ = run(
                capsys, "bounds", "--samples", "25", "--seed", "77",
                "--points", str(tmp_path / f"{tag}.csv"),
                "--curves", str(tmp_path / f"c_{tag}.csv"),
                "--summary", str(tmp_path / f"s_{tag}.json"),
            )
            assert code == EXIT_OK
        assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()
        assert (tmp_path / "s_one.json").read_bytes() == (tmp_path / "s_two.json").read_bytes()

    def test_strict_mode_passes_clean_run(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "bounds", "--samples", "25", "--seed", "5", "--strict",
            "--points", str(tmp_path / "p.csv"), "--curves", str(tmp_path / "c.csv"),
        )
        assert code == EXIT_OK

    def test_seed_from_environment(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("TWOMODE_SEED", "77")
        code, _, _ = run(
            capsys, "bounds", "--samples", "25",
            "--points", str(tmp_path / "env.csv"), "--curves", str(tmp_path / "c.csv"),
            "--summary", str(tmp_path / "s_env.json"),
        )
        assert code == EXIT_OK
        assert json.loads((tmp_path / "s_env.json").read_text())["seed"] == 77

    def test_geof_curves_file(self, capsys, tmp_path):
        path = tmp_path / "geof.csv"
        code, _, _ = run(
            capsys, "bounds", "--samples", "10", "--seed", "1",
            "--points", str(tmp_path / "p.csv"), "--curves", str(tmp_path / "c.csv"),
            "--geof-curves", str(path), "--curve-resolution", "32",
        )
        assert code == EXIT_OK
        lines = path.read_text().splitlines()
        assert lines[0] == "log_neg,geof_lower,geof_upper"
        for line in lines[1:]:
            _, lo, hi = (float(x) for x in line.split(","))
            assert lo <= hi
