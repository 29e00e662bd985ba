import json

import pytest

from twobar.cli import main


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture
def scenario_file(tmp_path):
    doc = {
        "material1": {"mean": 5.0, "cov": 0.1, "eta": 0.0},
        "material2": {"mean": 5.0, "cov": 0.1, "eta": 0.0},
        "load": {"mean": 10.0, "cov": 0.3, "impact": 1.0},
        "latent": {"pL1": 0.001, "pL2": 0.001},
    }
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    return str(path)


class TestReproduceCommand:
    def test_reference_table_passes(self, tmp_path):
        out = tmp_path / "t2.csv"
        assert run_cli("--out", str(out), "reproduce", "2") == 0
        text = out.read_text()
        assert text.startswith("table,column,cell,")
        assert "c1,lam1," in text.replace("2,c1", "c1")
        assert (tmp_path / "t2.png").exists()

    def test_unknown_table_is_input_error(self, tmp_path):
        assert run_cli("--out", str(tmp_path / "x.csv"), "reproduce", "9") == 2

    def test_outputs_are_byte_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert run_cli("--out", str(a), "reproduce", "5") == 0
        assert run_cli("--out", str(b), "reproduce", "5") == 0
        assert a.read_bytes() == b.read_bytes()
        assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


class TestRoCommand:
    def test_with_config(self, tmp_path, scenario_file):
        out = tmp_path / "ro.csv"
        assert run_cli("--config", scenario_file, "--out", str(out), "ro") == 0
        lines = out.read_text().strip().splitlines()
        header = lines[0].split(",")
        best = dict(zip(header, lines[1].split(",")))
        assert float(best["lam1"]) == pytest.approx(1.110, abs=0.02)
        assert float(best["total"]) == pytest.approx(1.232, abs=0.01)

    def test_bad_config_is_input_error(self, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"material1": {"mean": 5, "cov": 0.1, "eta": 0}}))
        assert run_cli("--config", str(cfg), "ro") == 2
        cfg.write_text("{not json")
        assert run_cli("--config", str(cfg), "ro") == 2
        assert run_cli("--config", str(tmp_path / "missing.json"), "ro") == 2


class TestRbdoCommand:
    def test_frontier_and_figure(self, tmp_path, scenario_file):
        out = tmp_path / "rbdo.csv"
        code = run_cli("--config", scenario_file, "--out", str(out),
                       "rbdo", "--beta-t", "2.5", "--lam1-grid", "0:1.5:7")
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "lam1,lam2_required,beta_sys,feasible"
        assert len(lines) == 8
        assert (tmp_path / "rbdo.png").exists()

    def test_bad_grid_is_input_error(self, scenario_file):
        assert run_cli("--config", scenario_file, "rbdo", "--beta-t", "2.5",
                       "--lam1-grid", "nonsense") == 2


class TestContourCommand:
    def test_grid_output(self, tmp_path, scenario_file):
        out = tmp_path / "grid.csv"
        code = run_cli("--config", scenario_file, "--out", str(out), "contour",
                       "--quantity", "ro_total", "--lam1", "0.8:1.4:0.2",
                       "--lam2", "0.8:1.4:0.2")
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "lam1,lam2,value"
        assert len(lines) == 1 + 16
        assert (tmp_path / "grid.png").exists()

    def test_no_plot_flag(self, tmp_path, scenario_file):
        out = tmp_path / "grid.csv"
        code = run_cli("--config", scenario_file, "--out", str(out), "--no-plot",
                       "contour", "--lam1", "0:1:0.5", "--lam2", "0:1:0.5")
        assert code == 0
        assert not (tmp_path / "grid.png").exists()

    def test_oversized_grid_is_input_error(self, tmp_path, scenario_file):
        assert run_cli("--config", scenario_file, "--out", str(tmp_path / "g.csv"),
                       "contour", "--lam1", "0:1000:0.001", "--lam2", "0:1000:0.001") == 2


class TestValidateCommand:
    def test_single_case(self, tmp_path, scenario_file):
        out = tmp_path / "val.csv"
        code = run_cli("--config", scenario_file, "--out", str(out), "--seed", "42",
                       "validate", "--n", "200000", "--design", "1.11,1.11")
        assert code == 0
        text = out.read_text()
        assert text.startswith("case,quantity,closed_form,simulated,")
        assert "known" in text or "pass" in text
        assert (tmp_path / "val.png").exists()

    def test_sweep_command(self, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({"axes": {"fi": [1.0, 1.3]}, "mode": "ro"}))
        out = tmp_path / "sweep.csv"
        assert run_cli("--out", str(out), "sweep", "--spec", str(spec)) == 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 3
