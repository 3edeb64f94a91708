import csv
import json

import pytest
from click.testing import CliRunner

from degres import (
    GeneratorConfig,
    MetricConfig,
    PortfolioConfig,
    generate_instance,
    generate_portfolio,
    layered_fixture,
    seven_node_fixture,
)
from degres import io as dio
from degres.cli import main
from degres.sweep import SweepConfig, run_sweep


@pytest.fixture
def runner():
    return CliRunner()


def manifest():
    return dio.RunManifest(timestamp="2026-01-01T00:00:00+00:00", master_seed=1)


class TestSerialization:
    def test_instance_round_trip_identity(self, tmp_path):
        for build in (seven_node_fixture, layered_fixture):
            inst = build()
            path = tmp_path / f"{build.__name__}.json"
            dio.save_instance(inst, path, manifest())
            loaded, mf = dio.load_instance(path)
            assert loaded == inst
            assert loaded.dissimilarity == inst.dissimilarity
            assert mf["master_seed"] == 1

    def test_generated_instance_round_trip(self, tmp_path):
        inst = generate_instance(GeneratorConfig(seed=9, element_count=14))
        path = tmp_path / "gen.json"
        dio.save_instance(inst, path)
        loaded, _ = dio.load_instance(path)
        assert loaded == inst

    def test_portfolio_round_trip(self, tmp_path):
        portfolio = generate_portfolio(PortfolioConfig(seed=4, count=7))
        path = tmp_path / "p.json"
        dio.save_portfolio(portfolio, path, manifest())
        loaded, _ = dio.load_portfolio(path)
        assert loaded == portfolio

    def test_kind_checked(self, tmp_path):
        inst = seven_node_fixture()
        path = tmp_path / "i.json"
        dio.save_instance(inst, path)
        with pytest.raises(Exception, match="not a portfolio"):
            dio.load_portfolio(path)

    def test_csv_values_parse_back_exactly(self, tmp_path):
        inst = seven_node_fixture()
        result = run_sweep(
            inst,
            SweepConfig(q_list=(0.0, 0.1, 0.3), trials=3, seed=5, target="fss", function_id="F1"),
            MetricConfig(),
        )
        path = tmp_path / "s.csv"
        dio.write_sweep_csv(result, path)
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 6  # 3 q values x 2 metric variants
        for row in rows:
            agg = result.aggregate(row["metric"], float(row["q"]))
            assert float(row["mean"]) == agg.mean
            assert float(row["std"]) == agg.std

    def test_merge_preserves_rows_verbatim(self, tmp_path):
        inst = seven_node_fixture()
        result = run_sweep(
            inst,
            SweepConfig(q_list=(0.0, 0.2), trials=2, seed=5, target="fss", function_id="F1"),
            MetricConfig(),
        )
        a, b, out = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "m.csv"
        dio.write_sweep_csv(result, a)
        dio.write_sweep_csv(result, b)
        count = dio.merge_sweep_csvs([a, b], out)
        lines_a = a.read_text().splitlines()
        merged = out.read_text().splitlines()
        assert count == 2 * (len(lines_a) - 1)
        assert merged[0] == lines_a[0]
        assert merged[1:] == lines_a[1:] + lines_a[1:]

    def test_config_file_sections(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text("metric:\n  delta: 0.6\n  weight_mode: availability\n")
        sections = dio.load_config_file(path)
        cfg = MetricConfig.from_dict(sections["metric"])
        assert cfg.delta == 0.6

    def test_unknown_config_section_named(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text("metrics:\n  delta: 0.6\n")
        with pytest.raises(Exception, match="metrics"):
            dio.load_config_file(path)


class TestCli:
    def test_generate_and_metrics(self, runner, tmp_path):
        inst_path = tmp_path / "inst.json"
        res = runner.invoke(
            main, ["generate", "instance", "--seed", "3", "--elements", "12", "-o", str(inst_path)]
        )
        assert res.exit_code == 0, res.output
        res = runner.invoke(main, ["fss", str(inst_path), "--function", "F1"])
        assert res.exit_code == 0
        assert "FSS(F1)" in res.output
        res = runner.invoke(main, ["mldi", str(inst_path), "-o", str(tmp_path / "m.json")])
        assert res.exit_code == 0
        payload = json.loads((tmp_path / "m.json").read_text())
        assert payload["kind"] == "mldi_report"
        assert payload["manifest"]["tool_version"]

    def test_fss_all_functions_by_default(self, runner, tmp_path):
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "seven-node", "-o", str(inst_path)])
        res = runner.invoke(main, ["fss", str(inst_path)])
        assert res.exit_code == 0
        for fid in ("F1", "F2", "F3"):
            assert f"FSS({fid})" in res.output
        # report written by default next to the input
        payload = json.loads((tmp_path / "inst.fss.json").read_text())
        assert payload["kind"] == "fss_report"
        assert len(payload["reports"]) == 3

    def test_fss_summary_reports_zero_for_clones(self, runner, tmp_path):
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "redundancy", "-o", str(inst_path)])
        res = runner.invoke(main, ["fss", str(inst_path), "--function", "F1"])
        assert res.exit_code == 0
        assert "FSS(F1): baseline=0.000000" in res.output

    def test_arq_fixture_and_heatmap(self, runner, tmp_path):
        port_path = tmp_path / "port.json"
        res = runner.invoke(
            main, ["generate", "portfolio", "--fixture", "five-algorithm", "-o", str(port_path)]
        )
        assert res.exit_code == 0
        heat = tmp_path / "heat.csv"
        res = runner.invoke(
            main,
            ["arq", str(port_path), "--epsilon", "1.0", "--delta", "0.5", "--sigma", "1.0",
             "--heatmap-csv", str(heat)],
        )
        assert res.exit_code == 0
        assert "hard=0.000000" in res.output
        with open(heat, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 2 * 5 * 5  # kernel + separation, 5x5 each
        assert {r["table"] for r in rows} == {"kernel", "separation"}

    def test_sweep_writes_table_one_shape(self, runner, tmp_path):
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "seven-node", "-o", str(inst_path)])
        res = runner.invoke(
            main,
            ["sweep", str(inst_path), "--target", "fss", "--function", "F1", "--seed", "11",
             "--timestamp", "T", "-o", str(tmp_path / "out")],
        )
        assert res.exit_code == 0, res.output
        with open(tmp_path / "out.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 14  # 7 q rows per score variant
        assert {r["metric"] for r in rows} == {"fss_baseline", "fss_weighted"}
        assert all(r["target"] == "F1" and r["trials"] == "10" for r in rows)
        detail = json.loads((tmp_path / "out.json").read_text())
        assert detail["manifest"]["sweep"]["seed"] == 11
        assert len(detail["records"]) == 70

    def test_report_merges(self, runner, tmp_path):
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "seven-node", "-o", str(inst_path)])
        for name in ("a", "b"):
            runner.invoke(
                main,
                ["sweep", str(inst_path), "--target", "fss", "--function", "F1", "--seed", "11",
                 "--timestamp", "T", "-o", str(tmp_path / name)],
            )
        res = runner.invoke(
            main,
            ["report", str(tmp_path / "a.csv"), str(tmp_path / "b.csv"), "-o", str(tmp_path / "m.csv")],
        )
        assert res.exit_code == 0
        merged = (tmp_path / "m.csv").read_text().splitlines()
        single = (tmp_path / "a.csv").read_text().splitlines()
        assert len(merged) - 1 == 2 * (len(single) - 1)
        assert merged[1:] == single[1:] + single[1:]

    def test_malformed_config_exits_one_with_key(self, runner, tmp_path):
        cfg = tmp_path / "c.yaml"
        cfg.write_text("metric:\n  delta: 0.5\n  bogus_knob: 1\n")
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "seven-node", "-o", str(inst_path)])
        res = runner.invoke(main, ["fss", str(inst_path), "--config", str(cfg)])
        assert res.exit_code == 1
        assert "bogus_knob" in res.output

    def test_missing_file_exits_two(self, runner, tmp_path):
        res = runner.invoke(main, ["fss", str(tmp_path / "nope.json")])
        assert res.exit_code == 2

    def test_validation_error_exits_one(self, runner, tmp_path):
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "seven-node", "-o", str(inst_path)])
        res = runner.invoke(main, ["fss", str(inst_path), "--function", "F9"])
        assert res.exit_code == 1
        assert "unknown function" in res.output

    def test_env_var_config_path(self, runner, tmp_path):
        cfg = tmp_path / "c.yaml"
        cfg.write_text("metric:\n  delta: 0.9\n")
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "redundancy", "-o", str(inst_path)])
        res = runner.invoke(
            main, ["fss", str(inst_path), "--function", "F3"], env={"DEGRES_CONFIG": str(cfg)}
        )
        assert res.exit_code == 0
        # delta 0.9 from the env-var config sits above every F3 pair gap;
        # the built-in default 0.5 would report 1.0 instead
        assert "baseline=0.000000" in res.output

    def test_flags_override_config_file(self, runner, tmp_path):
        cfg = tmp_path / "c.yaml"
        cfg.write_text("metric:\n  delta: 0.9\n")
        inst_path = tmp_path / "inst.json"
        runner.invoke(main, ["generate", "instance", "--fixture", "redundancy", "-o", str(inst_path)])
        res = runner.invoke(
            main,
            ["fss", str(inst_path), "--function", "F3", "--config", str(cfg), "--delta", "0.5"],
        )
        assert res.exit_code == 0
        assert "baseline=1.000000" in res.output
