import csv
import io
import json

import pytest

from flowauction.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, data = rows[0], [r for r in rows[1:] if r and not r[0].startswith("#")]
    return header, data


class TestSolve:
    def test_all_upfront(self, capsys):
        code, out, _ = run(capsys, "solve", "--dist", "uniform:0,1", "--strike", "0.5", "--alpha", "1")
        assert code == 0
        header, data = parse_csv(out)
        assert header == [
            "alpha", "b_star", "threshold", "p_exec", "effective_spread",
            "revenue", "residual", "status",
        ]
        row = dict(zip(header, data[0]))
        assert float(row["b_star"]) == pytest.approx(0.125, abs=1e-9)
        assert float(row["p_exec"]) == pytest.approx(0.5, abs=1e-9)
        assert float(row["revenue"]) == pytest.approx(0.125, abs=1e-9)
        assert row["status"] == "interior_root"

    def test_all_contingent_boundary(self, capsys):
        code, out, _ = run(capsys, "solve", "--dist", "uniform:0,1", "--strike", "0.5", "--alpha", "0")
        assert code == 0
        header, data = parse_csv(out)
        row = dict(zip(header, data[0]))
        assert float(row["b_star"]) == 0.5
        assert float(row["p_exec"]) == 0.0
        assert float(row["revenue"]) == 0.0
        assert row["effective_spread"] == ""  # undefined over a null event
        assert row["status"] == "boundary_full_erosion"

    def test_strike_above_support_exits_2(self, capsys):
        code, _, err = run(capsys, "solve", "--dist", "uniform:0,1", "--strike", "1.5", "--alpha", "0.5")
        assert code == 2
        assert "error" in err

    def test_missing_alpha_exits_2(self, capsys):
        code, _, _ = run(capsys, "solve", "--dist", "uniform:0,1")
        assert code == 2

    def test_bad_dist_exits_2(self, capsys):
        code, _, _ = run(capsys, "solve", "--dist", "cauchy:0,1", "--alpha", "0.5")
        assert code == 2

    def test_json_object(self, capsys):
        code, out, _ = run(capsys, "solve", "--alpha", "0.25", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["b_star"] == pytest.approx(2 / 9, abs=1e-9)
        assert json.dumps(obj, indent=2) + "\n" == out


class TestSweep:
    def test_default_grid(self, capsys):
        code, out, _ = run(capsys, "sweep")
        assert code == 0
        header, data = parse_csv(out)
        assert len(data) == 101
        alphas = [float(r[0]) for r in data]
        assert alphas == sorted(alphas)
        assert alphas[0] == 0.0 and alphas[-1] == 1.0

    def test_monotone_columns(self, capsys):
        _, out, _ = run(capsys, "sweep")
        header, data = parse_csv(out)
        idx = {name: i for i, name in enumerate(header)}
        p_exec = [float(r[idx["p_exec"]]) for r in data]
        rev = [float(r[idx["revenue"]]) for r in data]
        spread = [float(r[idx["effective_spread"]]) for r in data if r[idx["effective_spread"]]]
        assert all(b >= a - 1e-9 for a, b in zip(p_exec, p_exec[1:]))
        assert all(b >= a - 1e-9 for a, b in zip(rev, rev[1:]))
        assert all(b <= a + 1e-9 for a, b in zip(spread, spread[1:]))

    def test_figure2_row_count_and_dist_column(self, capsys):
        code, out, _ = run(capsys, "sweep", "--figure2", "--alpha-grid", "0,1,11")
        assert code == 0
        header, data = parse_csv(out)
        assert header[0] == "dist"
        assert len(data) == 4 * 11
        assert {r[0] for r in data} == {"beta:2,2", "beta:2,5", "beta:5,2", "beta:0.5,0.5"}

    def test_multiple_dists_add_label(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--dist", "uniform:0,1", "--dist", "beta:2,2", "--alpha-grid", "0,1,5"
        )
        assert code == 0
        header, data = parse_csv(out)
        assert header[0] == "dist" and len(data) == 10

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "sweep", "--alpha-grid", "0,1,7", "--format", "json")
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) + "\n" == out

    def test_bad_grid_exits_2(self, capsys):
        assert run(capsys, "sweep", "--alpha-grid", "0,1,1")[0] == 2
        assert run(capsys, "sweep", "--alpha-grid", "0,2,11")[0] == 2
        assert run(capsys, "sweep", "--alpha-grid", "nope")[0] == 2


class TestSimulate:
    ARGS = (
        "simulate", "--dist", "uniform:0,1", "--strike", "0.5",
        "--alpha", "0.25", "--n", "200000", "--seed", "42",
    )

    def test_z_scores_small_at_equilibrium(self, capsys):
        code, out, _ = run(capsys, *self.ARGS)
        assert code == 0
        header, data = parse_csv(out)
        row = dict(zip(header, data[0]))
        assert float(row["bid"]) == pytest.approx(2 / 9, abs=1e-9)
        for col in ("z_utility", "z_exec", "z_revenue", "z_spread"):
            assert abs(float(row[col])) <= 4.0

    def test_empty_execution_region_exact(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "--dist", "uniform:0,1", "--strike", "0.5",
            "--alpha", "0.5", "--bid", "1.2", "--n", "50000",
        )
        assert code == 0
        header, data = parse_csv(out)
        row = dict(zip(header, data[0]))
        assert float(row["exec_rate"]) == 0.0
        assert float(row["mean_utility"]) == -0.6
        assert row["mean_spread_given_exec"] == ""

    def test_byte_identical_reruns(self, capsys):
        _, out1, _ = run(capsys, *self.ARGS)
        _, out2, _ = run(capsys, *self.ARGS)
        assert out1 == out2

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--format", "json")
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) + "\n" == out


class TestCompareOracle:
    def test_reports_divergence(self, capsys):
        code, out, _ = run(capsys, "compare-oracle", "--alpha-grid", "0,1,5")
        assert code == 0
        header, data = parse_csv(out)
        first = dict(zip(header, data[0]))
        last = dict(zip(header, data[-1]))
        assert float(first["corrected_bid"]) == float(first["published_bid"]) == 0.5
        assert float(last["published_bid"]) == 0.25
        assert float(last["corrected_bid"]) == 0.125
        assert abs(float(last["numeric_bid"]) - 0.125) <= 1e-9
        footer = out.strip().splitlines()[-1]
        assert footer.startswith("# max_abs_corrected_minus_numeric=")
        assert "max_abs_published_minus_numeric=0.125" in footer

    def test_rejects_dist_override(self, capsys):
        code, _, err = run(capsys, "compare-oracle", "--dist", "beta:2,2")
        assert code == 2
        assert "fixed" in err

    def test_rejects_strike_override(self, capsys):
        assert run(capsys, "compare-oracle", "--strike", "0.4")[0] == 2

    def test_allows_matching_values(self, capsys):
        code, _, _ = run(
            capsys, "compare-oracle", "--dist", "uniform:0,1", "--strike", "0.5",
            "--alpha-grid", "0,1,3",
        )
        assert code == 0

    def test_json_summary(self, capsys):
        code, out, _ = run(capsys, "compare-oracle", "--alpha-grid", "0,1,5", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["max_abs_corrected_minus_numeric"] <= 1e-9
        assert obj["max_abs_published_minus_numeric"] == pytest.approx(0.125, abs=1e-9)


class TestConfigAndOutput:
    def test_output_file_matches_stdout(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code = main(["sweep", "--alpha-grid", "0,1,5", "--output", str(path)])
        assert code == 0
        _, stdout_text, _ = run(capsys, "sweep", "--alpha-grid", "0,1,5")
        assert path.read_bytes() == stdout_text.encode()

    def test_config_file_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("strike = 0.25\nformat = json\ndist = uniform:0,1\n")
        code, out, _ = run(capsys, "solve", "--alpha", "1", "--config", str(cfg))
        assert code == 0
        obj = json.loads(out)
        # E max(S - 1/4, 0) for U[0,1] is (3/4)^2 / 2
        assert obj["b_star"] == pytest.approx(0.28125, abs=1e-9)

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("strike = 0.25\n")
        code, out, _ = run(capsys, "solve", "--alpha", "1", "--strike", "0.5", "--config", str(cfg))
        assert code == 0
        _, data = parse_csv(out)
        assert float(data[0][1]) == pytest.approx(0.125, abs=1e-9)

    def test_unknown_config_key_exits_2(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("strik = 0.25\n")
        assert run(capsys, "solve", "--alpha", "1", "--config", str(cfg))[0] == 2

    def test_bad_config_value_exits_2(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("strike = half\n")
        assert run(capsys, "solve", "--alpha", "1", "--config", str(cfg))[0] == 2

    def test_missing_config_file_exits_2(self, capsys):
        assert run(capsys, "solve", "--alpha", "1", "--config", "/nonexistent.cfg")[0] == 2

    def test_figure2_outside_sweep_exits_2(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("figure2 = true\n")
        assert run(capsys, "solve", "--alpha", "1", "--config", str(cfg))[0] == 2
