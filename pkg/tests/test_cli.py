import json

import pytest

from fracjl.cli import main
from fracjl.criticality import ProblemParams, classify
from fracjl.exponents import order_threshold


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassifyCommand:
    def test_subcritical_point(self, capsys):
        code, out, _ = run(capsys, "classify", "--N", "5", "--s", "0.5", "--l", "0", "--p", "3")
        assert code == 0
        assert "label=subcritical" in out
        assert "p_sobolev=" in out and "amplitude=" in out and "stable=false" in out

    def test_below_sobolev(self, capsys):
        code, out, _ = run(capsys, "classify", "--N", "3", "--s", "0.5", "--l", "0", "--p", "1.5")
        assert code == 0
        assert "label=subcritical" in out
        assert "margin=n/a" in out

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run(
            capsys, "classify", "--N", "3", "--s", "0.5", "--l", "-1.2", "--p", "2"
        )
        assert code == 2
        assert "l > -2s" in err

    def test_missing_parameter(self, capsys):
        code, _, err = run(capsys, "classify", "--N", "3", "--s", "0.5", "--l", "0")
        assert code == 2
        assert "requires" in err


class TestExponentsCommand:
    def test_all_subcritical_message(self, capsys):
        code, out, _ = run(capsys, "exponents", "--N", "5", "--s", "0.5", "--l", "0")
        assert code == 0
        assert "no critical exponent; every p > 1 is subcritical" in out

    def test_single_crossing(self, capsys):
        code, out, _ = run(capsys, "exponents", "--N", "11", "--s", "0.999", "--l", "0")
        assert code == 0
        assert "crossing 1:" in out
        assert "subcritical | supercritical" in out

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys, "exponents", "--N", "9", "--s", "0.3", "--l", "0", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["N"] == 9
        assert len(doc["crossings"]) == 1
        assert doc["intervals"] == ["subcritical", "supercritical"]


class TestThresholdsCommand:
    def test_order_threshold(self, capsys):
        code, out, _ = run(capsys, "thresholds", "--N", "8")
        assert code == 0
        assert "order_threshold" in out
        value = float(out.split("=")[1].split()[0])
        assert value == pytest.approx(order_threshold(8), abs=1e-12)

    def test_undefined_for_seven(self, capsys):
        code, _, err = run(capsys, "thresholds", "--N", "7")
        assert code == 2
        assert "N in {8, 9}" in err

    def test_min_dimension_query(self, capsys):
        code, out, _ = run(capsys, "thresholds", "--s", "0.5", "--l", "0")
        assert code == 0
        assert "min_supercritical_dimension = 9" in out

    def test_weight_thresholds_listed(self, capsys):
        code, out, _ = run(capsys, "thresholds", "--N", "8", "--s", "0.05")
        assert code == 0
        assert "weight_thresholds" in out

    def test_full_point_query(self, capsys):
        code, out, _ = run(capsys, "thresholds", "--N", "9", "--s", "0.3", "--l", "0")
        assert code == 0
        assert "order_threshold" in out
        assert "weight_thresholds" in out
        assert "min_supercritical_dimension" in out

    def test_order_window_negative_weight(self, capsys):
        code, out, _ = run(capsys, "thresholds", "--N", "3", "--l", "-0.5")
        assert code == 0
        assert "order_window" in out

    def test_no_arguments(self, capsys):
        code, _, err = run(capsys, "thresholds")
        assert code == 2


class TestScanCommand:
    def test_csv_to_stdout(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--N", "3", "--s", "0.5", "--l", "0", "--p", "1.2:8:5"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "p,N,s,l,label,margin"
        assert len(lines) == 6

    def test_out_file_written_atomically(self, capsys, tmp_path):
        target = tmp_path / "phase.csv"
        code, _, _ = run(
            capsys,
            "scan", "--N", "8", "--l", "0",
            "--s", "0.1:0.9:3", "--p", "2:20:3",
            "--out", str(target),
        )
        assert code == 0
        text = target.read_text()
        assert text.splitlines()[0] == "s,p,N,l,label,margin"
        assert len(text.splitlines()) == 10
        assert [p.name for p in tmp_path.iterdir()] == ["phase.csv"]

    def test_grid_flag_sets_default_count(self, capsys):
        code, out, _ = run(
            capsys,
            "scan", "--N", "3", "--s", "0.5", "--l", "0", "--p", "1.2:8",
            "--grid", "4",
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 5

    def test_degenerate_scan_matches_classify(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--N", "5", "--s", "0.5", "--l", "0", "--p", "3"
        )
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        direct = classify(ProblemParams(5, 0.5, 0.0, 3.0))
        assert row[-2] == direct.label.value
        assert float(row[-1]) == direct.margin

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys,
            "scan", "--N", "8", "--l", "0", "--s", "0.1:0.9:2", "--p", "2:9:2",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["cells"]) == 4
        assert doc["meta"]["N"] == 8

    def test_missing_axis_parameter(self, capsys):
        code, _, err = run(capsys, "scan", "--N", "8", "--s", "0.5", "--l", "0")
        assert code == 2
        assert "--p" in err

    def test_bad_range_syntax(self, capsys):
        code, _, err = run(
            capsys, "scan", "--N", "8", "--s", "a:b", "--l", "0", "--p", "2"
        )
        assert code == 2


class TestConfig:
    def test_config_sets_defaults_and_flags_override(self, capsys, tmp_path):
        cfg = tmp_path / "fracjl.cfg"
        cfg.write_text("# scan defaults\ntol = 1e-3\ngrid = 3\n")
        code, out, _ = run(
            capsys,
            "scan", "--N", "3", "--s", "0.5", "--l", "0", "--p", "1.2:8",
            "--config", str(cfg),
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 4  # grid=3 from config
        code, out, _ = run(
            capsys,
            "scan", "--N", "3", "--s", "0.5", "--l", "0", "--p", "1.2:8",
            "--config", str(cfg), "--grid", "5",
        )
        assert len(out.strip().splitlines()) == 6  # flag wins

    def test_config_outdir(self, capsys, tmp_path):
        cfg = tmp_path / "fracjl.cfg"
        cfg.write_text(f"outdir = {tmp_path}\n")
        code, _, _ = run(
            capsys,
            "scan", "--N", "5", "--s", "0.5", "--l", "0", "--p", "3",
            "--config", str(cfg), "--out", "cell.csv",
        )
        assert code == 0
        assert (tmp_path / "cell.csv").exists()

    def test_unknown_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("colour = blue\n")
        code, _, err = run(
            capsys, "classify", "--N", "5", "--s", "0.5", "--l", "0", "--p", "3",
            "--config", str(cfg),
        )
        assert code == 2
        assert "unknown config key" in err


class TestDeterminism:
    def test_identical_invocations_byte_identical(self, capsys):
        argv = ["scan", "--N", "8", "--l", "0", "--s", "0.1:0.9:5", "--p", "2:30:5",
                "--format", "json"]
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2
