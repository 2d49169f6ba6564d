import json
from fractions import Fraction

import pytest

from asymdep import (
    DiscreteMeasure,
    InputError,
    JointMeasure,
    SweepSpec,
    line_space,
    sweep,
)
from asymdep import io
from asymdep.cli import main
from asymdep.families import bernoulli_perturbation_family, random_joint

F = Fraction


# ---------------------------------------------------------------------------
# JSON round trips
# ---------------------------------------------------------------------------

def test_measure_json_round_trip_is_exact(tmp_path):
    s = line_space([0.0, 0.5, 1.0])
    m = DiscreteMeasure(s, (F(1, 3), F(1, 3), F(1, 3)))
    path = tmp_path / "m.json"
    io.save_measure(m, str(path))
    back = io.load_measure(str(path))
    assert isinstance(back, DiscreteMeasure)
    assert back.weights == m.weights
    assert list(back.space.labels) == list(s.labels)


def test_joint_json_round_trip_is_exact(tmp_path):
    j = random_joint(4, 3, 4)
    path = tmp_path / "j.json"
    io.save_measure(j, str(path))
    back = io.load_measure(str(path))
    assert isinstance(back, JointMeasure)
    assert back.weights == j.weights


def test_float_weights_renormalize_within_tolerance(tmp_path):
    s = line_space([0.0, 1.0, 2.0])
    d = io.measure_to_dict(DiscreteMeasure(s, (F(1, 3),) * 3))
    d["weights"] = [0.333333333, 0.333333333, 0.333333334]
    m = io.measure_from_dict(d)
    assert sum(m.weights) == 1


def test_badly_normalized_weights_are_rejected(tmp_path):
    s = line_space([0.0, 1.0])
    d = io.measure_to_dict(DiscreteMeasure(s, (F(1, 2), F(1, 2))))
    d["weights"] = [0.7, 0.7]
    with pytest.raises(InputError):
        io.measure_from_dict(d)


def test_malformed_json_raises_input_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        io.load_measure(str(path))


# ---------------------------------------------------------------------------
# CSV round trips
# ---------------------------------------------------------------------------

def test_report_csv_round_trip(tmp_path):
    report = sweep(SweepSpec("bernoulli_perturbation", (2, 3, 4, 5), ("rectangle", "prokhorov")))
    path = tmp_path / "report.csv"
    io.write_report_csv(report.rows, str(path))
    rows = io.read_report_csv(str(path))
    assert len(rows) == len(report.rows)
    by_key = {(r["n"], r["metric"]): r for r in rows}
    assert by_key[(2, "rectangle")]["value"] == F(1, 8)
    assert by_key[(2, "rectangle")]["exact"] is True
    assert by_key[(3, "prokhorov")]["exact"] is False


def test_plot_data_and_series_csv(tmp_path):
    report = sweep(SweepSpec("bernoulli_perturbation", (2, 3, 4, 5), ("prokhorov",)))
    path = tmp_path / "plot.csv"
    io.write_plot_data(report, str(path))
    lines = path.read_text().strip().splitlines()
    assert lines[0].split(",") == ["n", "prokhorov"]
    assert len(lines) == 5
    series = io.read_series_csv(str(path))
    assert [n for n, _ in series] == [2, 3, 4, 5]


def test_value_round_trip_formats():
    assert io.parse_value(io.value_to_str(F(3, 7), True)) == F(3, 7)
    assert io.parse_value(io.value_to_str(0.125, False)) == 0.125


# ---------------------------------------------------------------------------
# Command-line interface
# ---------------------------------------------------------------------------

def test_cli_gen_then_metrics(tmp_path, capsys):
    joint_path = tmp_path / "joint.json"
    assert main(["gen", "--family", "bernoulli_perturbation", "--n", "4",
                 "--out", str(joint_path)]) == 0
    assert joint_path.exists()
    back = io.load_measure(str(joint_path))
    assert back.weights == bernoulli_perturbation_family(4).joint.weights

    out_csv = tmp_path / "metrics.csv"
    code = main(["metrics", "--joint", str(joint_path),
                 "--select", "variation,alpha,cov_sup", "--out", str(out_csv)])
    assert code == 0
    printed = capsys.readouterr().out
    assert "variation: 1" in printed
    assert "alpha: 1/4" in printed
    rows = io.read_report_csv(str(out_csv))
    assert {r["metric"] for r in rows} == {"variation", "alpha", "cov_sup"}


def test_cli_missing_file_is_input_error(tmp_path, capsys):
    assert main(["metrics", "--joint", str(tmp_path / "nope.json")]) == 1
    assert "input error" in capsys.readouterr().err


def test_cli_malformed_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("[1, 2", encoding="utf-8")
    assert main(["metrics", "--joint", str(path)]) == 1


def test_cli_capability_cutoff_is_exit_code_two(tmp_path, capsys):
    joint_path = tmp_path / "joint.json"
    main(["gen", "--family", "binary_coding", "--n", "3", "--out", str(joint_path)])
    assert main(["metrics", "--joint", str(joint_path), "--select", "beta"]) == 2
    assert "capability error" in capsys.readouterr().err


def test_cli_sweep_and_classify(tmp_path, capsys):
    report_csv = tmp_path / "report.csv"
    plot_csv = tmp_path / "plot.csv"
    code = main([
        "sweep", "--family", "markov_shift", "--n-from", "1", "--n-to", "6",
        "--select", "alpha", "--param", "p=1/4",
        "--out", str(report_csv), "--emit-plot-data", str(plot_csv),
    ])
    assert code == 0
    printed = capsys.readouterr().out
    assert "CONVERGES" in printed
    assert report_csv.exists() and plot_csv.exists()

    assert main(["classify", "--in", str(plot_csv)]) == 0
    assert "CONVERGES" in capsys.readouterr().out


def test_cli_verify_filter_runs_single_criterion(capsys):
    assert main(["verify", "--filter", "matrix"]) == 0
    printed = capsys.readouterr().out
    assert "[PASS]" in printed
    assert "1/1 criteria passed" in printed


def test_cli_rejects_unknown_metric(tmp_path, capsys):
    joint_path = tmp_path / "joint.json"
    main(["gen", "--family", "bernoulli_perturbation", "--n", "2", "--out", str(joint_path)])
    assert main(["metrics", "--joint", str(joint_path), "--select", "entropy"]) == 1
