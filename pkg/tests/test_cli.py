"""End-to-end tests for the command-line interface."""

import json

import pytest

from affiliation.cli import main, parse_event_json, parse_label_csv

WORKED_CSV = """timestamp,gt,pred
10800,1,0
10920,1,0
11100,1,1
11160,1,0
11220,1,1
11400,0,0
11460,0,1
11520,0,0
"""


@pytest.fixture()
def worked_csv(tmp_path):
    path = tmp_path / "worked.csv"
    path.write_text(WORKED_CSV)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEvaluateCsv:
    def test_worked_example_report(self, worked_csv, capsys):
        code, out, err = run_cli(capsys, "evaluate", worked_csv, "--t-last", "11580")
        assert code == 0, err
        doc = json.loads(out)
        assert doc["n_events"] == 1
        assert doc["s_size"] == 1
        zone = doc["zones"][0]
        assert zone["gt"] == [10800, 11400]
        assert zone["d_precision_s"] == pytest.approx(18.0)
        assert zone["d_recall_s"] == pytest.approx(76.5)
        assert 0.0 <= zone["p_precision"] <= 1.0
        assert 0.0 <= zone["p_recall"] <= 1.0

    def test_byte_identical_reruns(self, worked_csv, capsys):
        _, out1, _ = run_cli(capsys, "evaluate", worked_csv)
        _, out2, _ = run_cli(capsys, "evaluate", worked_csv)
        assert out1 == out2
        _, with_oracle1, _ = run_cli(
            capsys, "evaluate", worked_csv, "--oracle", "--seed", "7"
        )
        _, with_oracle2, _ = run_cli(
            capsys, "evaluate", worked_csv, "--oracle", "--seed", "7"
        )
        assert with_oracle1 == with_oracle2

    def test_output_file(self, worked_csv, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "evaluate", worked_csv, "--output", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["n_events"] == 1

    def test_table_rendering(self, worked_csv, capsys):
        code, out, _ = run_cli(capsys, "evaluate", worked_csv, "--table")
        assert code == 0
        assert "P_prec" in out and "precision=" in out

    def test_oracle_columns(self, worked_csv, capsys):
        code, out, _ = run_cli(
            capsys, "evaluate", worked_csv, "--oracle", "--t-last", "11580"
        )
        assert code == 0
        zone = json.loads(out)["zones"][0]
        assert zone["p_precision_oracle"] == pytest.approx(zone["p_precision"], abs=1e-4)
        assert zone["p_recall_oracle"] == pytest.approx(zone["p_recall"], abs=1e-4)

    def test_bad_header_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("time,gt,pred\n1,0,0\n")
        code, _, err = run_cli(capsys, "evaluate", str(path))
        assert code == 1
        assert "time,gt,pred" in err

    def test_duplicate_timestamp_reports_line(self, tmp_path, capsys):
        path = tmp_path / "dup.csv"
        path.write_text("timestamp,gt,pred\n1,1,0\n1,0,1\n2,0,0\n")
        code, _, err = run_cli(capsys, "evaluate", str(path))
        assert code == 1
        assert "line 3" in err

    def test_non_binary_label_reports_line(self, tmp_path, capsys):
        path = tmp_path / "lab.csv"
        path.write_text("timestamp,gt,pred\n1,1,0\n2,2,0\n")
        code, _, err = run_cli(capsys, "evaluate", str(path))
        assert code == 1
        assert "line 3" in err and "gt" in err

    def test_empty_ground_truth_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "nogt.csv"
        path.write_text("timestamp,gt,pred\n1,0,1\n2,0,0\n")
        code, _, err = run_cli(capsys, "evaluate", str(path))
        assert code == 1

    def test_missing_file_is_input_error(self, capsys):
        code, _, err = run_cli(capsys, "evaluate", "/nonexistent/file.csv")
        assert code == 1
        assert "error:" in err


class TestEvaluateJson:
    def test_minimal_document(self, tmp_path, capsys):
        path = tmp_path / "events.json"
        path.write_text(json.dumps({"gt": [[0, 10]], "pred": [[5, 6]], "range": [0, 60]}))
        code, out, _ = run_cli(capsys, "evaluate", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["precision"] == 1.0

    def test_pred_omitted_means_empty(self, tmp_path, capsys):
        path = tmp_path / "nopred.json"
        path.write_text(json.dumps({"gt": [[0, 10]], "range": [0, 60]}))
        code, out, _ = run_cli(capsys, "evaluate", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["precision"] == "NaN"
        assert doc["recall"] == 0.0
        assert doc["f1"] == "NaN"
        assert doc["zones"][0]["d_recall_s"] == "inf"

    def test_reversed_pair_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "rev.json"
        path.write_text(json.dumps({"gt": [[10, 0]], "range": [0, 60]}))
        code, _, err = run_cli(capsys, "evaluate", str(path))
        assert code == 1
        assert "gt[0]" in err

    def test_overlapping_gt_is_input_error(self, tmp_path, capsys):
        path = tmp_path / "ovl.json"
        path.write_text(
            json.dumps({"gt": [[0, 10], [5, 20]], "range": [0, 60]})
        )
        code, _, err = run_cli(capsys, "evaluate", str(path))
        assert code == 1

    def test_csv_and_json_agree(self, worked_csv, tmp_path, capsys):
        code, csv_out, _ = run_cli(
            capsys, "evaluate", worked_csv, "--t-last", "11580"
        )
        doc = json.dumps(
            {
                "gt": [[10800, 11400]],
                "pred": [[11100, 11160], [11220, 11400], [11460, 11520]],
                "range": [10800, 11580],
            }
        )
        path = tmp_path / "same.json"
        path.write_text(doc)
        code2, json_out, _ = run_cli(capsys, "evaluate", str(path))
        assert code == code2 == 0
        assert json.loads(csv_out) == json.loads(json_out)


class TestEvaluatePoints:
    def test_basic(self, tmp_path, capsys):
        path = tmp_path / "pts.json"
        path.write_text(json.dumps({"gt": [30.0], "pred": [40.0], "range": [0, 90]}))
        code, out, _ = run_cli(capsys, "evaluate-points", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["recall"] == pytest.approx(7 / 9)
        assert doc["zones"][0]["gt"] == 30.0

    def test_empty_gt_rejected(self, tmp_path, capsys):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"gt": [], "pred": [1.0], "range": [0, 9]}))
        code, _, err = run_cli(capsys, "evaluate-points", str(path))
        assert code == 1


class TestAdversary:
    def test_inline_labels(self, capsys):
        code, out, _ = run_cli(capsys, "adversary", "--labels", "0,0,1,1,1,1,0,0")
        assert code == 0
        assert out.strip() == "1,1,1,0,1,0,1,1"

    def test_file_input(self, tmp_path, capsys):
        path = tmp_path / "labels.txt"
        path.write_text("0\n1\n1\n0\n")
        code, out, _ = run_cli(capsys, "adversary", str(path))
        assert code == 0
        assert out.strip() == "1,1,0,1"

    def test_all_zero_is_input_error(self, capsys):
        code, _, err = run_cli(capsys, "adversary", "--labels", "0,0,0")
        assert code == 1

    def test_point_adjust_style(self, capsys):
        code, out, _ = run_cli(
            capsys, "adversary", "--labels", "0,0,1,1,0,0,0,0,0,0",
            "--style", "point-adjust", "--extra", "2",
        )
        assert code == 0
        labels = [int(v) for v in out.strip().split(",")]
        assert labels[2] == labels[3] == 1
        assert sum(labels) >= 3

    def test_bad_token_is_input_error(self, capsys):
        code, _, err = run_cli(capsys, "adversary", "--labels", "0,2,1")
        assert code == 1
        assert "2" in err


class TestTheory:
    def test_default_grid_emits_400_rows(self, capsys):
        code, out, _ = run_cli(capsys, "theory")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "p,position,precision,recall"
        assert len(lines) == 401

    def test_row_values(self, capsys):
        code, out, _ = run_cli(capsys, "theory", "--count", "5")
        lines = out.strip().splitlines()[1:]
        assert len(lines) == 20
        first = lines[0].split(",")
        assert first[0] == "0.2" and first[1] == "border"
        assert float(first[2]) == 0.0
        assert float(first[3]) == pytest.approx(0.05)


class TestConvert:
    def test_round_trip(self, worked_csv, tmp_path, capsys):
        code, out, _ = run_cli(capsys, "convert", worked_csv, "--t-last", "11580")
        assert code == 0
        doc = json.loads(out)
        assert doc["gt"] == [[10800, 11400]]
        assert doc["pred"] == [[11100, 11160], [11220, 11400], [11460, 11520]]
        assert doc["range"] == [10800, 11580]
        # The emitted document evaluates identically to the CSV.
        path = tmp_path / "converted.json"
        path.write_text(json.dumps(doc))
        _, out_csv, _ = run_cli(capsys, "evaluate", worked_csv, "--t-last", "11580")
        _, out_json, _ = run_cli(capsys, "evaluate", str(path))
        assert json.loads(out_csv) == json.loads(out_json)


class TestParsers:
    def test_parse_label_csv(self, worked_csv):
        gt, pred = parse_label_csv(worked_csv, t_last=11580)
        assert len(gt) == 8
        assert gt.timestamps[-1] == 11580
        assert pred.labels.tolist() == [0, 0, 1, 0, 1, 0, 1, 0]

    def test_parse_event_json(self, tmp_path):
        path = tmp_path / "doc.json"
        path.write_text(json.dumps({"gt": [[0, 1]], "pred": [], "range": [0, 2]}))
        gt, pred, rng = parse_event_json(str(path))
        assert len(gt) == 1 and pred.is_empty
        assert (rng.start, rng.stop) == (0.0, 2.0)
