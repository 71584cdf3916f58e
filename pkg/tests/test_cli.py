import json
import os
import subprocess
import sys

import numpy as np
import pytest

from moisttex.cli import main
from moisttex.data import read_feature_csv


@pytest.fixture(scope="module")
def scenario_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("scenario")
    rc = main(["synth", "--out", str(out), "--shift", "strong",
               "--per-class", "10", "--seed", "11", "--size", "32"])
    assert rc == 0
    return out


@pytest.fixture(scope="module")
def source_csv(scenario_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("feat") / "source.csv"
    rc = main(["extract", "--images", str(scenario_dir / "source"),
               "--labels", str(scenario_dir / "source" / "labels.csv"),
               "--family", "haralick", "--out", str(out)])
    assert rc == 0
    return out


@pytest.fixture(scope="module")
def target_csv(scenario_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("feat") / "target.csv"
    rc = main(["extract", "--images", str(scenario_dir / "target"),
               "--labels", str(scenario_dir / "target" / "labels.csv"),
               "--family", "haralick", "--out", str(out)])
    assert rc == 0
    return out


class TestSynthCommand:
    def test_counts(self, scenario_dir):
        pngs = list(scenario_dir.rglob("*.png"))
        csvs = list(scenario_dir.rglob("labels.csv"))
        assert len(pngs) == 60  # 2 domains x 3 classes x 10
        assert len(csvs) == 2

    def test_repeat_is_byte_identical(self, scenario_dir, tmp_path):
        rc = main(["synth", "--out", str(tmp_path), "--shift", "strong",
                   "--per-class", "10", "--seed", "11", "--size", "32"])
        assert rc == 0
        for rel in sorted(p.relative_to(scenario_dir)
                          for p in scenario_dir.rglob("*") if p.is_file()):
            assert (tmp_path / rel).read_bytes() == (scenario_dir / rel).read_bytes()

    def test_missing_out_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["synth", "--shift", "none"])
        assert exc.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_bad_per_class_is_usage_error(self, tmp_path):
        rc = main(["synth", "--out", str(tmp_path), "--per-class", "3"])
        assert rc == 2


class TestExtractCommand:
    def test_haralick_column_count(self, source_csv):
        ds = read_feature_csv(source_csv)
        assert len(ds.schema) == 13
        assert len(ds.samples) == 30
        assert ds.labeled

    def test_combined_column_count(self, scenario_dir, tmp_path):
        out = tmp_path / "combined.csv"
        rc = main(["extract", "--images", str(scenario_dir / "source"),
                   "--labels", str(scenario_dir / "source" / "labels.csv"),
                   "--family", "combined", "--out", str(out)])
        assert rc == 0
        assert len(read_feature_csv(out).schema) == 63

    def test_jobs_do_not_change_bytes(self, scenario_dir, source_csv, tmp_path):
        out = tmp_path / "par.csv"
        rc = main(["extract", "--images", str(scenario_dir / "source"),
                   "--labels", str(scenario_dir / "source" / "labels.csv"),
                   "--family", "haralick", "--out", str(out), "--jobs", "4"])
        assert rc == 0
        assert out.read_bytes() == source_csv.read_bytes()

    def test_missing_image_is_io_error(self, scenario_dir, tmp_path, capsys):
        labels = tmp_path / "labels.csv"
        labels.write_text("id,domain,label\nghost,source,dry\n")
        rc = main(["extract", "--images", str(scenario_dir / "source"),
                   "--labels", str(labels), "--family", "fos",
                   "--out", str(tmp_path / "x.csv")])
        assert rc == 3
        assert "ghost" in capsys.readouterr().err

    def test_numpy_fallback_produces_identical_csv(self, scenario_dir, source_csv,
                                                   tmp_path):
        out = tmp_path / "fallback.csv"
        env = dict(os.environ, MOISTTEX_NO_NUMBA="1")
        cmd = [sys.executable, "-m", "moisttex.cli", "extract",
               "--images", str(scenario_dir / "source"),
               "--labels", str(scenario_dir / "source" / "labels.csv"),
               "--family", "haralick", "--out", str(out)]
        res = subprocess.run(cmd, env=env, capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        assert out.read_bytes() == source_csv.read_bytes()


class TestBaselineCommand:
    def test_report_structure(self, source_csv, tmp_path, capsys):
        report_path = tmp_path / "rep.json"
        rc = main(["baseline", "--features", str(source_csv), "--model", "knn",
                   "--folds", "4", "--seed", "3", "--report", str(report_path)])
        assert rc == 0
        report = json.loads(report_path.read_text())
        assert len(report["perFold"]) == 4
        assert report["model"] == "knn"
        out = capsys.readouterr().out
        assert "accuracy:" in out and "(" in out

    def test_unknown_model_is_usage_error(self, source_csv):
        with pytest.raises(SystemExit) as exc:
            main(["baseline", "--features", str(source_csv), "--model", "svm"])
        assert exc.value.code == 2

    def test_unlabeled_rows_rejected(self, source_csv, tmp_path):
        text = source_csv.read_text().splitlines()
        first = text[1].split(",")
        first[2] = ""
        text[1] = ",".join(first)
        bad = tmp_path / "unlabeled.csv"
        bad.write_text("\n".join(text) + "\n")
        rc = main(["baseline", "--features", str(bad), "--model", "knn"])
        assert rc == 2


class TestAdaptCommand:
    def run_adapt(self, source_csv, target_csv, tmp_path, tag, seed="5"):
        model_path = tmp_path / f"model_{tag}.json"
        report_path = tmp_path / f"report_{tag}.json"
        rc = main(["adapt", "--source", str(source_csv), "--target", str(target_csv),
                   "--epochs", "4", "--warmup", "1", "--seed", seed,
                   "--model-out", str(model_path), "--report", str(report_path)])
        assert rc == 0
        return model_path, report_path

    def test_outputs_and_determinism(self, source_csv, target_csv, tmp_path):
        m1, r1 = self.run_adapt(source_csv, target_csv, tmp_path, "a")
        m2, r2 = self.run_adapt(source_csv, target_csv, tmp_path, "b")
        assert m1.read_bytes() == m2.read_bytes()
        assert r1.read_bytes() == r2.read_bytes()
        report = json.loads(r1.read_text())
        assert report["bestEpoch"] > 1
        assert report["config"]["lam"] == 0.5
        assert len(report["records"]) == 4

    def test_default_flags_follow_protocol(self):
        from moisttex.cli import build_parser
        args = build_parser().parse_args(
            ["adapt", "--source", "s", "--target", "t",
             "--model-out", "m", "--report", "r"])
        assert (args.epochs, args.batch, getattr(args, "lambda"), args.warmup,
                args.clusters) == (30, 2, 0.5, 15, 3)

    def test_schema_mismatch_is_usage_error(self, source_csv, scenario_dir, tmp_path):
        fos_csv = tmp_path / "fos.csv"
        rc = main(["extract", "--images", str(scenario_dir / "target"),
                   "--labels", str(scenario_dir / "target" / "labels.csv"),
                   "--family", "fos", "--out", str(fos_csv)])
        assert rc == 0
        rc = main(["adapt", "--source", str(source_csv), "--target", str(fos_csv),
                   "--epochs", "4", "--warmup", "1",
                   "--model-out", str(tmp_path / "m.json"),
                   "--report", str(tmp_path / "r.json")])
        assert rc == 2


@pytest.fixture(scope="module")
def model_path(source_csv, target_csv, tmp_path_factory):
    tmp = tmp_path_factory.mktemp("model")
    model_path = tmp / "model.json"
    rc = main(["adapt", "--source", str(source_csv), "--target", str(target_csv),
               "--epochs", "4", "--warmup", "1", "--seed", "5",
               "--model-out", str(model_path),
               "--report", str(tmp / "report.json")])
    assert rc == 0
    return model_path


class TestEvalPredictCommands:

    def test_eval_on_own_source(self, model_path, source_csv, tmp_path, capsys):
        report_path = tmp_path / "metrics.json"
        rc = main(["eval", "--model", str(model_path), "--features", str(source_csv),
                   "--report", str(report_path)])
        assert rc == 0
        rep = json.loads(report_path.read_text())
        assert rep["accuracy"] >= 0.34  # sanity floor on balanced training data
        out = capsys.readouterr().out
        assert "true" in out  # confusion matrix rendering

    def test_predict_output_contract(self, model_path, target_csv, tmp_path):
        out_path = tmp_path / "pred.csv"
        rc = main(["predict", "--model", str(model_path),
                   "--features", str(target_csv), "--out", str(out_path)])
        assert rc == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "id,predicted,probDry,probMedium,probWet"
        assert len(lines) == 1 + 30
        for line in lines[1:]:
            cells = line.split(",")
            probs = [float(c) for c in cells[2:]]
            assert abs(sum(probs) - 1.0) < 1e-6
            assert cells[1] in ("dry", "medium", "wet")

    def test_eval_schema_mismatch(self, model_path, scenario_dir, tmp_path):
        fos_csv = tmp_path / "fos.csv"
        main(["extract", "--images", str(scenario_dir / "source"),
              "--labels", str(scenario_dir / "source" / "labels.csv"),
              "--family", "fos", "--out", str(fos_csv)])
        rc = main(["eval", "--model", str(model_path), "--features", str(fos_csv)])
        assert rc == 2

    def test_non_finite_features_exit_numeric(self, model_path, source_csv, tmp_path):
        text = source_csv.read_text().splitlines()
        cells = text[1].split(",")
        cells[3] = "nan"
        text[1] = ",".join(cells)
        bad = tmp_path / "nan.csv"
        bad.write_text("\n".join(text) + "\n")
        rc = main(["eval", "--model", str(model_path), "--features", str(bad)])
        assert rc == 4
