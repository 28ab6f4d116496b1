"""Tests for the benchmark harness."""

import math
import time

import pytest

from spatial_deconv.bench import (
    CSV_COLUMNS,
    BenchReport,
    BenchRow,
    BenchSpec,
    TimingStats,
    emit_csv,
    measure,
    run_experiment,
    run_table1,
    run_table2,
    time_run,
)
from spatial_deconv.convolution import TABLE_ORDER, accepts
from spatial_deconv.core import load_pgm
from spatial_deconv.psf import parse_psf_spec

HEADER = ",".join(CSV_COLUMNS)


class TestTiming:
    def test_noop_is_fast(self):
        elapsed = time_run(lambda: None)
        assert 0.0 <= elapsed < 1e-3

    def test_sleep_is_measured(self):
        stats = measure(lambda: time.sleep(0.01), repetitions=3)
        assert stats.samples == 3
        assert 0.009 <= stats.mean < 0.1
        assert stats.minimum <= stats.mean

    def test_single_sample_has_zero_stddev(self):
        stats = TimingStats.from_samples([0.25])
        assert (stats.mean, stats.stddev, stats.minimum, stats.samples) == (0.25, 0.0, 0.25, 1)

    def test_stddev(self):
        assert TimingStats.from_samples([1.0, 3.0]).stddev == pytest.approx(1.0)

    def test_requires_samples(self):
        with pytest.raises(ValueError):
            TimingStats.from_samples([])
        with pytest.raises(ValueError, match="repetitions"):
            measure(lambda: None, repetitions=0)


class TestCsv:
    def test_empty_report_is_header_only(self):
        assert emit_csv(BenchReport("table1")) == (HEADER + "\n").encode("utf-8")

    def test_one_cell(self):
        report = BenchReport("table1")
        row = BenchRow("table1", "naive", "disc:9", mean_s=1.23456, stddev_s=0.001, speedup=1.0)
        report.add(row)
        lines = emit_csv(report).decode("utf-8").split("\n")

        assert lines == [HEADER, "table1,naive,disc:9,1.23,0.00,,,,1.00", ""]

    def test_absent_and_infinite_cells(self):
        report = BenchReport("table2")
        report.add(BenchRow("table1", "box1d-cumul", "disc:9"))
        report.add(
            BenchRow("table2", "naive@thin=0", "disc:9", 0.5, 0.0, 0.0, 13.314, math.inf, 0.99)
        )
        lines = emit_csv(report).decode("utf-8").splitlines()

        assert lines[1] == "table1,box1d-cumul,disc:9,,,,,,"
        assert lines[2] == "table2,naive@thin=0,disc:9,0.50,0.00,0.00,13.31,inf,0.99"

    def test_to_table(self):
        report = BenchReport("table1", notes=["coarse clock"])
        report.add(BenchRow("table1", "box1d-cumul", "disc:9"))
        report.add(BenchRow("table1", "naive", "disc:9", mean_s=2.0, stddev_s=0.1))
        table = report.to_table()

        assert table.splitlines()[0] == "[table1]"
        assert "---" in table
        assert "2.0000" in table
        assert "note: coarse clock" in table


class TestBenchSpec:
    def test_defaults(self):
        spec = BenchSpec()
        assert spec.iterations == 100
        assert spec.repetitions == 100
        assert spec.thresholds == (0.0, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5)
        assert len(spec.psfs) == 8
        assert spec.blur_mode == "cyclic"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"repetitions": 0},
            {"iterations": 0},
            {"experiment": "table3"},
            {"blur_mode": "mirror"},
            {"thresholds": (0.1, -0.1)},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            BenchSpec(**kwargs)

    def test_image_required(self):
        with pytest.raises(ValueError, match="image_path"):
            run_table1(BenchSpec(repetitions=1, iterations=1))


class TestTable1:
    def test_degenerate_run(self, random_image):
        spec = BenchSpec(psfs=("line:9", "disc:9"), iterations=1, repetitions=1)
        report = run_table1(spec, random_image(16, 16))

        assert len(report.rows) == 2 * len(TABLE_ORDER)
        for row in report.rows:
            expected_present = accepts(
                next(k for k in TABLE_ORDER if k.label == row.operator), parse_psf_spec(row.psf)
            )
            assert row.absent is not expected_present
            if not row.absent:
                assert row.stddev_s == 0.0
                assert row.omitted_pct is None

        assert report.find("box1d-cumul", "disc:9").absent
        assert report.find("box2d-sliding", "disc:9").absent
        assert not report.find("generic-box", "disc:9").absent
        assert not report.find("fourier", "line:9").absent
        assert report.find("naive", "line:9").speedup == pytest.approx(1.0)

    def test_csv_line_count(self, random_image):
        spec = BenchSpec(psfs=("box:3x3",), iterations=1, repetitions=1)
        report = run_table1(spec, random_image(12, 12))
        assert len(emit_csv(report).decode("utf-8").splitlines()) == 1 + len(TABLE_ORDER)


class TestTable2:
    def test_threshold_zero_only(self, natural_32):
        spec = BenchSpec(experiment="table2", iterations=5, repetitions=1, thresholds=(0.0,))
        report = run_table2(spec, natural_32)

        reference, zero = report.rows
        assert reference.operator == "naive"
        assert reference.speedup == 1.0
        assert reference.omitted_pct == 0.0
        assert zero.operator == "naive@thin=0"
        assert zero.omitted_pct == 0.0
        assert zero.snr_orig_db == reference.snr_orig_db
        assert zero.snr_ref_db == math.inf

    def test_full_threshold_set(self, natural_32, pgm_file):
        path = pgm_file(natural_32)
        spec = BenchSpec(path, experiment="table2", iterations=3, repetitions=1)
        report = run_experiment(spec, path)

        assert len(report.rows) == 9
        assert [r.operator for r in report.rows][1:3] == ["naive@thin=0", "naive@thin=0.005"]
        assert len(emit_csv(report).decode("utf-8").splitlines()) == 10
        omitted = [r.omitted_pct for r in report.rows[1:]]
        assert all(0.0 <= p <= 100.0 for p in omitted)

    def test_saves_restorations(self, natural_32, tmp_path):
        image_dir = tmp_path / "images"
        spec = BenchSpec(
            experiment="table2",
            iterations=3,
            repetitions=1,
            thresholds=(0.0, 0.1, 0.5),
            image_dir=image_dir,
        )
        run_table2(spec, natural_32)

        assert {p.name for p in image_dir.iterdir()} == {
            "blurred.pgm",
            "reference.pgm",
            "thin_0.pgm",
            "thin_0.1.pgm",
            "thin_0.5.pgm",
        }
        # threshold 0 reproduces the reference bit for bit
        assert (image_dir / "thin_0.pgm").read_bytes() == (image_dir / "reference.pgm").read_bytes()
        assert load_pgm(image_dir / "thin_0.5.pgm").shape == natural_32.shape

    def test_no_images_by_default(self, natural_32, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        spec = BenchSpec(experiment="table2", iterations=1, repetitions=1, thresholds=(0.1,))
        run_table2(spec, natural_32)
        assert list(tmp_path.iterdir()) == []


@pytest.mark.slow
class TestDeskScale:
    """Runtime and quality on a 256x256 image with 100 iterations."""

    def test_fast_operators_beat_naive(self, natural_256):
        spec = BenchSpec(psfs=("line:9", "disc:9", "diag:9"), iterations=100, repetitions=3)
        report = run_table1(spec, natural_256)

        assert report.find("box1d-sliding", "line:9").speedup >= 2.0
        assert report.find("box1d-cumul", "line:9").speedup >= 2.0
        assert report.find("generic-box", "disc:9").speedup >= 3.0
        assert report.find("list", "diag:9").speedup >= 3.0

    def test_thinning_trade_off(self, natural_256):
        spec = BenchSpec(experiment="table2", iterations=100, repetitions=5)
        reference, *thinned = run_table2(spec, natural_256).rows

        # mask bookkeeping alone costs at most 5%
        assert thinned[0].speedup >= 0.95

        for threshold, row in zip(spec.thresholds, thinned):
            if threshold <= 0.05:
                assert abs(row.snr_orig_db - reference.snr_orig_db) <= 0.5, row.operator

        speedups = [row.speedup for row in thinned]
        # neighbouring thresholds may tie within timing noise
        assert all(b >= 0.97 * a for a, b in zip(speedups, speedups[1:])), speedups
