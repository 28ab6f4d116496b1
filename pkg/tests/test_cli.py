"""Command-line tests, driven through click's CliRunner."""

import pytest
from click.testing import CliRunner

from spatial_deconv.cli import main
from spatial_deconv.core import load_pgm, snr_db, write_pgm
from spatial_deconv.deconvolution import RlConfig, rl_deconvolve
from spatial_deconv.psf import load_sparse_psf, make_diagonal_psf, make_disc_psf


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def sharp(natural_64, pgm_file):
    return pgm_file(natural_64, "sharp.pgm")


def test_version(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "1.0.0" in result.output


def test_snr_of_identical_images_is_inf(runner, sharp):
    result = runner.invoke(main, ["snr", "--ref", str(sharp), "--test", str(sharp)])
    assert result.exit_code == 0
    assert result.output.strip() == "inf"


def test_snr_size_mismatch_is_runtime_error(runner, sharp, pgm_file, natural_32):
    small = pgm_file(natural_32, "small.pgm")
    result = runner.invoke(main, ["snr", "--ref", str(sharp), "--test", str(small)])
    assert result.exit_code == 1
    assert "Error" in result.output


def test_blur_then_deconv_improves_snr(runner, sharp, tmp_path):
    blurred = tmp_path / "blurred.pgm"
    restored = tmp_path / "restored.pgm"

    result = runner.invoke(
        main,
        ["blur", "--in", str(sharp), "--psf", "disc:5", "--mode", "replicate"]
        + ["--out", str(blurred)],
    )
    assert result.exit_code == 0, result.output

    result = runner.invoke(
        main,
        ["deconv", "--in", str(blurred), "--psf", "disc:5", "--iters", "20"]
        + ["--out", str(restored)],
    )
    assert result.exit_code == 0, result.output
    assert "20 iterations, generic-box operator" in result.output

    original = load_pgm(sharp)
    assert snr_db(original, load_pgm(restored)) > snr_db(original, load_pgm(blurred))


def test_deconv_output_matches_library(runner, sharp, tmp_path):
    restored = tmp_path / "restored.pgm"
    args = ["deconv", "--in", str(sharp), "--psf", "diag:5", "--iters", "3", "--out", str(restored)]
    result = runner.invoke(main, args)
    assert result.exit_code == 0, result.output

    expected, _ = rl_deconvolve(load_pgm(sharp), make_diagonal_psf(5), RlConfig(iterations=3))
    assert restored.read_bytes() == write_pgm(expected)


def test_deconv_thin_reports_omitted(runner, sharp, tmp_path):
    result = runner.invoke(
        main,
        [
            "deconv",
            "--in",
            str(sharp),
            "--psf",
            "disc:5",
            "--iters",
            "12",
            "--thin",
            "0.5",
            "--out",
            str(tmp_path / "thin.pgm"),
        ],
    )
    assert result.exit_code == 0, result.output
    assert "naive operator" in result.output
    assert "% omitted" in result.output


def test_psf_gen_round_trip(runner, sharp, tmp_path):
    kernel = tmp_path / "disc9.txt"
    preview = tmp_path / "disc9.pgm"

    result = runner.invoke(
        main, ["psf-gen", "--psf", "disc:9", "--out", str(kernel), "--preview", str(preview)]
    )
    assert result.exit_code == 0, result.output

    loaded = load_sparse_psf(kernel)
    disc = make_disc_psf(9)
    assert loaded.support_count == disc.support_count
    preview_img = load_pgm(preview)
    assert preview_img.shape == (9, 9)
    assert preview_img.pixels.max() == 255.0

    result = runner.invoke(
        main,
        ["deconv", "--in", str(sharp), "--psf", f"file:{kernel}", "--iters", "2"]
        + ["--out", str(tmp_path / "r.pgm")],
    )
    assert result.exit_code == 0, result.output
    assert "list operator" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["blur", "--psf", "ring:5"],
        ["blur", "--psf", "disc:5", "--bogus"],
        ["blur", "--psf", "disc:5", "--mode", "replicate", "--op", "fourier"],
        ["deconv", "--psf", "disc:9", "--op", "box1d-cumul"],
        ["deconv", "--psf", "disc:9", "--op", "generic-box", "--thin", "0.1"],
        ["deconv", "--psf", "disc:9", "--op", "sideways"],
        ["deconv", "--psf", "disc:9", "--iters", "-1"],
    ],
    ids=[
        "bad-psf",
        "unknown-option",
        "replicate-fourier",
        "op-mismatch",
        "op-unmaskable",
        "bad-op",
        "bad-iters",
    ],
)
def test_usage_errors_exit_2(runner, sharp, tmp_path, args):
    command, rest = args[0], args[1:]
    result = runner.invoke(
        main, [command, "--in", str(sharp), "--out", str(tmp_path / "o.pgm")] + rest
    )
    assert result.exit_code == 2
    assert not (tmp_path / "o.pgm").exists()


def test_missing_input_exits_2(runner, tmp_path):
    result = runner.invoke(
        main,
        ["deconv", "--in", str(tmp_path / "nope.pgm"), "--psf", "disc:9", "--out", "x.pgm"],
    )
    assert result.exit_code == 2


def test_bench_table2_csv(runner, sharp, tmp_path):
    csv_path = tmp_path / "results" / "t2.csv"
    result = runner.invoke(
        main,
        [
            "bench",
            "--experiment",
            "table2",
            "--in",
            str(sharp),
            "--reps",
            "1",
            "--iters",
            "2",
            "--out",
            str(csv_path),
        ],
    )
    assert result.exit_code == 0, result.output

    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 10
    assert lines[0].startswith("experiment,operator,psf,mean_s")
    assert lines[1].startswith("table2,naive,disc:9,")


def test_bench_bad_thresholds(runner, sharp):
    result = runner.invoke(
        main,
        ["bench", "--experiment", "table2", "--in", str(sharp), "--thresholds", "0.1,-2"],
    )
    assert result.exit_code == 2


def test_bench_table1_subset(runner, sharp, tmp_path):
    csv_path = tmp_path / "t1.csv"
    result = runner.invoke(
        main,
        [
            "bench", "--experiment", "table1", "--in", str(sharp), "--reps", "1", "--iters", "1",
            "--psf", "line:9", "--show", "--out", str(csv_path),
        ],
    )
    assert result.exit_code == 0, result.output
    assert "[table1]" in result.output

    rows = [line.split(",") for line in csv_path.read_text(encoding="utf-8").splitlines()[1:]]
    assert len(rows) == 8
    assert all(row[2] == "line:9" for row in rows)
    # a horizontal line is also a filled rectangle, so every operator applies
    assert all(row[3] for row in rows)


def test_bench_table2_saves_images(runner, sharp, tmp_path):
    image_dir = tmp_path / "restored"
    result = runner.invoke(
        main,
        ["bench", "--experiment", "table2", "--in", str(sharp), "--reps", "1", "--iters", "2"]
        + ["--thresholds", "0.1,0.5", "--images", str(image_dir)],
    )
    assert result.exit_code == 0, result.output
    assert (image_dir / "reference.pgm").exists()
    assert load_pgm(image_dir / "thin_0.1.pgm").shape == load_pgm(sharp).shape
    assert (image_dir / "thin_0.5.pgm").exists()
