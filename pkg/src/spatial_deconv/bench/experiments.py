"""
Experiment drivers for the two benchmark tables.

table1: RL runtime for every (PSF, operator) pair the operator can
evaluate. table2: runtime and reconstruction quality of selective RL
across a range of thinning thresholds, against an unthinned reference.

Only the iteration loop is timed; image loading, blurring and JIT
compilation happen before the first timed run.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

from ..convolution import TABLE_ORDER, OperatorKind, accepts
from ..core import Image, load_pgm, save_pgm, snr_db
from ..deconvolution import (
    BLUR_MODES,
    CYCLIC,
    DEFAULT_REACTIVATION_PERIOD,
    RlConfig,
    blur_image,
    rl_deconvolve,
    rl_deconvolve_selective,
)
from ..psf import parse_psf_spec
from .report import BenchReport, BenchRow
from .timing import MAX_CLOCK_RESOLUTION, clock_is_coarse, clock_resolution, measure

logger = logging.getLogger(__name__)

TABLE1 = "table1"
TABLE2 = "table2"
EXPERIMENTS = (TABLE1, TABLE2)

TABLE1_PSFS: Tuple[str, ...] = (
    "line:9",
    "line:17",
    "box:9x9",
    "box:17x17",
    "diag:9",
    "diag:17",
    "disc:9",
    "disc:17",
)
TABLE2_PSF = "disc:9"
TABLE2_THRESHOLDS: Tuple[float, ...] = (0.0, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5)
REFERENCE_OPERATOR = OperatorKind.NAIVE


@dataclass(frozen=True)
class BenchSpec:
    """
    What to run and how often.

    Attributes:
        image_path: Sharp PGM test image (may be omitted when an Image is
            passed to the runner directly)
        experiment: "table1" or "table2"
        psfs: PSF specifiers for table1
        iterations: RL iterations per run
        repetitions: Timed runs per cell
        thresholds: Thinning thresholds for table2
        blur_mode: How the test input is blurred ("cyclic" or "replicate")
        table2_psf: PSF specifier for table2
        reactivation_period: Full-reset period for selective RL
        image_dir: If set, table2 writes the blurred input, the reference and
            every restoration there as PGM
    """

    image_path: Optional[Path] = None
    experiment: str = TABLE1
    psfs: Tuple[str, ...] = TABLE1_PSFS
    iterations: int = 100
    repetitions: int = 100
    thresholds: Tuple[float, ...] = TABLE2_THRESHOLDS
    blur_mode: str = CYCLIC
    table2_psf: str = TABLE2_PSF
    reactivation_period: int = DEFAULT_REACTIVATION_PERIOD
    image_dir: Optional[Path] = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.blur_mode not in BLUR_MODES:
            raise ValueError(f"blur_mode must be one of {BLUR_MODES}, got {self.blur_mode!r}")
        if any(math.isnan(t) or t < 0 for t in self.thresholds):
            raise ValueError(f"thresholds must be >= 0, got {self.thresholds}")


def _test_image(spec: BenchSpec, image: Optional[Image]) -> Image:
    if image is not None:
        return image
    if spec.image_path is None:
        raise ValueError("BenchSpec.image_path is required when no image is given")
    return load_pgm(spec.image_path)


def _save_image(spec: BenchSpec, name: str, img: Image) -> None:
    if spec.image_dir is None:
        return
    path = save_pgm(img, Path(spec.image_dir) / f"{name}.pgm")
    logger.info(f"Saved {path}")


def _new_report(experiment: str) -> BenchReport:
    report = BenchReport(experiment)
    if clock_is_coarse():
        note = (
            f"clock resolution {clock_resolution():.2e}s exceeds "
            f"{MAX_CLOCK_RESOLUTION:.0e}s; timings are unreliable"
        )
        logger.warning(note)
        report.notes.append(note)
    return report


def run_table1(spec: BenchSpec, image: Optional[Image] = None) -> BenchReport:
    """
    Time RL with every applicable operator for every PSF.

    Cells where the operator cannot evaluate the PSF are reported as
    absent rows. Speedups are relative to the naive operator.

    Example:
        >>> report = run_table1(BenchSpec(Path("cameraman.pgm"), repetitions=3))
        >>> print(report.to_table())
    """
    original = _test_image(spec, image)
    report = _new_report(TABLE1)

    for label in spec.psfs:
        psf = parse_psf_spec(label)
        blurred = blur_image(original, psf, spec.blur_mode)
        baseline: Optional[float] = None

        for kind in TABLE_ORDER:
            if not accepts(kind, psf):
                report.add(BenchRow(TABLE1, kind.label, label))
                continue

            cfg = RlConfig(iterations=spec.iterations, operator=kind)
            rl_deconvolve(blurred, psf, RlConfig(iterations=1, operator=kind))
            stats = measure(lambda: rl_deconvolve(blurred, psf, cfg), spec.repetitions)

            if kind is REFERENCE_OPERATOR:
                baseline = stats.mean
            speedup = baseline / stats.mean if baseline and stats.mean > 0 else None
            report.add(
                BenchRow(
                    TABLE1,
                    kind.label,
                    label,
                    mean_s=stats.mean,
                    stddev_s=stats.stddev,
                    speedup=speedup,
                )
            )
            logger.info(f"table1 {label} {kind.label}: {stats.mean:.4f}s")

    return report


def run_table2(spec: BenchSpec, image: Optional[Image] = None) -> BenchReport:
    """
    Compare selective RL at each threshold against the unthinned reference.

    The first row is the reference (naive operator, no thinning); each
    further row reports omitted evaluations, SNR against the original and
    against the reference, and speedup over the reference.

    With spec.image_dir set, blurred.pgm, reference.pgm and one
    thin_<T>.pgm per threshold are written there.
    """
    original = _test_image(spec, image)
    report = _new_report(TABLE2)

    psf = parse_psf_spec(spec.table2_psf)
    blurred = blur_image(original, psf, spec.blur_mode)
    cfg = RlConfig(iterations=spec.iterations, operator=REFERENCE_OPERATOR)

    _save_image(spec, "blurred", blurred)
    reference, _ = rl_deconvolve(blurred, psf, cfg)
    _save_image(spec, "reference", reference)
    ref_stats = measure(lambda: rl_deconvolve(blurred, psf, cfg), spec.repetitions)
    report.add(
        BenchRow(
            TABLE2,
            REFERENCE_OPERATOR.label,
            spec.table2_psf,
            mean_s=ref_stats.mean,
            stddev_s=ref_stats.stddev,
            omitted_pct=0.0,
            snr_orig_db=snr_db(original, reference),
            speedup=1.0,
        )
    )
    logger.info(f"table2 reference: {ref_stats.mean:.4f}s")

    for threshold in spec.thresholds:

        def run(t: float = threshold):
            return rl_deconvolve_selective(blurred, psf, cfg, t, spec.reactivation_period)

        restored, trace = run()
        _save_image(spec, restored_name(threshold), restored)
        stats = measure(run, spec.repetitions)
        report.add(
            BenchRow(
                TABLE2,
                thinned_label(threshold),
                spec.table2_psf,
                mean_s=stats.mean,
                stddev_s=stats.stddev,
                omitted_pct=100.0 * trace.omitted_fraction,
                snr_orig_db=snr_db(original, restored),
                snr_ref_db=snr_db(reference, restored),
                speedup=ref_stats.mean / stats.mean if stats.mean > 0 else None,
            )
        )
        logger.info(
            f"table2 threshold {threshold:g}: {stats.mean:.4f}s, "
            f"{100.0 * trace.omitted_fraction:.2f}% omitted"
        )

    return report


def thinned_label(threshold: float) -> str:
    return f"{REFERENCE_OPERATOR.label}@thin={threshold:g}"


def restored_name(threshold: float) -> str:
    """File stem of a table2 restoration, e.g. thin_0.1."""
    return f"thin_{threshold:g}"


def run_experiment(
    spec: BenchSpec, image: Optional[Union[Image, str, Path]] = None
) -> BenchReport:
    """Run whichever table `spec.experiment` names."""
    if isinstance(image, (str, Path)):
        image = load_pgm(image)
    runner = run_table1 if spec.experiment == TABLE1 else run_table2
    return runner(spec, image)
