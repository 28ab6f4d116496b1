"""
Command-line interface for Spatial Deconv.

Provides commands for blurring, deconvolving and comparing PGM images,
generating PSF files and running the benchmark experiments.
"""

import logging
import sys
from pathlib import Path
from typing import Tuple

try:
    import click
except ImportError:
    print("Error: Click is not installed. Install with: pip install spatial-deconv[cli]")
    sys.exit(1)

import numpy as np

from . import __version__
from .bench import (
    EXPERIMENTS,
    TABLE1_PSFS,
    TABLE2_PSF,
    TABLE2_THRESHOLDS,
    BenchSpec,
    emit_csv,
    run_experiment,
)
from .convolution import AUTO, OPERATOR_NAMES, dispatch, dispatch_masked
from .core import Image, format_db, load_pgm, save_pgm, snr_db
from .deconvolution import (
    BLUR_MODES,
    CYCLIC,
    DEFAULT_REACTIVATION_PERIOD,
    REPLICATE,
    RlConfig,
    blur_image,
    replicate_kind,
    rl_deconvolve,
    rl_deconvolve_selective,
)
from .psf import PsfFormatError, parse_psf_spec, save_sparse_psf, to_dense


# Global options
CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])


class PsfSpecType(click.ParamType):
    """PSF specifier: line:<M>, box:<MX>x<MY>, disc:<D>, diag:<M>, file:<path>."""

    name = "psf"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_psf_spec(value)
        except (PsfFormatError, ValueError, OSError) as e:
            self.fail(str(e), param, ctx)


PSF_SPEC = PsfSpecType()
OPERATOR_CHOICE = click.Choice(OPERATOR_NAMES, case_sensitive=False)


def _parse_thresholds(ctx, param, value) -> Tuple[float, ...]:
    if value is None:
        return TABLE2_THRESHOLDS
    try:
        thresholds = tuple(float(t) for t in value.split(",") if t.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")
    if not thresholds or any(not t >= 0 for t in thresholds):
        raise click.BadParameter(f"thresholds must be nonnegative numbers, got {value!r}")
    return thresholds


def _report_error(e: Exception) -> None:
    click.secho(f"Error: {e}", fg="red", err=True)
    ctx_obj = click.get_current_context().obj or {}
    if ctx_obj.get("verbose", False):
        import traceback

        traceback.print_exc()
    sys.exit(1)


@click.group(context_settings=CONTEXT_SETTINGS)
@click.version_option(version=__version__, prog_name="sdeconv")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging and tracebacks on error")
@click.pass_context
def main(ctx, verbose):
    """
    Spatial Deconv - Richardson-Lucy deconvolution with spatial convolution operators.

    Blur, restore and compare PGM images; every convolution is evaluated
    with the fastest operator the PSF admits.

    Examples:

      # Blur with a defocus disc of diameter 9
      sdeconv blur --in sharp.pgm --psf disc:9 --out blurred.pgm

      # Restore with 100 iterations
      sdeconv deconv --in blurred.pgm --psf disc:9 --out restored.pgm

      # Compare against the original
      sdeconv snr --ref sharp.pgm --test restored.pgm

    For more help on a specific command, run:
      sdeconv COMMAND --help
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s")


# ============================================================================
# IMAGE COMMANDS
# ============================================================================


@main.command(name="blur")
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--psf", type=PSF_SPEC, required=True, help="PSF specifier, e.g. disc:9")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), required=True)
@click.option(
    "--mode",
    type=click.Choice(BLUR_MODES),
    default=CYCLIC,
    help="cyclic (Fourier, periodic boundary) or replicate (spatial operator)",
)
@click.option(
    "--op", "operator", type=OPERATOR_CHOICE, default=AUTO, help="Operator for replicate mode"
)
@click.option("--noise", type=click.FloatRange(min=0.0), default=0.0, help="Gaussian noise sigma")
@click.option("--seed", type=int, default=0, help="Noise seed")
def blur(input_path, psf, output_path, mode, operator, noise, seed):
    """
    Blur a sharp image with a PSF.

    Example:
      sdeconv blur --in sharp.pgm --psf line:17 --out blurred.pgm --noise 2
    """
    if mode == REPLICATE:
        try:
            replicate_kind(psf, operator)
        except ValueError as e:
            raise click.UsageError(str(e))

    try:
        sharp = load_pgm(input_path)
        blurred = blur_image(
            sharp, psf, mode=mode, preference=operator, noise_sigma=noise, seed=seed
        )
        save_pgm(blurred, output_path)

        click.secho(f"✓ Blurred {input_path} ({mode}, {psf!r}): {output_path}", fg="green")

    except Exception as e:
        _report_error(e)


@main.command(name="deconv")
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--psf", type=PSF_SPEC, required=True, help="PSF specifier, e.g. disc:9")
@click.option("--iters", type=click.IntRange(min=0), default=100, help="RL iterations")
@click.option("--op", "operator", type=OPERATOR_CHOICE, default=AUTO, help="Convolution operator")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), required=True)
@click.option(
    "--thin",
    type=click.FloatRange(min=0.0),
    default=None,
    help="Deactivate pixels changing by less than this (selective RL)",
)
@click.option(
    "--reactivate",
    type=click.IntRange(min=1),
    default=DEFAULT_REACTIVATION_PERIOD,
    help="Reactivate all pixels every N iterations (selective RL)",
)
@click.option("--eps", type=float, default=1e-8, help="Quotient denominator guard")
def deconv(input_path, psf, iters, operator, output_path, thin, reactivate, eps):
    """
    Restore a blurred image with Richardson-Lucy deconvolution.

    Examples:

      # Standard RL, operator chosen from the PSF
      sdeconv deconv --in blurred.pgm --psf disc:9 --out restored.pgm

      # Selective RL skipping pixels that changed by less than 0.1
      sdeconv deconv --in blurred.pgm --psf disc:9 --thin 0.1 --out restored.pgm
    """
    try:
        cfg = RlConfig(iterations=iters, operator=operator, epsilon_div=eps)
        # operator/PSF mismatch is a usage error
        if thin is None:
            dispatch(psf, operator)
        else:
            dispatch_masked(psf, operator)
    except ValueError as e:
        raise click.UsageError(str(e))

    try:
        blurred = load_pgm(input_path)
        if thin is None:
            restored, trace = rl_deconvolve(blurred, psf, cfg)
        else:
            restored, trace = rl_deconvolve_selective(blurred, psf, cfg, thin, reactivate)
        save_pgm(restored, output_path)

        summary = f"✓ {iters} iterations, {trace.operator} operator, {trace.total_time:.2f}s"
        if thin is not None:
            summary += f", {100.0 * trace.omitted_fraction:.2f}% omitted"
        click.secho(f"{summary}: {output_path}", fg="green")

    except Exception as e:
        _report_error(e)


@main.command(name="snr")
@click.option("--ref", "reference", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--test", "test", type=click.Path(exists=True, dir_okay=False), required=True)
def snr(reference, test):
    """
    Print the SNR (dB) of a test image against a reference.

    Prints "inf" for identical images.
    """
    try:
        click.echo(format_db(snr_db(load_pgm(reference), load_pgm(test))))
    except Exception as e:
        _report_error(e)


@main.command(name="psf-gen")
@click.option("--psf", type=PSF_SPEC, required=True, help="PSF specifier, e.g. diag:9")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), required=True)
@click.option(
    "--preview",
    type=click.Path(dir_okay=False),
    default=None,
    help="Also write the kernel as a PGM image scaled to 255",
)
def psf_gen(psf, output_path, preview):
    """
    Write a PSF in the sparse text format ("dx dy weight" per line).

    The file can be read back with --psf file:<path>.

    Example:
      sdeconv psf-gen --psf disc:9 --out disc9.txt --preview disc9.pgm
    """
    try:
        written = save_sparse_psf(psf, output_path)
        click.secho(f"✓ Wrote {psf.support_count}-tap PSF: {written}", fg="green")

        if preview:
            weights = to_dense(psf).weights
            save_pgm(Image(weights * (255.0 / float(np.max(weights)))), preview)
            click.echo(f"  Preview: {preview}")

    except Exception as e:
        _report_error(e)


# ============================================================================
# BENCHMARK COMMANDS
# ============================================================================


@main.command(name="bench")
@click.option("--experiment", type=click.Choice(EXPERIMENTS), required=True)
@click.option("--in", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--reps", type=click.IntRange(min=1), default=100, help="Timed runs per cell")
@click.option("--iters", type=click.IntRange(min=1), default=100, help="RL iterations per run")
@click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None)
@click.option("--show", is_flag=True, help="Print the report as a text table")
@click.option(
    "--psf",
    "psfs",
    multiple=True,
    help=f"PSF specifier(s); table1 default {','.join(TABLE1_PSFS)}, table2 default {TABLE2_PSF}",
)
@click.option(
    "--thresholds",
    callback=_parse_thresholds,
    default=None,
    help="Comma-separated thinning thresholds for table2",
)
@click.option("--blur-mode", type=click.Choice(BLUR_MODES), default=CYCLIC)
@click.option("--reactivate", type=click.IntRange(min=1), default=DEFAULT_REACTIVATION_PERIOD)
@click.option(
    "--images",
    "image_dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory for the table2 input, reference and restored images",
)
def bench(
    experiment,
    input_path,
    reps,
    iters,
    output_path,
    show,
    psfs,
    thresholds,
    blur_mode,
    reactivate,
    image_dir,
):
    """
    Run a benchmark experiment and write its CSV report.

    table1 times RL with every applicable operator per PSF; table2 runs
    selective RL across thinning thresholds against an unthinned reference.
    Without --out the CSV goes to standard output.

    Example:
      sdeconv bench --experiment table2 --in cameraman.pgm --reps 3 --out t2.csv
      sdeconv bench --experiment table2 --in cameraman.pgm --reps 3 --images restored/
    """
    for spec in psfs:
        try:
            parse_psf_spec(spec)
        except (PsfFormatError, ValueError, OSError) as e:
            raise click.BadParameter(str(e), param_hint="--psf")

    options = dict(
        image_path=Path(input_path),
        experiment=experiment,
        iterations=iters,
        repetitions=reps,
        thresholds=thresholds,
        blur_mode=blur_mode,
        reactivation_period=reactivate,
    )
    if psfs:
        options["psfs"] = tuple(psfs)
        options["table2_psf"] = psfs[0]
    if image_dir:
        options["image_dir"] = Path(image_dir)

    try:
        spec = BenchSpec(**options)
        report = run_experiment(spec, spec.image_path)
        payload = emit_csv(report)

        if output_path:
            Path(output_path).parent.mkdir(parents=True, exist_ok=True)
            Path(output_path).write_bytes(payload)
        else:
            click.echo(payload.decode("utf-8"), nl=False)

        if show:
            click.echo(report.to_table())

        target = output_path or "stdout"
        click.secho(
            f"✓ {experiment}: {len(report.rows)} rows: {target}", fg="green", err=not output_path
        )

    except Exception as e:
        _report_error(e)


if __name__ == "__main__":
    main()
