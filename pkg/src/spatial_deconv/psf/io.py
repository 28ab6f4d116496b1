"""
Sparse PSF text format and the PSF specifier mini-grammar.

Text format: one "dx dy weight" triple per line, whitespace separated.
Lines starting with '#' and blank lines are ignored. Weights are
renormalised to unit sum on load.

Specifiers: line:<M>, box:<MX>x<MY>, disc:<D>, diag:<M>, file:<path>
"""

import logging
import math
import re
from pathlib import Path
from typing import List, Union

from .generators import make_box_psf, make_diagonal_psf, make_disc_psf, make_line_psf
from .kernels import Psf, SparsePsf, Tap, to_sparse

logger = logging.getLogger(__name__)

_BOX_SIZE = re.compile(r"^(\d+)x(\d+)$")


class PsfFormatError(ValueError):
    """Raised for invalid sparse PSF text or PSF specifiers."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def parse_sparse_psf(text: str) -> SparsePsf:
    """
    Parse sparse PSF text.

    Args:
        text: Content with one "dx dy weight" triple per line

    Returns:
        SparsePsf with weights normalised to unit sum

    Raises:
        PsfFormatError: On malformed lines, duplicate coordinates,
            nonpositive weights or an empty tap list

    Example:
        >>> parse_sparse_psf("0 0 2\\n1 0 2").taps
        ((0, 0, 0.5), (1, 0, 0.5))
    """
    taps: List[Tap] = []
    seen = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        fields = line.split()
        if len(fields) != 3:
            raise PsfFormatError(f"expected 'dx dy weight', got {line!r}", number)

        try:
            dx, dy = int(fields[0]), int(fields[1])
            weight = float(fields[2])
        except ValueError as e:
            raise PsfFormatError(f"cannot parse {line!r}: {e}", number) from e

        if not math.isfinite(weight):
            raise PsfFormatError(f"weight must be finite, got {fields[2]}", number)
        if not weight > 0:
            raise PsfFormatError(f"weight must be positive, got {fields[2]}", number)
        if (dx, dy) in seen:
            raise PsfFormatError(
                f"duplicate tap ({dx}, {dy}), first given on line {seen[(dx, dy)]}", number
            )

        seen[(dx, dy)] = number
        taps.append((dx, dy, weight))

    if not taps:
        raise PsfFormatError("PSF file contains no taps")

    return SparsePsf(tuple(taps))


def format_sparse_psf(psf: Psf) -> str:
    """
    Render any PSF in the sparse text format.

    Weights are written with repr() so that parsing the text back yields
    the identical tap set.
    """
    sparse = to_sparse(psf)
    lines = [f"# {sparse.support_count} taps: dx dy weight"]
    lines.extend(f"{dx} {dy} {w!r}" for dx, dy, w in sparse.taps)
    return "\n".join(lines) + "\n"


def load_sparse_psf(file_path: Union[str, Path]) -> SparsePsf:
    """
    Read a sparse PSF text file.

    Raises:
        FileNotFoundError: If file doesn't exist
        PsfFormatError: If content is invalid
    """
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"File not found: {file_path}")

    psf = parse_sparse_psf(file_path.read_text(encoding="utf-8"))
    logger.info(f"Loaded {psf.support_count}-tap PSF from {file_path}")
    return psf


def save_sparse_psf(psf: Psf, output_path: Union[str, Path]) -> Path:
    """Write a PSF in the sparse text format. Returns the written path."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(format_sparse_psf(psf), encoding="utf-8")
    return output_path


def parse_psf_spec(spec: str) -> Psf:
    """
    Build a PSF from a specifier string.

    Args:
        spec: One of line:<M>, box:<MX>x<MY>, disc:<D>, diag:<M>, file:<path>

    Returns:
        DensePsf (line, box), UniformConvexPsf (disc) or SparsePsf (diag, file)

    Raises:
        PsfFormatError: On an unknown family or malformed size

    Example:
        >>> parse_psf_spec("box:9x9")
        DensePsf(9x9, anchor=(4, 4))
    """
    family, sep, argument = spec.partition(":")
    if not sep or not argument:
        raise PsfFormatError(f"PSF specifier {spec!r} must look like <family>:<size>")

    family = family.strip().lower()
    argument = argument.strip()

    if family == "file":
        return load_sparse_psf(argument)

    try:
        if family == "box":
            match = _BOX_SIZE.match(argument)
            if not match:
                raise PsfFormatError(f"box size must be <MX>x<MY>, got {argument!r}")
            return make_box_psf(int(match.group(1)), int(match.group(2)))

        builders = {"line": make_line_psf, "disc": make_disc_psf, "diag": make_diagonal_psf}
        if family not in builders:
            raise PsfFormatError(
                f"unknown PSF family {family!r}, expected line, box, disc, diag or file"
            )
        if not argument.isdigit():
            raise PsfFormatError(f"{family} size must be a positive integer, got {argument!r}")
        return builders[family](int(argument))
    except PsfFormatError:
        raise
    except ValueError as e:
        raise PsfFormatError(f"invalid PSF specifier {spec!r}: {e}") from e
