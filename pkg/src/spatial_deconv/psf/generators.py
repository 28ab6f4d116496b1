"""Generators for the standard PSF families (line, box, disc, diagonal)."""

import numpy as np

from .kernels import DensePsf, SparsePsf, UniformConvexPsf


def _check_size(name: str, value: int) -> int:
    if int(value) != value or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value}")
    return int(value)


def make_line_psf(length: int) -> DensePsf:
    """
    Horizontal linear motion blur of `length` pixels.

    Args:
        length: Number of taps M (>= 1)

    Returns:
        1 x M DensePsf with weights 1/M, anchor at column floor(M/2)

    Example:
        >>> make_line_psf(3).anchor
        (1, 0)
    """
    length = _check_size("Line length", length)
    return DensePsf(np.full((1, length), 1.0 / length), (length // 2, 0))


def make_box_psf(mx: int, my: int) -> DensePsf:
    """
    Uniform mx x my rectangle aligned with the scan-lines.

    Example:
        >>> make_box_psf(3, 3).weights.shape
        (3, 3)
    """
    mx = _check_size("Box width", mx)
    my = _check_size("Box height", my)
    return DensePsf(np.full((my, mx), 1.0 / (mx * my)), (mx // 2, my // 2))


def make_disc_psf(diameter: int) -> UniformConvexPsf:
    """
    Defocus blur: uniform disc of the given diameter.

    A pixel of the d x d grid belongs to the support iff its centre lies
    within d/2 of the grid centre. The anchor is floor(d/2) on both axes.

    Example:
        >>> make_disc_psf(3).support_count
        9
    """
    diameter = _check_size("Disc diameter", diameter)
    radius = diameter / 2.0
    anchor = diameter // 2

    rows = []
    for j in range(diameter):
        cy = j + 0.5 - radius
        columns = [
            i for i in range(diameter) if (i + 0.5 - radius) ** 2 + cy ** 2 <= radius ** 2
        ]
        if columns:
            rows.append((j - anchor, columns[0] - anchor, columns[-1] - anchor))

    return UniformConvexPsf(tuple(rows))


def make_diagonal_psf(length: int) -> SparsePsf:
    """
    45 degree line of `length` taps, (i, i) centred on the anchor.

    Example:
        >>> [t[:2] for t in make_diagonal_psf(3).taps]
        [(-1, -1), (0, 0), (1, 1)]
    """
    length = _check_size("Diagonal length", length)
    start = -(length // 2)
    return SparsePsf(tuple((i, i, 1.0 / length) for i in range(start, start + length)))
