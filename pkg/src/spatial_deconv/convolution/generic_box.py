"""
Generic box filter for uniform PSFs with one contiguous interval per row.

Shifting the window one pixel to the right drops one pixel at the left end
of every support row and adds one at the right end, so the running sum is
updated with 2*M_y operations per pixel. Total cost O(N_y M_y (N_x + M_x)).
"""

import numpy as np
from numba import njit

from ..core import Image
from ..psf import Psf, to_uniform_convex
from .base import ConvOperator
from .counters import SETUP, UPDATE
from .kinds import OperatorKind, OperatorMismatchError


@njit(cache=True)
def _generic_box_kernel(padded, dys, x_mins, x_maxs, left, top, weight, out, counter):
    ny, nx = out.shape
    n_rows = dys.shape[0]
    delta = np.empty(nx)
    for y in range(ny):
        # fresh sum at the start of each scan-line, no drift across lines;
        # sums are of deviations from the line's first pixel
        ref = padded[y + top, left]
        s = 0.0
        for r in range(n_rows):
            row = y + top + dys[r]
            for c in range(left + x_mins[r], left + x_maxs[r] + 1):
                s += padded[row, c] - ref
            counter[SETUP] += x_maxs[r] - x_mins[r] + 1

        # entering minus leaving pixels of every support row, one row at a time
        for x in range(1, nx):
            delta[x] = 0.0
        for r in range(n_rows):
            line = padded[y + top + dys[r]]
            enter = left + x_maxs[r]
            leave = left + x_mins[r] - 1
            for x in range(1, nx):
                delta[x] += line[x + enter] - line[x + leave]
        counter[UPDATE] += 2 * n_rows * (nx - 1)

        out[y, 0] = ref + s * weight
        for x in range(1, nx):
            s += delta[x]
            out[y, x] = ref + s * weight


class GenericBoxOperator(ConvOperator):
    """Sliding-window sum over the row extents of a uniform row-convex PSF."""

    kind = OperatorKind.GENERIC_BOX

    def __init__(self, psf: Psf):
        try:
            self.convex = to_uniform_convex(psf)
        except ValueError as e:
            raise OperatorMismatchError(f"operator generic-box cannot evaluate {psf!r}: {e}") from e
        super().__init__(self.convex)

        # extents are fixed per PSF
        rows = self.convex.rows
        self._dys = np.array([r[0] for r in rows], dtype=np.int64)
        self._x_mins = np.array([r[1] for r in rows], dtype=np.int64)
        self._x_maxs = np.array([r[2] for r in rows], dtype=np.int64)
        self._weight = self.convex.uniform_weight

    def _run(self, pixels, counter):
        left, _, top, _ = self.pads
        out = np.empty_like(pixels)
        _generic_box_kernel(
            self.pad(pixels),
            self._dys,
            self._x_mins,
            self._x_maxs,
            left,
            top,
            self._weight,
            out,
            counter,
        )
        return out


def generic_box_convolve(img: Image, psf: Psf) -> Image:
    """
    Replicate-boundary convolution with a uniform row-convex PSF.

    Raises:
        OperatorMismatchError: If the PSF is not uniform or a row has a gap
    """
    return GenericBoxOperator(psf).convolve(img)
