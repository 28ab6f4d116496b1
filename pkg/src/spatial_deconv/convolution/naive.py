"""Naive spatial convolution: direct summation over the PSF bounding rectangle."""

import numpy as np
from numba import njit

from ..core import Image
from ..psf import Psf, to_dense
from .base import ConvOperator
from .counters import TAPS
from .kinds import OperatorKind


@njit(cache=True)
def _naive_kernel(padded, weights, left, top, mask, fallback, out, counter):
    ny, nx = out.shape
    my, mx = weights.shape
    for y in range(ny):
        for x in range(nx):
            if not mask[y, x]:
                out[y, x] = fallback[y, x]
                continue
            # sum deviations from the centre pixel: flat regions come back exact
            ref = padded[y + top, x + left]
            acc = 0.0
            for j in range(my):
                for i in range(mx):
                    acc += weights[j, i] * (padded[y + j, x + i] - ref)
            out[y, x] = ref + acc
            counter[TAPS] += mx * my


class NaiveOperator(ConvOperator):
    """
    Visits every cell of the M_x x M_y grid for every pixel, zeros included.

    Cost is Theta(N_x N_y M_x M_y); this is the correctness oracle for all
    other operators.
    """

    kind = OperatorKind.NAIVE

    def __init__(self, psf: Psf):
        self.dense = to_dense(psf)
        super().__init__(self.dense)
        self._weights = np.ascontiguousarray(self.dense.weights)

    def _run(self, pixels, counter):
        mask = np.ones(pixels.shape, dtype=np.bool_)
        return self._run_masked(pixels, mask, np.empty_like(pixels), counter)

    def _run_masked(self, pixels, mask, fallback, counter):
        left, _, top, _ = self.pads
        out = np.empty_like(pixels)
        _naive_kernel(self.pad(pixels), self._weights, left, top, mask, fallback, out, counter)
        return out


def naive_convolve(img: Image, psf: Psf) -> Image:
    """
    Replicate-boundary convolution by direct summation.

    Example:
        >>> naive_convolve(Image.constant(4, 4, 50), make_box_psf(3, 3)).pixels[0, 0]
        50.0
    """
    return NaiveOperator(psf).convolve(img)
