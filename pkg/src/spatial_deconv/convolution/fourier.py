"""Fourier-domain reference convolution (periodic boundary)."""

from typing import Dict, Tuple

import numpy as np
from scipy import fft

from ..core import Image
from ..psf import Psf
from .base import ConvOperator
from .kinds import OperatorKind


class FourierOperator(ConvOperator):
    """
    Cyclic convolution via forward transform, pointwise product, inverse.

    Boundary semantics are periodic, not replicate. The operator exists for
    benchmark parity and for generating blurred test images; automatic
    dispatch never selects it.
    """

    kind = OperatorKind.FOURIER

    def __init__(self, psf: Psf):
        super().__init__(psf)
        self._taps = list(psf.iter_taps())
        self._spectra: Dict[Tuple[int, int], np.ndarray] = {}

    def embedded_kernel(self, shape: Tuple[int, int]) -> np.ndarray:
        """
        Zero-embed the PSF in an image-sized grid.

        A tap reading offset (dx, dy) sits at (-dy mod N_y, -dx mod N_x) so
        that cyclic convolution reproduces out(x, y) = sum w * u(x+dx, y+dy).
        """
        ny, nx = shape
        kernel = np.zeros(shape)
        for dx, dy, w in self._taps:
            kernel[(-dy) % ny, (-dx) % nx] += w
        return kernel

    def _spectrum(self, shape: Tuple[int, int]) -> np.ndarray:
        # deterministic memo: one spectrum per image size
        if shape not in self._spectra:
            self._spectra[shape] = fft.rfft2(self.embedded_kernel(shape))
        return self._spectra[shape]

    def _run(self, pixels, counter):
        spectrum = fft.rfft2(pixels) * self._spectrum(pixels.shape)
        return fft.irfft2(spectrum, s=pixels.shape)


def fourier_convolve(img: Image, psf: Psf) -> Image:
    """
    Periodic-boundary convolution through the discrete Fourier transform.

    Example:
        >>> out = fourier_convolve(img, make_disc_psf(9))
    """
    return FourierOperator(psf).convolve(img)
