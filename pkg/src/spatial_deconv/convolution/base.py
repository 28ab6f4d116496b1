"""Common contract shared by every convolution operator."""

from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np
from numba import njit

from ..core import Image
from ..psf import Psf, bounding_box
from .counters import OpCounts, new_counter
from .kinds import OperatorKind, OperatorMismatchError


@njit(cache=True)
def _pad_edge(pixels, left, right, top, bottom):
    # replicate border, equal to np.pad(mode="edge")
    h, w = pixels.shape
    out = np.empty((h + top + bottom, w + left + right))
    for r in range(out.shape[0]):
        src = pixels[min(max(r - top, 0), h - 1)]
        for c in range(left):
            out[r, c] = src[0]
        for c in range(w):
            out[r, left + c] = src[c]
        for c in range(right):
            out[r, left + w + c] = src[w - 1]
    return out


class ConvOperator(ABC):
    """
    A convolution strategy bound to one PSF.

    Every operator computes

        out(x, y) = sum over taps of w(dx, dy) * padded(x + dx, y + dy)

    where `padded` is the replicate continuation of the input (periodic for
    the Fourier reference). PSF-dependent preparation (extents, tap arrays,
    spectra) happens once in the constructor; calls are reentrant.

    Subclasses implement `_run`, and masking-capable ones `_run_masked`.
    """

    kind: OperatorKind

    def __init__(self, psf: Psf):
        self.psf = psf
        self.x_min, self.x_max, self.y_min, self.y_max = bounding_box(psf)
        # replicate pads needed to cover every tap offset
        self.pads = (
            max(0, -self.x_min),
            max(0, self.x_max),
            max(0, -self.y_min),
            max(0, self.y_max),
        )

    @property
    def supports_masking(self) -> bool:
        return self.kind.supports_masking

    def pad(self, pixels: np.ndarray) -> np.ndarray:
        left, right, top, bottom = self.pads
        return _pad_edge(pixels, left, right, top, bottom)

    @abstractmethod
    def _run(self, pixels: np.ndarray, counter: np.ndarray) -> np.ndarray:
        """Full-image evaluation on a raw float64 array."""

    def _run_masked(
        self, pixels: np.ndarray, mask: np.ndarray, fallback: np.ndarray, counter: np.ndarray
    ) -> np.ndarray:
        raise OperatorMismatchError(
            f"operator does not support masked evaluation: {self.kind.label}"
        )

    def convolve_array(self, pixels: np.ndarray) -> np.ndarray:
        return self._run(np.ascontiguousarray(pixels, dtype=np.float64), new_counter())

    def convolve(self, img: Image) -> Image:
        """Convolve an image with the bound PSF."""
        return Image(self.convolve_array(img.pixels))

    def convolve_counted(self, img: Image) -> Tuple[Image, OpCounts]:
        """Convolve and report the arithmetic work done."""
        counter = new_counter()
        out = self._run(img.pixels, counter)
        return Image(out), OpCounts.from_counter(counter, img.width * img.height)

    def convolve_masked_array(
        self, pixels: np.ndarray, mask: np.ndarray, fallback: np.ndarray
    ) -> np.ndarray:
        if not self.supports_masking:
            raise OperatorMismatchError(
                f"operator does not support masked evaluation: {self.kind.label}"
            )
        if mask.shape != pixels.shape or fallback.shape != pixels.shape:
            raise ValueError(
                f"Mask {mask.shape} and fallback {fallback.shape} must match image {pixels.shape}"
            )
        return self._run_masked(
            np.ascontiguousarray(pixels, dtype=np.float64),
            np.ascontiguousarray(mask, dtype=np.bool_),
            np.ascontiguousarray(fallback, dtype=np.float64),
            new_counter(),
        )

    def convolve_masked(self, img: Image, mask: np.ndarray, fallback: Image) -> Image:
        """
        Convolve only where `mask` is True; copy `fallback` elsewhere.

        Raises:
            OperatorMismatchError: If this operator has no masked evaluation
            ValueError: If mask or fallback size differs from the image
        """
        return Image(self.convolve_masked_array(img.pixels, np.asarray(mask), fallback.pixels))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.psf!r})"
