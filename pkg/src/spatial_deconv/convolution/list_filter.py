"""List filter: summation over the support taps of a sparse PSF."""

import numpy as np
from numba import njit

from ..core import Image
from ..psf import Psf, to_sparse
from .base import ConvOperator
from .counters import TAPS
from .kinds import OperatorKind


@njit(cache=True)
def _list_kernel(padded, dxs, dys, ws, left, top, mask, fallback, out, counter):
    # an empty mask means every pixel is active
    ny, nx = out.shape
    n_taps = ws.shape[0]
    use_mask = mask.shape[0] > 0
    acc = np.empty(nx)
    cols = np.empty(nx, dtype=np.int64)
    for y in range(ny):
        ref = padded[y + top, left:left + nx]
        n_active = nx
        if use_mask:
            n_active = 0
            for x in range(nx):
                if mask[y, x]:
                    cols[n_active] = x
                    n_active += 1
                else:
                    out[y, x] = fallback[y, x]

        # taps outside, pixels inside; each pixel still sums its taps in list order
        if n_active == nx:
            for x in range(nx):
                acc[x] = 0.0
            for t in range(n_taps):
                src = padded[y + top + dys[t], left + dxs[t]:left + dxs[t] + nx]
                w = ws[t]
                for x in range(nx):
                    acc[x] += w * (src[x] - ref[x])
            for x in range(nx):
                out[y, x] = ref[x] + acc[x]
        elif n_active > 0:
            for j in range(n_active):
                acc[j] = 0.0
            for t in range(n_taps):
                src = padded[y + top + dys[t], left + dxs[t]:left + dxs[t] + nx]
                w = ws[t]
                for j in range(n_active):
                    x = cols[j]
                    acc[j] += w * (src[x] - ref[x])
            for j in range(n_active):
                x = cols[j]
                out[y, x] = ref[x] + acc[j]
        counter[TAPS] += n_taps * n_active


class ListOperator(ConvOperator):
    """Visits exactly M support taps per pixel, O(N_x N_y M)."""

    kind = OperatorKind.LIST

    def __init__(self, psf: Psf):
        self.sparse = to_sparse(psf)
        super().__init__(self.sparse)
        self._dxs, self._dys, self._ws = self.sparse.as_arrays()

    def _run(self, pixels, counter):
        no_mask = np.empty((0, 0), dtype=np.bool_)
        return self._run_masked(pixels, no_mask, np.empty((0, 0)), counter)

    def _run_masked(self, pixels, mask, fallback, counter):
        left, _, top, _ = self.pads
        out = np.empty_like(pixels)
        _list_kernel(
            self.pad(pixels),
            self._dxs,
            self._dys,
            self._ws,
            left,
            top,
            mask,
            fallback,
            out,
            counter,
        )
        return out


def list_convolve(img: Image, psf: Psf) -> Image:
    """Replicate-boundary convolution over the sparse tap list of `psf`."""
    return ListOperator(psf).convolve(img)
