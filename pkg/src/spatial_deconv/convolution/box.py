"""
Box filters for uniform lines and rectangles.

Two families, each in a 1D (horizontal line) and 2D (rectangle) flavour:

- sliding window: a running sum updated with one addition and one
  subtraction per output pixel, O(N_y (N_x + M)) per pass
- cumulated sums: prefix sums over the padded image, then each output
  pixel is a difference of 2 (1D) or 4 (2D) array entries

The line operators read the source row with clamped column indices instead
of padding the image first.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from ..core import Image
from ..psf import Psf, is_uniform_line, make_box_psf, make_line_psf, rectangle_extent
from .base import ConvOperator
from .counters import SETUP, UPDATE, new_counter
from .kinds import OperatorKind, OperatorMismatchError


@njit(cache=True)
def _slide_rows(src, row_start, x_start, length, out, counter):
    # out[y, x] = sum of src[y + row_start, x + x_start : x + x_start + length]
    n_rows, n_cols = out.shape
    for y in range(n_rows):
        row = y + row_start
        s = 0.0
        for c in range(x_start, x_start + length):
            s += src[row, c]
        counter[SETUP] += length
        out[y, 0] = s
        for x in range(1, n_cols):
            s += src[row, x + x_start + length - 1] - src[row, x + x_start - 1]
            out[y, x] = s
        counter[UPDATE] += 2 * (n_cols - 1)


@njit(cache=True)
def _slide_line(src, dy, x_min, length, weight, out, counter):
    # replicate boundary through clamped indices; src has the output's shape
    ny, nx = out.shape
    last_row = ny - 1
    last = nx - 1
    for y in range(ny):
        line = src[min(max(y + dy, 0), last_row)]
        ref = line[0]
        s = 0.0
        for c in range(x_min, x_min + length):
            s += line[min(max(c, 0), last)] - ref
        counter[SETUP] += length
        out[y, 0] = ref + s * weight
        for x in range(1, nx):
            hi = min(max(x + x_min + length - 1, 0), last)
            lo = min(max(x + x_min - 1, 0), last)
            s += line[hi] - line[lo]
            out[y, x] = ref + s * weight
        counter[UPDATE] += 2 * (nx - 1)


@njit(cache=True)
def _cumulate_line(src, dy, x_min, length, weight, out, counter):
    ny, nx = out.shape
    last_row = ny - 1
    last = nx - 1
    width = nx + length - 1
    v = np.empty(width + 1)
    for y in range(ny):
        line = src[min(max(y + dy, 0), last_row)]
        ref = line[0]
        v[0] = 0.0
        for i in range(width):
            v[i + 1] = v[i] + (line[min(max(i + x_min, 0), last)] - ref)
        counter[SETUP] += width
        for x in range(nx):
            out[y, x] = ref + (v[x + length] - v[x]) * weight
        counter[UPDATE] += nx


@njit(cache=True)
def _row_prefix_sums(src, ref, counter):
    h, w = src.shape
    v = np.empty((h, w + 1))
    for k in range(h):
        v[k, 0] = 0.0
        for i in range(w):
            v[k, i + 1] = v[k, i] + (src[k, i] - ref)
    counter[SETUP] += h * w
    return v


@njit(cache=True)
def _integral_image(src, ref, counter):
    h, w = src.shape
    v = np.zeros((h + 1, w + 1))
    for k in range(h):
        row_sum = 0.0
        for i in range(w):
            row_sum += src[k, i] - ref
            v[k + 1, i + 1] = v[k, i + 1] + row_sum
    counter[SETUP] += 2 * h * w
    return v


@njit(cache=True)
def _box2d_lookup(v, ref, y_start, x_start, my, mx, weight, out, counter):
    ny, nx = out.shape
    for y in range(ny):
        y0 = y + y_start
        for x in range(nx):
            x0 = x + x_start
            box = v[y0 + my, x0 + mx] - v[y0, x0 + mx] - v[y0 + my, x0] + v[y0, x0]
            out[y, x] = ref + box * weight
        counter[UPDATE] += 3 * nx


@dataclass(frozen=True, eq=False)
class CumulatedSumArray:
    """
    Prefix sums with a leading zero entry per axis.

    1D (per scan-line): values has shape (rows, width + 1) and
    at(k, i) = sum of row k up to and including column i.

    2D (integral image): values has shape (height + 1, width + 1) and
    at(k, l) = sum of all pixels in rows <= k and columns <= l.

    The stored sums are of `pixel - reference`; `at` adds the reference
    back, so lookups see plain sums either way.
    """

    values: np.ndarray
    ndim: int
    reference: float = 0.0

    @classmethod
    def of_rows(
        cls, pixels: np.ndarray, counter: Optional[np.ndarray] = None, reference: float = 0.0
    ) -> "CumulatedSumArray":
        counter = new_counter() if counter is None else counter
        src = np.ascontiguousarray(pixels, dtype=np.float64)
        return cls(_row_prefix_sums(src, reference, counter), 1, reference)

    @classmethod
    def integral(
        cls, pixels: np.ndarray, counter: Optional[np.ndarray] = None, reference: float = 0.0
    ) -> "CumulatedSumArray":
        counter = new_counter() if counter is None else counter
        src = np.ascontiguousarray(pixels, dtype=np.float64)
        return cls(_integral_image(src, reference, counter), 2, reference)

    def at(self, k: int, i: int) -> float:
        if self.ndim == 1:
            return float(self.values[k, i + 1]) + self.reference * (i + 1)
        return float(self.values[k + 1, i + 1]) + self.reference * (k + 1) * (i + 1)


class _BoxOperator(ConvOperator):
    """Shared extent handling for the line/rectangle operators."""

    needs_line = False

    def __init__(self, psf: Psf):
        extent = rectangle_extent(psf)
        if extent is None or (self.needs_line and not is_uniform_line(psf)):
            shape = "uniform horizontal line" if self.needs_line else "uniform rectangle"
            raise OperatorMismatchError(
                f"operator {self.kind.label} cannot evaluate {psf!r}: not a {shape}"
            )
        super().__init__(psf)

        left, _, top, _ = self.pads
        self.mx = self.x_max - self.x_min + 1
        self.my = self.y_max - self.y_min + 1
        self.x_start = left + self.x_min
        self.y_start = top + self.y_min
        self.weight = 1.0 / (self.mx * self.my)


class Box1dSlidingOperator(_BoxOperator):
    """Sliding window along each scan-line, one add + one subtract per pixel."""

    kind = OperatorKind.BOX1D_SLIDING
    needs_line = True

    def _run(self, pixels, counter):
        out = np.empty(pixels.shape)
        _slide_line(pixels, self.y_min, self.x_min, self.mx, self.weight, out, counter)
        return out


class Box1dCumulatedOperator(_BoxOperator):
    """Per-line cumulated sums, then one subtraction per pixel."""

    kind = OperatorKind.BOX1D_CUMULATED
    needs_line = True

    def _run(self, pixels, counter):
        out = np.empty(pixels.shape)
        _cumulate_line(pixels, self.y_min, self.x_min, self.mx, self.weight, out, counter)
        return out


class Box2dSlidingOperator(_BoxOperator):
    """
    Separable rectangle: sliding window in x, then in y (or y, then x).

    The whole 2D domain is replicate-padded before the first pass so the
    second pass reads true replicate values, not filtered pads.
    """

    kind = OperatorKind.BOX2D_SLIDING

    def __init__(self, psf: Psf, order: str = "xy"):
        if order not in ("xy", "yx"):
            raise ValueError(f"Pass order must be 'xy' or 'yx', got {order!r}")
        super().__init__(psf)
        self.order = order

    def _run(self, pixels, counter):
        ny, nx = pixels.shape
        padded = self.pad(pixels)
        ref = float(padded[0, 0])
        padded -= ref

        if self.order == "xy":
            rows = np.empty((padded.shape[0], nx))
            _slide_rows(padded, 0, self.x_start, self.mx, rows, counter)
            columns = np.empty((nx, ny))
            _slide_rows(np.ascontiguousarray(rows.T), 0, self.y_start, self.my, columns, counter)
            out = np.ascontiguousarray(columns.T)
        else:
            columns = np.empty((padded.shape[1], ny))
            _slide_rows(np.ascontiguousarray(padded.T), 0, self.y_start, self.my, columns, counter)
            out = np.empty((ny, nx))
            _slide_rows(np.ascontiguousarray(columns.T), 0, self.x_start, self.mx, out, counter)

        out *= self.weight
        out += ref
        return out


class Box2dCumulatedOperator(_BoxOperator):
    """Integral image over the padded domain, then 4 lookups per pixel."""

    kind = OperatorKind.BOX2D_CUMULATED

    def _run(self, pixels, counter):
        ny, nx = pixels.shape
        padded = self.pad(pixels)
        # table of deviations from the corner pixel
        sums = CumulatedSumArray.integral(padded, counter, reference=float(padded[0, 0]))
        out = np.empty((ny, nx))
        _box2d_lookup(
            sums.values,
            sums.reference,
            self.y_start,
            self.x_start,
            self.my,
            self.mx,
            self.weight,
            out,
            counter,
        )
        return out


def box1d_sliding_convolve(img: Image, length: int) -> Image:
    """
    Horizontal line blur of `length` pixels via a sliding window.

    Example:
        >>> box1d_sliding_convolve(Image.from_rows([[1, 2, 3, 4, 5]]), 3).pixels[0, 1]
        2.0
    """
    return Box1dSlidingOperator(make_line_psf(length)).convolve(img)


def box1d_cumulated_convolve(img: Image, length: int) -> Image:
    """Horizontal line blur of `length` pixels via per-line cumulated sums."""
    return Box1dCumulatedOperator(make_line_psf(length)).convolve(img)


def box2d_sliding_convolve(img: Image, mx: int, my: int, order: str = "xy") -> Image:
    """Uniform mx x my rectangle blur via two separable sliding-window passes."""
    return Box2dSlidingOperator(make_box_psf(mx, my), order=order).convolve(img)


def box2d_cumulated_convolve(img: Image, mx: int, my: int) -> Image:
    """Uniform mx x my rectangle blur via an integral image."""
    return Box2dCumulatedOperator(make_box_psf(mx, my)).convolve(img)
