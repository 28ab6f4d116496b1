"""
Point-spread function representations.

Three concrete forms are used by the convolution operators:

- DensePsf: weight grid with an anchor (naive and Fourier convolution)
- UniformConvexPsf: row extents of a uniform, row-convex support (generic box)
- SparsePsf: list of weighted taps (list filter)

All forms describe the same thing: a map from tap offset (dx, dy) to a
weight, with unit total mass. A convolution reads the input at
(x + dx, y + dy) for every tap.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple, Union

import numpy as np

MASS_TOLERANCE = 1e-12

Offset = Tuple[int, int]
Tap = Tuple[int, int, float]
Extent = Tuple[int, int, int]  # (dy, x_min, x_max)


@dataclass(frozen=True, eq=False)
class DensePsf:
    """
    PSF stored as an M_x x M_y weight grid.

    weights[j, i] is the weight of offset (i - ax, j - ay), with the anchor
    (ax, ay) marking the origin inside the grid. Weights are renormalised to
    unit mass on construction.

    Raises:
        ValueError: On negative/non-finite weights, zero mass or an anchor
            outside the grid
    """

    weights: np.ndarray
    anchor: Offset

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64, copy=True)
        if weights.ndim == 1:
            weights = weights[np.newaxis, :]
        if weights.ndim != 2 or weights.size == 0:
            raise ValueError(f"PSF weights must be a non-empty 2D grid, got shape {weights.shape}")
        if not np.isfinite(weights).all() or (weights < 0).any():
            raise ValueError("PSF weights must be finite and >= 0")

        mass = float(weights.sum())
        if mass <= 0:
            raise ValueError("PSF weights sum to zero")
        if abs(mass - 1.0) > MASS_TOLERANCE:
            weights = weights / mass
        weights.setflags(write=False)

        ax, ay = int(self.anchor[0]), int(self.anchor[1])
        height, width = weights.shape
        if not (0 <= ax < width and 0 <= ay < height):
            raise ValueError(f"Anchor ({ax}, {ay}) lies outside the {width}x{height} grid")

        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "anchor", (ax, ay))

    @property
    def width(self) -> int:
        return self.weights.shape[1]

    @property
    def height(self) -> int:
        return self.weights.shape[0]

    def iter_taps(self) -> Iterator[Tap]:
        """Nonzero taps in row-major grid order."""
        ax, ay = self.anchor
        for j, i in zip(*np.nonzero(self.weights)):
            yield (int(i) - ax, int(j) - ay, float(self.weights[j, i]))

    def weight_map(self) -> Dict[Offset, float]:
        return {(dx, dy): w for dx, dy, w in self.iter_taps()}

    @property
    def support_count(self) -> int:
        return int(np.count_nonzero(self.weights))

    def __repr__(self) -> str:
        return f"DensePsf({self.width}x{self.height}, anchor={self.anchor})"


@dataclass(frozen=True, eq=False)
class UniformConvexPsf:
    """
    Uniform-density PSF whose support is one contiguous interval per row.

    Args:
        rows: (dy, x_min, x_max) extents relative to the anchor, with dy
            strictly increasing by one from row to row

    Raises:
        ValueError: If rows are empty, not contiguous in dy, or an extent
            is inverted

    Example:
        >>> psf = UniformConvexPsf(((-1, 0, 0), (0, -1, 1), (1, 0, 0)))
        >>> psf.support_count, psf.uniform_weight
        (5, 0.2)
    """

    rows: Tuple[Extent, ...]

    def __post_init__(self):
        rows = tuple((int(dy), int(x_min), int(x_max)) for dy, x_min, x_max in self.rows)
        if not rows:
            raise ValueError("UniformConvexPsf needs at least one row")

        for index, (dy, x_min, x_max) in enumerate(rows):
            if x_min > x_max:
                raise ValueError(f"Row dy={dy}: x_min {x_min} > x_max {x_max}")
            if index and dy != rows[index - 1][0] + 1:
                raise ValueError(
                    f"Row offsets must be contiguous and increasing, got {rows[index - 1][0]} "
                    f"followed by {dy}"
                )

        object.__setattr__(self, "rows", rows)

    @property
    def support_count(self) -> int:
        return sum(x_max - x_min + 1 for _, x_min, x_max in self.rows)

    @property
    def uniform_weight(self) -> float:
        return 1.0 / self.support_count

    @property
    def height(self) -> int:
        """M_y, number of support rows."""
        return len(self.rows)

    @property
    def x_range(self) -> Tuple[int, int]:
        return min(r[1] for r in self.rows), max(r[2] for r in self.rows)

    @property
    def y_range(self) -> Tuple[int, int]:
        return self.rows[0][0], self.rows[-1][0]

    @property
    def width(self) -> int:
        x_lo, x_hi = self.x_range
        return x_hi - x_lo + 1

    def iter_taps(self) -> Iterator[Tap]:
        w = self.uniform_weight
        for dy, x_min, x_max in self.rows:
            for dx in range(x_min, x_max + 1):
                yield (dx, dy, w)

    def weight_map(self) -> Dict[Offset, float]:
        return {(dx, dy): w for dx, dy, w in self.iter_taps()}

    def __repr__(self) -> str:
        return f"UniformConvexPsf(rows={self.height}, support={self.support_count})"


@dataclass(frozen=True, eq=False)
class SparsePsf:
    """
    PSF given as a list of (dx, dy, weight) taps.

    Weights are arbitrary positive values, renormalised to unit sum.

    Raises:
        ValueError: On an empty list, duplicate offsets or nonpositive weights
    """

    taps: Tuple[Tap, ...]

    def __post_init__(self):
        taps = tuple((int(dx), int(dy), float(w)) for dx, dy, w in self.taps)
        if not taps:
            raise ValueError("SparsePsf needs at least one tap")

        seen = set()
        for dx, dy, w in taps:
            if (dx, dy) in seen:
                raise ValueError(f"Duplicate tap at offset ({dx}, {dy})")
            if not np.isfinite(w) or w <= 0:
                raise ValueError(f"Tap ({dx}, {dy}) has nonpositive weight {w}")
            seen.add((dx, dy))

        mass = sum(w for _, _, w in taps)
        if abs(mass - 1.0) > MASS_TOLERANCE:
            taps = tuple((dx, dy, w / mass) for dx, dy, w in taps)

        object.__setattr__(self, "taps", taps)

    def iter_taps(self) -> Iterator[Tap]:
        return iter(self.taps)

    def weight_map(self) -> Dict[Offset, float]:
        return {(dx, dy): w for dx, dy, w in self.taps}

    @property
    def support_count(self) -> int:
        return len(self.taps)

    @property
    def x_range(self) -> Tuple[int, int]:
        return min(t[0] for t in self.taps), max(t[0] for t in self.taps)

    @property
    def y_range(self) -> Tuple[int, int]:
        return min(t[1] for t in self.taps), max(t[1] for t in self.taps)

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(dx, dy, w) columns for the compiled list filter."""
        dxs = np.array([t[0] for t in self.taps], dtype=np.int64)
        dys = np.array([t[1] for t in self.taps], dtype=np.int64)
        ws = np.array([t[2] for t in self.taps], dtype=np.float64)
        return dxs, dys, ws

    def __repr__(self) -> str:
        return f"SparsePsf(taps={self.support_count})"


Psf = Union[DensePsf, UniformConvexPsf, SparsePsf]


def bounding_box(psf: Psf) -> Tuple[int, int, int, int]:
    """(x_min, x_max, y_min, y_max) offsets enclosing the support."""
    if isinstance(psf, DensePsf):
        ax, ay = psf.anchor
        return -ax, psf.width - 1 - ax, -ay, psf.height - 1 - ay
    x_lo, x_hi = psf.x_range
    y_lo, y_hi = psf.y_range
    return x_lo, x_hi, y_lo, y_hi


def adjoint(psf: Psf) -> Psf:
    """
    Reflect a PSF about the origin: tap (dx, dy) becomes (-dx, -dy).

    The representation is preserved; adjoint(adjoint(p)) equals p.

    Example:
        >>> adjoint(SparsePsf(((1, 2, 0.5), (0, 0, 0.5)))).taps
        ((-1, -2, 0.5), (0, 0, 0.5))
    """
    if isinstance(psf, DensePsf):
        ax, ay = psf.anchor
        return DensePsf(psf.weights[::-1, ::-1], (psf.width - 1 - ax, psf.height - 1 - ay))
    if isinstance(psf, UniformConvexPsf):
        rows = reversed(psf.rows)
        return UniformConvexPsf(tuple((-dy, -x_max, -x_min) for dy, x_min, x_max in rows))
    if isinstance(psf, SparsePsf):
        return SparsePsf(tuple((-dx, -dy, w) for dx, dy, w in psf.taps))
    raise TypeError(f"Not a PSF: {type(psf).__name__}")


def to_dense(psf: Psf) -> DensePsf:
    """Dense grid over the bounding box; absent offsets get weight 0."""
    if isinstance(psf, DensePsf):
        return psf

    x_lo, x_hi, y_lo, y_hi = bounding_box(psf)
    grid = np.zeros((y_hi - y_lo + 1, x_hi - x_lo + 1))
    for dx, dy, w in psf.iter_taps():
        grid[dy - y_lo, dx - x_lo] = w
    return DensePsf(grid, (-x_lo, -y_lo))


def to_sparse(psf: Psf) -> SparsePsf:
    """Tap list of the nonzero support, in row-major order."""
    if isinstance(psf, SparsePsf):
        return psf
    return SparsePsf(tuple(psf.iter_taps()))


def to_uniform_convex(psf: Psf, rtol: float = 1e-9) -> UniformConvexPsf:
    """
    Row extents of a uniform row-convex PSF.

    Raises:
        ValueError: If weights are not uniform, a row has a gap, or a row
            inside the support is empty
    """
    if isinstance(psf, UniformConvexPsf):
        return psf

    taps = list(psf.iter_taps())
    weights = np.array([w for _, _, w in taps])
    if not np.allclose(weights, weights[0], rtol=rtol, atol=0.0):
        raise ValueError("PSF weights are not uniform")

    by_row: Dict[int, list] = {}
    for dx, dy, _ in taps:
        by_row.setdefault(dy, []).append(dx)

    rows = []
    for dy in range(min(by_row), max(by_row) + 1):
        if dy not in by_row:
            raise ValueError(f"PSF support has an empty row at dy={dy}")
        columns = sorted(by_row[dy])
        if columns[-1] - columns[0] + 1 != len(columns):
            raise ValueError(f"PSF row dy={dy} is not a contiguous interval")
        rows.append((dy, columns[0], columns[-1]))

    return UniformConvexPsf(tuple(rows))


def rectangle_extent(psf: Psf) -> Optional[Tuple[int, int, int, int]]:
    """
    Bounding offsets if the PSF is a uniform, completely filled rectangle.

    Returns:
        (x_min, x_max, y_min, y_max) or None
    """
    try:
        convex = to_uniform_convex(psf)
    except ValueError:
        return None

    x_lo, x_hi = convex.x_range
    if any(x_min != x_lo or x_max != x_hi for _, x_min, x_max in convex.rows):
        return None
    y_lo, y_hi = convex.y_range
    return x_lo, x_hi, y_lo, y_hi


def is_uniform_line(psf: Psf) -> bool:
    """True for a uniform horizontal line (height-1 rectangle)."""
    extent = rectangle_extent(psf)
    return extent is not None and extent[2] == extent[3]


def weight_maps_close(a: Psf, b: Psf, atol: float = MASS_TOLERANCE) -> bool:
    """Compare the offset -> weight maps of two PSFs of any representation."""
    map_a, map_b = a.weight_map(), b.weight_map()
    if map_a.keys() != map_b.keys():
        return False
    return all(abs(map_a[k] - map_b[k]) <= atol for k in map_a)
