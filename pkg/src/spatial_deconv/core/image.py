"""Grey-value image container and replicate padding."""

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

ArrayLike = Union[np.ndarray, Sequence[Sequence[float]]]


def _frozen_array(values: ArrayLike) -> np.ndarray:
    array = np.array(values, dtype=np.float64, order="C", copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Image:
    """
    Row-major 2D grid of real grey values.

    Values are nominally in [0, 255] but are not clamped; only the PGM writer
    rounds and clamps. Instances are immutable: the pixel array is copied on
    construction and marked read-only.

    Args:
        pixels: 2D array of shape (height, width)

    Raises:
        ValueError: If the array is not 2D, is empty, or holds NaN/Inf

    Example:
        >>> img = Image.from_rows([[0, 64], [128, 255]])
        >>> img.width, img.height
        (2, 2)
    """

    pixels: np.ndarray

    def __post_init__(self):
        pixels = _frozen_array(self.pixels)

        if pixels.ndim != 2:
            raise ValueError(f"Image pixels must be 2D, got {pixels.ndim} dimension(s)")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"Image must be at least 1x1, got shape {pixels.shape}")
        if not np.isfinite(pixels).all():
            raise ValueError("Image pixels must be finite (found NaN or Inf)")

        object.__setattr__(self, "pixels", pixels)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[float]]) -> "Image":
        """Build an image from nested row lists."""
        return cls(np.array([list(row) for row in rows], dtype=np.float64))

    @classmethod
    def from_data(cls, width: int, height: int, data: Sequence[float]) -> "Image":
        """
        Build an image from a flat row-major sequence.

        Raises:
            ValueError: If len(data) != width * height
        """
        if width < 1 or height < 1:
            raise ValueError(f"Image size must be at least 1x1, got {width}x{height}")
        flat = np.asarray(data, dtype=np.float64).ravel()
        if flat.size != width * height:
            raise ValueError(
                f"Data length {flat.size} does not match {width}x{height} = {width * height}"
            )
        return cls(flat.reshape(height, width))

    @classmethod
    def constant(cls, width: int, height: int, value: float) -> "Image":
        return cls(np.full((height, width), float(value)))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple:
        """(height, width), numpy order."""
        return self.pixels.shape

    @property
    def data(self) -> np.ndarray:
        """Flat row-major view of the pixels, length width*height."""
        return self.pixels.ravel()

    def same_size(self, other: "Image") -> bool:
        return self.shape == other.shape

    def allclose(self, other: "Image", atol: float = 0.0) -> bool:
        """True if both images have equal size and agree within atol per pixel."""
        if not self.same_size(other):
            return False
        return bool(np.all(np.abs(self.pixels - other.pixels) <= atol))

    def __repr__(self) -> str:
        return f"Image({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class PaddedImage:
    """
    Image extended beyond its bounds by replicate continuation.

    Every pad pixel equals the nearest core pixel, so corners take the value
    of the nearest corner pixel.
    """

    core: Image
    pad_left: int
    pad_right: int
    pad_top: int
    pad_bottom: int
    pixels: np.ndarray

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def crop(self) -> Image:
        """Cut the padding away again."""
        bottom = self.pad_top + self.core.height
        right = self.pad_left + self.core.width
        return Image(self.pixels[self.pad_top:bottom, self.pad_left:right])


def pad_replicate_array(
    pixels: np.ndarray, left: int, right: int, top: int, bottom: int
) -> np.ndarray:
    """Replicate-pad a raw 2D array (used on the hot path by the operators)."""
    if min(left, right, top, bottom) < 0:
        raise ValueError(f"Pad sizes must be >= 0, got ({left}, {right}, {top}, {bottom})")
    return np.pad(pixels, ((top, bottom), (left, right)), mode="edge")


def pad_replicate(img: Image, left: int, right: int, top: int, bottom: int) -> PaddedImage:
    """
    Extend an image by constant continuation perpendicular to its boundary.

    Args:
        img: Image to pad
        left, right, top, bottom: Pad widths in pixels (>= 0)

    Returns:
        PaddedImage of size (width+left+right) x (height+top+bottom)

    Raises:
        ValueError: If any pad width is negative

    Example:
        >>> padded = pad_replicate(Image.from_rows([[1, 2, 3]]), 2, 2, 0, 0)
        >>> padded.pixels.tolist()
        [[1.0, 1.0, 1.0, 2.0, 3.0, 3.0, 3.0]]
    """
    pixels = pad_replicate_array(img.pixels, left, right, top, bottom)
    pixels.setflags(write=False)
    return PaddedImage(
        core=img,
        pad_left=left,
        pad_right=right,
        pad_top=top,
        pad_bottom=bottom,
        pixels=pixels,
    )
