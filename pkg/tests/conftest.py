"""Shared fixtures: seeded random images and a synthetic natural-like test image."""

from pathlib import Path

import numpy as np
import pytest

from spatial_deconv.core import Image, save_pgm


def natural_image(size: int = 256, seed: int = 7) -> Image:
    """
    Smooth shading plus hard-edged shapes and fine stripes, values in [5, 250].

    Stands in for a photograph: large flat regions (where thinning pays off)
    next to edges and texture (where it does not).
    """
    y, x = np.mgrid[0:size, 0:size] / float(size)
    pixels = 90.0 + 50.0 * np.sin(2 * np.pi * 1.5 * x) * np.cos(2 * np.pi * y) + 40.0 * x

    pixels[(x - 0.35) ** 2 + (y - 0.4) ** 2 < 0.18 ** 2] += 70.0
    pixels[(x > 0.6) & (x < 0.85) & (y > 0.55) & (y < 0.8)] -= 50.0
    band = (y > 0.1) & (y < 0.25)
    pixels[band] += 20.0 * np.sign(np.sin(2 * np.pi * 12 * x[band]))

    rng = np.random.default_rng(seed)
    pixels += rng.uniform(-3.0, 3.0, size=pixels.shape)
    return Image(np.clip(pixels, 5.0, 250.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_image(rng):
    """Factory for uniform random images with values in [low, high)."""

    def make(width: int, height: int, low: float = 0.0, high: float = 255.0) -> Image:
        return Image(rng.uniform(low, high, size=(height, width)))

    return make


@pytest.fixture(scope="session")
def natural_256():
    return natural_image(256)


@pytest.fixture(scope="session")
def natural_64():
    return natural_image(64)


@pytest.fixture
def integer_image(rng):
    """Factory for random images with integer grey values, as read from PGM files."""

    def make(width: int, height: int) -> Image:
        return Image(rng.integers(0, 256, size=(height, width)).astype(np.float64))

    return make


@pytest.fixture
def natural_32():
    return natural_image(32)


@pytest.fixture
def pgm_file(tmp_path):
    """Write an image to a PGM file in tmp_path and return the path."""

    def write(img: Image, name: str = "image.pgm") -> Path:
        return save_pgm(img, tmp_path / name)

    return write
