"""Reconstruction quality metrics."""

import math

import numpy as np

from .image import Image


def snr_db(reference: Image, test: Image) -> float:
    """
    Signal-to-noise ratio of a test image against a reference, in decibels.

    Computed as 10*log10(sum(reference^2) / sum((reference - test)^2)).

    Args:
        reference: Ground-truth image (not identically zero)
        test: Image to assess, same size as reference

    Returns:
        SNR in dB; math.inf when both images are identical

    Raises:
        ValueError: On size mismatch or an all-zero reference

    Example:
        >>> snr_db(Image.constant(10, 10, 10), Image.constant(10, 10, 11))
        20.0
    """
    if not reference.same_size(test):
        raise ValueError(
            f"Image sizes differ: reference {reference.width}x{reference.height}, "
            f"test {test.width}x{test.height}"
        )

    signal = float(np.sum(reference.pixels * reference.pixels))
    if signal == 0.0:
        raise ValueError("Reference image is identically zero")

    error = float(np.sum((reference.pixels - test.pixels) ** 2))
    if error == 0.0:
        return math.inf

    return 10.0 * math.log10(signal / error)


def format_db(value: float) -> str:
    """Two-decimal dB string; 'inf' for the zero-error sentinel."""
    return "inf" if math.isinf(value) else f"{value:.2f}"
