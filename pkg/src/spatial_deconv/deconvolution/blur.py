"""Synthetic blur generation: f = g * h (+ optional Gaussian noise)."""

import logging
from typing import Optional

import numpy as np

from ..convolution import AUTO, FourierOperator, OperatorMismatchError, convolve, dispatch
from ..convolution.kinds import OperatorKind, Preference
from ..core import Image
from ..psf import Psf

logger = logging.getLogger(__name__)

CYCLIC = "cyclic"
REPLICATE = "replicate"
BLUR_MODES = (CYCLIC, REPLICATE)


def add_noise(img: Image, sigma: float, seed: Optional[int] = 0) -> Image:
    """
    Add zero-mean Gaussian noise, clamping the result at 0.

    The same seed always gives the same noise field.

    Example:
        >>> add_noise(img, 2.0, seed=7).allclose(add_noise(img, 2.0, seed=7))
        True
    """
    if not sigma >= 0:
        raise ValueError(f"Noise sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return img

    rng = np.random.default_rng(seed)
    noisy = img.pixels + rng.normal(0.0, sigma, size=img.shape)
    return Image(np.maximum(noisy, 0.0))


def replicate_kind(h: Psf, preference: Preference = AUTO) -> OperatorKind:
    """
    Operator for a replicate-boundary blur.

    Raises:
        OperatorMismatchError: If the preference cannot evaluate h, or names
            the periodic Fourier operator
    """
    kind = dispatch(h, preference)
    if not kind.is_spatial:
        raise OperatorMismatchError(
            f"replicate blur needs a spatial operator, got {kind.label} (periodic boundary)"
        )
    return kind


def blur_image(
    g: Image,
    h: Psf,
    mode: str = CYCLIC,
    preference: Preference = AUTO,
    noise_sigma: float = 0.0,
    seed: Optional[int] = 0,
) -> Image:
    """
    Blur a sharp image with a PSF.

    Args:
        g: Sharp image
        h: PSF
        mode: "cyclic" (Fourier, periodic boundary, wrap-around at the
            edges) or "replicate" (dispatched spatial operator)
        preference: Operator preference for replicate mode; must be spatial
        noise_sigma: Standard deviation of additive Gaussian noise
        seed: Noise seed

    Returns:
        Blurred image, clamped at 0

    Raises:
        ValueError: On an unknown mode
        OperatorMismatchError: If replicate mode is given a non-spatial operator

    Example:
        >>> blurred = blur_image(cameraman, make_disc_psf(9))
    """
    if mode == CYCLIC:
        blurred = FourierOperator(h).convolve_array(g.pixels)
    elif mode == REPLICATE:
        blurred = convolve(g, h, replicate_kind(h, preference)).pixels
    else:
        raise ValueError(f"Blur mode must be one of {BLUR_MODES}, got {mode!r}")

    logger.debug(f"Blurred {g!r} with {h!r} ({mode})")
    # transform round-off can leave tiny negatives
    return add_noise(Image(np.maximum(blurred, 0.0)), noise_sigma, seed)
