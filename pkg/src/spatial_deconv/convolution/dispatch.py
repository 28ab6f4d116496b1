"""
Operator selection.

The most specific applicable operator is the fastest: box filters for
uniform lines and rectangles, the generic box filter for other uniform
row-convex shapes, the list filter for sparse PSFs and naive summation
for everything else.
"""

import logging
from typing import Dict, List, Tuple, Type

import numpy as np

from ..core import Image
from ..psf import (
    Psf,
    SparsePsf,
    UniformConvexPsf,
    is_uniform_line,
    rectangle_extent,
    to_uniform_convex,
)
from .base import ConvOperator
from .box import (
    Box1dCumulatedOperator,
    Box1dSlidingOperator,
    Box2dCumulatedOperator,
    Box2dSlidingOperator,
)
from .counters import OpCounts
from .fourier import FourierOperator
from .generic_box import GenericBoxOperator
from .kinds import (
    TABLE_ORDER,
    OperatorKind,
    OperatorMismatchError,
    Preference,
    resolve_preference,
)
from .list_filter import ListOperator
from .naive import NaiveOperator

logger = logging.getLogger(__name__)

OPERATORS: Dict[OperatorKind, Type[ConvOperator]] = {
    OperatorKind.NAIVE: NaiveOperator,
    OperatorKind.LIST: ListOperator,
    OperatorKind.GENERIC_BOX: GenericBoxOperator,
    OperatorKind.BOX2D_SLIDING: Box2dSlidingOperator,
    OperatorKind.BOX2D_CUMULATED: Box2dCumulatedOperator,
    OperatorKind.BOX1D_SLIDING: Box1dSlidingOperator,
    OperatorKind.BOX1D_CUMULATED: Box1dCumulatedOperator,
    OperatorKind.FOURIER: FourierOperator,
}


def _is_row_convex(psf: Psf) -> bool:
    try:
        to_uniform_convex(psf)
    except ValueError:
        return False
    return True


def accepts(kind: OperatorKind, psf: Psf) -> bool:
    """True if operator `kind` can evaluate `psf`."""
    if kind in (OperatorKind.NAIVE, OperatorKind.LIST, OperatorKind.FOURIER):
        return True
    if kind is OperatorKind.GENERIC_BOX:
        return _is_row_convex(psf)
    if kind in (OperatorKind.BOX2D_SLIDING, OperatorKind.BOX2D_CUMULATED):
        return rectangle_extent(psf) is not None
    return is_uniform_line(psf)


def applicable_kinds(psf: Psf) -> List[OperatorKind]:
    """
    Every operator able to evaluate `psf`, in runtime-table row order.

    Example:
        >>> [k.label for k in applicable_kinds(make_disc_psf(9))]
        ['naive', 'fourier', 'list', 'generic-box']
    """
    return [kind for kind in TABLE_ORDER if accepts(kind, psf)]


def _auto_kind(psf: Psf) -> OperatorKind:
    if isinstance(psf, SparsePsf):
        return OperatorKind.LIST
    if is_uniform_line(psf):
        return OperatorKind.BOX1D_CUMULATED
    if rectangle_extent(psf) is not None:
        return OperatorKind.BOX2D_CUMULATED
    if isinstance(psf, UniformConvexPsf) or _is_row_convex(psf):
        return OperatorKind.GENERIC_BOX
    return OperatorKind.NAIVE


def dispatch(psf: Psf, preference: Preference = "auto") -> OperatorKind:
    """
    Choose the operator kind for a PSF.

    Args:
        psf: Any PSF representation
        preference: OperatorKind, operator name, or "auto"

    Returns:
        The preferred kind if it accepts the PSF; for "auto" the most
        specific applicable spatial operator

    Raises:
        OperatorMismatchError: If an explicit preference cannot evaluate the PSF
        ValueError: If the preference names no operator

    Example:
        >>> dispatch(make_line_psf(17))
        <OperatorKind.BOX1D_CUMULATED: 'box1d-cumul'>
    """
    kind = resolve_preference(preference)
    if kind is None:
        return _auto_kind(psf)

    if not accepts(kind, psf):
        raise OperatorMismatchError(
            f"operator {kind.label} cannot evaluate {psf!r} "
            f"(it accepts {kind.accepted_psfs})"
        )
    return kind


def dispatch_masked(psf: Psf, preference: Preference = "auto") -> OperatorKind:
    """
    Choose an operator with masked evaluation: list for sparse PSFs, else naive.

    Raises:
        OperatorMismatchError: If an explicit preference has no masked evaluation
    """
    kind = resolve_preference(preference)
    if kind is None:
        return OperatorKind.LIST if isinstance(psf, SparsePsf) else OperatorKind.NAIVE
    if not kind.supports_masking:
        raise OperatorMismatchError(
            f"operator does not support masked evaluation: {kind.label}"
        )
    return kind


def make_operator(psf: Psf, preference: Preference = "auto") -> ConvOperator:
    """Instantiate the dispatched operator, bound to `psf`."""
    kind = dispatch(psf, preference)
    logger.debug(f"Using {kind.label} operator for {psf!r}")
    return OPERATORS[kind](psf)


def convolve(img: Image, psf: Psf, preference: Preference = "auto") -> Image:
    """
    Replicate-boundary convolution with the dispatched operator.

    Example:
        >>> blurred = convolve(img, make_disc_psf(9))          # generic box
        >>> blurred = convolve(img, make_disc_psf(9), "naive")  # oracle
    """
    return make_operator(psf, preference).convolve(img)


def convolve_counted(
    img: Image, psf: Psf, preference: Preference = "auto"
) -> Tuple[Image, OpCounts]:
    """Convolve and return the operation counts of the call."""
    return make_operator(psf, preference).convolve_counted(img)


def masked_convolve(
    img: Image,
    psf: Psf,
    mask: np.ndarray,
    fallback: Image,
    preference: Preference = "auto",
) -> Image:
    """
    Evaluate the convolution only at pixels where `mask` is True.

    Args:
        img: Input image
        psf: PSF to convolve with
        mask: Boolean array (height, width); True marks active pixels
        fallback: Values copied at inactive pixels
        preference: "naive", "list" or "auto"

    Raises:
        OperatorMismatchError: "operator does not support masked evaluation"
            for any other operator
    """
    kind = dispatch_masked(psf, preference)
    return OPERATORS[kind](psf).convolve_masked(img, mask, fallback)
