"""
Spatial convolution operators.

Every operator computes the same replicate-boundary convolution (the
Fourier reference is periodic); they differ in which PSFs they accept and
in cost. `dispatch` picks the most specific applicable one.
"""

from .base import ConvOperator
from .box import (
    Box1dCumulatedOperator,
    Box1dSlidingOperator,
    Box2dCumulatedOperator,
    Box2dSlidingOperator,
    CumulatedSumArray,
    box1d_cumulated_convolve,
    box1d_sliding_convolve,
    box2d_cumulated_convolve,
    box2d_sliding_convolve,
)
from .counters import OpCounts
from .dispatch import (
    OPERATORS,
    accepts,
    applicable_kinds,
    convolve,
    convolve_counted,
    dispatch,
    dispatch_masked,
    make_operator,
    masked_convolve,
)
from .fourier import FourierOperator, fourier_convolve
from .generic_box import GenericBoxOperator, generic_box_convolve
from .kinds import AUTO, OPERATOR_NAMES, TABLE_ORDER, OperatorKind, OperatorMismatchError
from .list_filter import ListOperator, list_convolve
from .naive import NaiveOperator, naive_convolve

__all__ = [
    # Kinds
    "AUTO",
    "OperatorKind",
    "OperatorMismatchError",
    "OPERATOR_NAMES",
    "TABLE_ORDER",
    "OpCounts",
    # Operators
    "ConvOperator",
    "NaiveOperator",
    "ListOperator",
    "GenericBoxOperator",
    "Box1dSlidingOperator",
    "Box1dCumulatedOperator",
    "Box2dSlidingOperator",
    "Box2dCumulatedOperator",
    "FourierOperator",
    "CumulatedSumArray",
    # Functional API
    "naive_convolve",
    "list_convolve",
    "generic_box_convolve",
    "box1d_sliding_convolve",
    "box1d_cumulated_convolve",
    "box2d_sliding_convolve",
    "box2d_cumulated_convolve",
    "fourier_convolve",
    # Dispatch
    "OPERATORS",
    "accepts",
    "applicable_kinds",
    "dispatch",
    "dispatch_masked",
    "make_operator",
    "convolve",
    "convolve_counted",
    "masked_convolve",
]
