"""Operator kinds, their stable names and capabilities."""

from enum import Enum
from typing import Optional, Tuple, Union

AUTO = "auto"


class OperatorMismatchError(ValueError):
    """Raised when an operator cannot evaluate a PSF or mode it was asked for."""


class OperatorKind(Enum):
    """
    Convolution strategies, addressable by stable string names.

    Example:
        >>> OperatorKind.from_name("generic-box")
        <OperatorKind.GENERIC_BOX: 'generic-box'>
    """

    NAIVE = "naive"
    LIST = "list"
    GENERIC_BOX = "generic-box"
    BOX2D_SLIDING = "box2d-sliding"
    BOX2D_CUMULATED = "box2d-cumul"
    BOX1D_SLIDING = "box1d-sliding"
    BOX1D_CUMULATED = "box1d-cumul"
    FOURIER = "fourier"

    @property
    def label(self) -> str:
        return self.value

    @property
    def supports_masking(self) -> bool:
        """Only the per-pixel summation operators can skip individual pixels."""
        return self in (OperatorKind.NAIVE, OperatorKind.LIST)

    @property
    def is_spatial(self) -> bool:
        """False for the periodic-boundary Fourier reference."""
        return self is not OperatorKind.FOURIER

    @property
    def accepted_psfs(self) -> str:
        return _ACCEPTED[self]

    @classmethod
    def from_name(cls, name: str) -> "OperatorKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"Unknown operator {name!r}, expected one of: {names}") from None


_ACCEPTED = {
    OperatorKind.NAIVE: "any PSF (evaluated on its dense bounding grid)",
    OperatorKind.LIST: "any PSF (evaluated on its sparse tap list)",
    OperatorKind.GENERIC_BOX: "uniform PSFs with one contiguous interval per row",
    OperatorKind.BOX2D_SLIDING: "uniform, completely filled rectangles",
    OperatorKind.BOX2D_CUMULATED: "uniform, completely filled rectangles",
    OperatorKind.BOX1D_SLIDING: "uniform horizontal lines",
    OperatorKind.BOX1D_CUMULATED: "uniform horizontal lines",
    OperatorKind.FOURIER: "any PSF (periodic boundary)",
}

# Row order of the runtime comparison table
TABLE_ORDER: Tuple[OperatorKind, ...] = (
    OperatorKind.NAIVE,
    OperatorKind.FOURIER,
    OperatorKind.LIST,
    OperatorKind.GENERIC_BOX,
    OperatorKind.BOX2D_SLIDING,
    OperatorKind.BOX2D_CUMULATED,
    OperatorKind.BOX1D_SLIDING,
    OperatorKind.BOX1D_CUMULATED,
)

OPERATOR_NAMES: Tuple[str, ...] = tuple(k.value for k in OperatorKind) + (AUTO,)

Preference = Union[OperatorKind, str, None]


def resolve_preference(preference: Preference) -> Optional[OperatorKind]:
    """Map 'auto'/None to None and names to OperatorKind."""
    if preference is None or isinstance(preference, OperatorKind):
        return preference
    if preference.strip().lower() == AUTO:
        return None
    return OperatorKind.from_name(preference)
