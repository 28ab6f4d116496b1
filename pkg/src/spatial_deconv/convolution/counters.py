"""Operation counters for checking the cost model of each operator."""

from dataclasses import dataclass

import numpy as np

# slots of the int64 counter array handed to the compiled kernels
SETUP = 0
UPDATE = 1
TAPS = 2


def new_counter() -> np.ndarray:
    return np.zeros(3, dtype=np.int64)


@dataclass(frozen=True)
class OpCounts:
    """
    Arithmetic work done by one convolution call.

    Attributes:
        setup_ops: Window initialisation and cumulated-sum construction
        update_ops: Additions/subtractions producing output pixels from
            window sums (sliding updates, cumulated-sum differences)
        tap_visits: Multiply-adds over individual PSF taps
        pixels: Number of output pixels evaluated
    """

    setup_ops: int
    update_ops: int
    tap_visits: int
    pixels: int

    @classmethod
    def from_counter(cls, counter: np.ndarray, pixels: int) -> "OpCounts":
        return cls(
            setup_ops=int(counter[SETUP]),
            update_ops=int(counter[UPDATE]),
            tap_visits=int(counter[TAPS]),
            pixels=int(pixels),
        )

    @property
    def update_per_pixel(self) -> float:
        return self.update_ops / self.pixels if self.pixels else 0.0

    @property
    def taps_per_pixel(self) -> float:
        return self.tap_visits / self.pixels if self.pixels else 0.0

    @property
    def total(self) -> int:
        return self.setup_ops + self.update_ops + self.tap_visits
