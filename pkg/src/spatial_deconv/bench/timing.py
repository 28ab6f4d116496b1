"""Wall-clock timing of repeated runs."""

import logging
import statistics
import time
from dataclasses import dataclass
from typing import Any, Callable, Sequence

logger = logging.getLogger(__name__)

# clocks coarser than this cannot resolve single RL runs at desk scale
MAX_CLOCK_RESOLUTION = 1e-3


def time_run(thunk: Callable[[], Any]) -> float:
    """Seconds taken by one call of `thunk`, on the monotonic performance clock."""
    start = time.perf_counter()
    thunk()
    return time.perf_counter() - start


def clock_resolution() -> float:
    return time.get_clock_info("perf_counter").resolution


def clock_is_coarse() -> bool:
    return clock_resolution() > MAX_CLOCK_RESOLUTION


@dataclass(frozen=True)
class TimingStats:
    """
    Summary of repeated timings.

    Attributes:
        mean: Mean seconds per run
        stddev: Population standard deviation (0 for a single sample)
        minimum: Fastest run
        samples: Number of runs
    """

    mean: float
    stddev: float
    minimum: float
    samples: int

    @classmethod
    def from_samples(cls, samples: Sequence[float]) -> "TimingStats":
        if not samples:
            raise ValueError("At least one timing sample is required")
        return cls(
            mean=statistics.fmean(samples),
            stddev=statistics.pstdev(samples),
            minimum=min(samples),
            samples=len(samples),
        )


def measure(thunk: Callable[[], Any], repetitions: int) -> TimingStats:
    """
    Time `repetitions` sequential calls of `thunk`.

    Example:
        >>> stats = measure(lambda: rl_deconvolve(f, h, cfg), repetitions=3)
        >>> stats.samples
        3
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    stats = TimingStats.from_samples([time_run(thunk) for _ in range(repetitions)])
    logger.debug(f"{repetitions} runs: mean {stats.mean:.4f}s, stddev {stats.stddev:.4f}s")
    return stats
