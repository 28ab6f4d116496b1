"""
Benchmark harness: timing, the runtime and thinning experiments, reports.
"""

from .experiments import (
    EXPERIMENTS,
    TABLE1,
    TABLE1_PSFS,
    TABLE2,
    TABLE2_PSF,
    TABLE2_THRESHOLDS,
    BenchSpec,
    run_experiment,
    run_table1,
    run_table2,
    restored_name,
    thinned_label,
)
from .report import CSV_COLUMNS, BenchReport, BenchRow, emit_csv
from .timing import TimingStats, clock_resolution, measure, time_run

__all__ = [
    # Timing
    "time_run",
    "measure",
    "clock_resolution",
    "TimingStats",
    # Experiments
    "BenchSpec",
    "EXPERIMENTS",
    "TABLE1",
    "TABLE2",
    "TABLE1_PSFS",
    "TABLE2_PSF",
    "TABLE2_THRESHOLDS",
    "run_table1",
    "run_table2",
    "run_experiment",
    "thinned_label",
    "restored_name",
    # Reports
    "BenchRow",
    "BenchReport",
    "CSV_COLUMNS",
    "emit_csv",
]
