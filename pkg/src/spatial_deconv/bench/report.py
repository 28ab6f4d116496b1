"""Benchmark report rows, CSV emission and terminal tables."""

import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, Optional

CSV_COLUMNS = (
    "experiment",
    "operator",
    "psf",
    "mean_s",
    "stddev_s",
    "omitted_pct",
    "snr_orig_db",
    "snr_ref_db",
    "speedup",
)


@dataclass(frozen=True)
class BenchRow:
    """
    One cell of a runtime table or one row of the thinning table.

    Fields left as None are absent (operator not applicable, or the
    column does not apply to the experiment).
    """

    experiment: str
    operator: str
    psf: str
    mean_s: Optional[float] = None
    stddev_s: Optional[float] = None
    omitted_pct: Optional[float] = None
    snr_orig_db: Optional[float] = None
    snr_ref_db: Optional[float] = None
    speedup: Optional[float] = None

    @property
    def absent(self) -> bool:
        return self.mean_s is None


@dataclass
class BenchReport:
    experiment: str
    rows: List[BenchRow] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, row: BenchRow) -> None:
        self.rows.append(row)

    def find(self, operator: str, psf: str) -> Optional[BenchRow]:
        for row in self.rows:
            if row.operator == operator and row.psf == psf:
                return row
        return None

    def to_table(self) -> str:
        """Fixed-width text rendering; absent cells show as '---'."""
        header = (
            "operator", "psf", "time (s)", "stddev", "omitted %", "SNR orig", "SNR ref", "speedup"
        )
        lines = [
            [
                row.operator,
                row.psf,
                _fmt(row.mean_s, 4),
                _fmt(row.stddev_s, 4),
                _fmt(row.omitted_pct),
                _fmt(row.snr_orig_db),
                _fmt(row.snr_ref_db),
                _fmt(row.speedup),
            ]
            for row in self.rows
        ]
        widths = [max([len(h)] + [len(line[i]) for line in lines]) for i, h in enumerate(header)]

        def render(cells) -> str:
            return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

        out = [f"[{self.experiment}]", render(header), render("-" * w for w in widths)]
        out.extend(render(line) for line in lines)
        out.extend(f"note: {note}" for note in self.notes)
        return "\n".join(out)


def _fmt(value: Optional[float], digits: int = 2, empty: str = "---") -> str:
    if value is None:
        return empty
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}f}"


def emit_csv(report: BenchReport) -> bytes:
    """
    Serialise a report as UTF-8 CSV with LF line endings.

    Columns are fixed (see CSV_COLUMNS); numbers carry two decimals and
    absent cells are empty fields. An empty report yields the header only.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        writer.writerow(
            [
                row.experiment,
                row.operator,
                row.psf,
                _fmt(row.mean_s, empty=""),
                _fmt(row.stddev_s, empty=""),
                _fmt(row.omitted_pct, empty=""),
                _fmt(row.snr_orig_db, empty=""),
                _fmt(row.snr_ref_db, empty=""),
                _fmt(row.speedup, empty=""),
            ]
        )
    return buffer.getvalue().encode("utf-8")
