"""Time-series CSV output for diagnostics records.

One row per sink invocation; the header is written once.  Floats are
serialized with 17 significant digits so a re-parse reproduces the exact
binary values.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .diagnostics import DiagnosticsRecord


def format_value(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


class SeriesWriter:
    """Append DiagnosticsRecord rows to a text sink."""

    def __init__(self, sink):
        self._sink = sink
        self._wrote_header = False

    def append(self, record: DiagnosticsRecord) -> None:
        if not self._wrote_header:
            self._sink.write(",".join(DiagnosticsRecord.column_names()) + "\n")
            self._wrote_header = True
        self._sink.write(",".join(format_value(v) for v in record.row()) + "\n")


def append_series(record: DiagnosticsRecord, sink) -> None:
    """One-shot append usable without holding a writer (header state lives on
    the sink object)."""
    if not getattr(sink, "_series_header_done", False):
        sink.write(",".join(DiagnosticsRecord.column_names()) + "\n")
        sink._series_header_done = True
    sink.write(",".join(format_value(v) for v in record.row()) + "\n")


def read_series(text: str) -> dict[str, np.ndarray]:
    """Parse a series CSV back into named column arrays."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        return {}
    names = rows[0]
    cols = {name: [] for name in names}
    for row in rows[1:]:
        if not row:
            continue
        for name, cell in zip(names, row):
            cols[name].append(float(cell))
    return {name: np.asarray(vals) for name, vals in cols.items()}


def load_series(path) -> dict[str, np.ndarray]:
    with open(path, "r", encoding="utf-8") as fh:
        return read_series(fh.read())
