"""Report documents: deterministic tables in text, CSV, and JSON.

All exact numbers serialize as strings ("8", "3/2") so nothing passes
through binary floats.  Timing lives in a footer field that the text
renderer prints as a trailing comment and CSV omits entirely; everything
inside the data sections is byte-deterministic for fixed input and flags.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction


def cell_str(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


@dataclass
class Table:
    title: str
    columns: list
    rows: list  # list of lists, aligned with columns


@dataclass
class ReportDocument:
    command: str
    input_sha256: str
    tables: list = dc_field(default_factory=list)
    verdicts: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    timing_secs: float | None = None
    partial: bool = False

    def add_table(self, title, columns, rows):
        self.tables.append(Table(title, list(columns), [list(r) for r in rows]))

    # -- renderers -----------------------------------------------------------

    def to_text(self):
        out = [f"command: {self.command}", f"input: sha256 {self.input_sha256[:16]}"]
        for note in self.notes:
            out.append(f"note: {note}")
        for table in self.tables:
            out.append("")
            out.append(f"== {table.title} ==")
            cells = [[cell_str(c) for c in row] for row in table.rows]
            widths = [
                max([len(str(col))] + [len(r[i]) for r in cells])
                for i, col in enumerate(table.columns)
            ]
            out.append("  ".join(str(c).ljust(w) for c, w in zip(table.columns, widths)))
            for r in cells:
                out.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
        for v in self.verdicts:
            out.append("")
            for key, val in v.items():
                out.append(f"{key}: {cell_str(val)}")
        if self.partial:
            out.append("")
            out.append("status: PARTIAL (resource limits hit)")
        if self.timing_secs is not None:
            out.append(f"# elapsed-secs: {self.timing_secs:.3f}")
        return "\n".join(out) + "\n"

    def to_csv(self):
        """The primary (first) table as CSV; exact fields, no timing."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.tables:
            table = self.tables[0]
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([cell_str(c) for c in row])
        return buf.getvalue()

    def to_json(self):
        doc = {
            "command": self.command,
            "input_sha256": self.input_sha256,
            "notes": list(self.notes),
            "tables": [
                {
                    "title": t.title,
                    "columns": list(t.columns),
                    "rows": [[cell_str(c) for c in row] for row in t.rows],
                }
                for t in self.tables
            ],
            "verdicts": [
                {k: cell_str(v) for k, v in verdict.items()} for verdict in self.verdicts
            ],
            "partial": self.partial,
            "timing_secs": None if self.timing_secs is None else f"{self.timing_secs:.3f}",
        }
        return json.dumps(doc, indent=2) + "\n"

    def render(self, fmt):
        if fmt == "table":
            return self.to_text()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")
