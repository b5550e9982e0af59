"""Rendering of report rows as human text, CSV, Markdown or JSON.

A report is a list of flat dict rows; every value is already a string, int,
bool or None, so all four formats carry identical fields in identical order.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

FORMATS = ("human", "csv", "md", "json")


def frac(x: Fraction) -> str:
    """Exact rational as ``p/q`` (always with a denominator)."""
    return f"{x.numerator}/{x.denominator}"


def dec(x) -> str:
    """12 significant digits; never used for verdicts."""
    return f"{float(x):.12g}"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render(rows: list[dict], fmt: str, title: str | None = None) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if not rows:
        return ""
    keys = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_cell(row.get(k)) for k in keys])
        return buf.getvalue()
    if fmt == "md":
        lines = []
        if title:
            lines += [f"### {title}", ""]
        lines.append("| " + " | ".join(keys) + " |")
        lines.append("|" + "|".join("---" for _ in keys) + "|")
        for row in rows:
            cells = [_cell(row.get(k)).replace("|", "\\|") for k in keys]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
    # human
    if len(rows) == 1:
        width = max(len(k) for k in keys)
        out = [f"{k.replace('_', '-'):<{width}}  {_cell(rows[0][k])}" for k in keys]
        if title:
            out.insert(0, title)
        return "\n".join(out) + "\n"
    widths = {k: max(len(k), *(len(_cell(r.get(k))) for r in rows)) for k in keys}
    out = ["  ".join(f"{k:>{widths[k]}}" for k in keys)]
    for row in rows:
        out.append("  ".join(f"{_cell(row.get(k)):>{widths[k]}}" for k in keys))
    if title:
        out.insert(0, title)
    return "\n".join(out) + "\n"
