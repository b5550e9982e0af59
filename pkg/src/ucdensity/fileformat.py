"""Plain-text family files.

One set per line: ``-`` for the empty set, otherwise strictly increasing
space-separated non-negative integers.  ``#`` starts a comment.  Emission
writes normalized 0-based labels in ascending mask order, so
``parse_family(emit_family(F)) == F``.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .family import SetFamily, bits_of, normalize


def parse_family(text: str) -> SetFamily:
    sets = []
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "-":
            elems: tuple[int, ...] = ()
        else:
            try:
                elems = tuple(int(tok) for tok in line.split())
            except ValueError:
                raise ParseError(f"expected '-' or integers, got {line!r}", lineno) from None
            if any(x < 0 for x in elems):
                raise ParseError("elements must be non-negative", lineno)
            if any(a >= b for a, b in zip(elems, elems[1:])):
                raise ParseError(f"elements must be strictly increasing: {line!r}", lineno)
        if elems in seen:
            raise ParseError(f"duplicate set (first seen on line {seen[elems]})", lineno)
        seen[elems] = lineno
        sets.append(elems)
    if not sets:
        raise ParseError("no sets in input")
    return normalize(sets)


def format_mask(mask: int) -> str:
    return " ".join(map(str, bits_of(mask))) if mask else "-"


def emit_family(family: SetFamily) -> str:
    return "".join(format_mask(mask) + "\n" for mask in family.members)


def inline_family(family: SetFamily) -> str:
    """Single-line rendering for table cells: lines joined by '; '."""
    return "; ".join(format_mask(mask) for mask in family.members)


def load_family(path: str | Path) -> SetFamily:
    return parse_family(Path(path).read_text(encoding="utf-8"))
