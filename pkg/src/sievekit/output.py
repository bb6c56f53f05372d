"""Record formatting for the command line: aligned table, CSV or JSON lines."""

import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext

__all__ = ["OutputSpec", "format_number", "render", "emit"]

FORMATS = ("table", "csv", "json")


@dataclass(frozen=True)
class OutputSpec:
    format: str = "table"
    destination: str | None = None  # None means standard output
    precision: int = 10

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.precision < 1:
            raise ValueError("precision must be at least 1")


def format_number(x, precision):
    """`x` to `precision` significant digits, rounding half to even.

    The exact binary value is rounded, so the output never depends on the
    locale or on repr's shortest round-trip choice.
    """
    if isinstance(x, bool) or x is None:
        return _scalar(x)
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        return str(x)
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.rounding = ROUND_HALF_EVEN
        text = format(Decimal(x), f".{precision}g")
    mant, sep, exp = text.partition("e")
    if "." in mant:
        mant = mant.rstrip("0").rstrip(".")
    return mant + sep + exp


def _scalar(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _cell(v, precision):
    if isinstance(v, float):
        return format_number(v, precision)
    return _scalar(v)


def render(records, columns, spec):
    """Serialize `records` (dicts) with `columns` in order."""
    if spec.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_cell(rec.get(c), spec.precision) for c in columns])
        return buf.getvalue()
    if spec.format == "json":
        lines = []
        for rec in records:
            obj = {}
            for c in columns:
                v = rec.get(c)
                obj[c] = float(format_number(v, spec.precision)) if isinstance(v, float) else v
            lines.append(json.dumps(obj))
        return "".join(line + "\n" for line in lines)
    rows = [[_cell(rec.get(c), spec.precision) for c in columns] for rec in records]
    widths = [max([len(c)] + [len(r[i]) for r in rows]) for i, c in enumerate(columns)]
    out = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in rows:
        out.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


def emit(records, columns, spec):
    text = render(records, columns, spec)
    if spec.destination in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(spec.destination, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
