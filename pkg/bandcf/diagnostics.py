"""Stable rendering of reports: JSON, CSV and plain tables.

Identical inputs must render to identical bytes, so floats always use 17
significant digits and mappings keep insertion order.
"""

import csv
from fractions import Fraction
import io
import json
import math
import re
from typing import Any, Dict, Iterable, List, Mapping, Sequence

from .const import FLOAT_DIGITS, SCHEMA_VERSION
from .laurent_series import SeriesMatrix, TruncatedLaurentSeries
from .models import Ring

_FLOAT_TAG = "\x00float:"
_TAGGED_FLOAT = re.compile(r'"\\u0000float:([-+.0-9e]+)"')


def format_float(value: float) -> str:
    """17 significant digits; non-finite values as JSON strings."""

    if math.isnan(value) or math.isinf(value):
        return json.dumps(str(value))
    text = format(value, f".{FLOAT_DIGITS}g")
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _tagged(value: Any) -> Any:
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return _FLOAT_TAG + format_float(value)
    if isinstance(value, Fraction):
        return Ring.RATIONAL.serialize(value)
    if isinstance(value, complex):
        return [_tagged(value.real), _tagged(value.imag)]
    if isinstance(value, Mapping):
        return {str(k): _tagged(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_tagged(v) for v in value]
    return value


def render_json(value: Any) -> str:
    """Deterministic JSON text.

    Floats travel through `json.dumps` as tagged strings and are unquoted
    afterwards, so they keep the `format_float` digits.
    """
    text = json.dumps(_tagged(value), indent=2)
    return _TAGGED_FLOAT.sub(r"\1", text) + "\n"


def envelope(command: str, payload: Mapping[str, Any]) -> Dict[str, Any]:
    """Top-level document with the schema tag."""
    return {"schema": SCHEMA_VERSION, "command": command, **payload}


def render_csv(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> str:
    """CSV text with a header row."""

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, float) else v for v in (row[c] for c in columns)]
        )
    return buffer.getvalue()


def render_table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Left-aligned text table."""

    cells = [[str(h) for h in headers]] + [
        [format_float(v) if isinstance(v, float) else str(v) for v in row] for row in rows
    ]
    widths = [max(len(row[c]) for row in cells) for c in range(len(headers))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def series_table(matrix: SeriesMatrix) -> str:
    """One line per entry with the pretty-printed series."""
    return render_table(
        ["i", "j", "series"], [(i, j, str(entry)) for i, j, entry in matrix.cells()]
    )


def series_payload(series: TruncatedLaurentSeries) -> Dict[str, Any]:
    """Series as JSON with its rendering."""
    return {**series.as_dict(), "text": str(series)}


def check_lines(checks: List[Mapping[str, Any]]) -> str:
    """PASS/FAIL listing for verify output."""
    return render_table(
        ["status", "check", "residual"],
        [
            ("PASS" if c["passed"] else "FAIL", c["name"], c.get("residual", ""))
            for c in checks
        ],
    )
