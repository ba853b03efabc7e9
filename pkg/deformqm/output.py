"""Table rendering for the deformqm command line."""
from __future__ import annotations

from collections.abc import Mapping, Sequence
import csv
import io
import json
import math
from pathlib import Path
import sys
from typing import Any, TextIO

import numpy as np

from .const import FORMAT_CSV, FORMAT_JSON, SCHEMA_VERSION

Row = Mapping[str, Any]


def _plain(value: Any) -> Any:
    """Convert numpy scalars and non-finite floats to JSON-ready values."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def format_cell(value: Any) -> str:
    """Render one CSV cell: shortest round-trip floats, lower-case booleans."""
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ";".join(format_cell(v) for v in value)
    return str(value)


def render_csv(rows: Sequence[Row], columns: Sequence[str]) -> str:
    """Render rows as comma-separated text with a header line."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row.get(col)) for col in columns])
    return buf.getvalue()


def render_json(
    rows: Sequence[Row],
    columns: Sequence[str],
    meta: Mapping[str, Any] | None = None,
) -> str:
    """Render rows as one JSON document with ordered keys."""
    doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    if meta is not None:
        doc["meta"] = _plain(dict(meta))
    doc["rows"] = [{col: _plain(row.get(col)) for col in columns} for row in rows]
    return json.dumps(doc, indent=2) + "\n"


def render(
    rows: Sequence[Row],
    columns: Sequence[str],
    fmt: str,
    meta: Mapping[str, Any] | None = None,
) -> str:
    """Render rows in the requested format."""
    if fmt == FORMAT_JSON:
        return render_json(rows, columns, meta)
    if fmt == FORMAT_CSV:
        return render_csv(rows, columns)
    raise ValueError(f"unknown format {fmt!r}")


def write_text(text: str, path: str | None, stream: TextIO | None = None) -> None:
    """Write to path, or to stream (stdout by default)."""
    if path is None:
        (stream or sys.stdout).write(text)
        return
    Path(path).write_text(text, encoding="utf-8", newline="")


def sidecar_path(path: str) -> str:
    """Return the metadata sidecar path of a CSV output file."""
    return f"{path}.meta.json"
