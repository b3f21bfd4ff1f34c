"""Deterministic CSV/JSON table emission.

Floats are rendered at a configured number of significant digits with no
locale dependence; identical inputs produce byte-identical output.  CSV
carries metadata as leading '# key = value' lines; JSON wraps the same
fields in a {meta, columns, rows} envelope.
"""

from __future__ import annotations

import json
import math
import os
import sys
from typing import Iterable, Mapping, Optional, Sequence


def format_value(value, precision: int) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, f".{precision}g")
    return str(value)


def _json_value(value, precision: int):
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return format(value, "g")  # JSON has no inf/nan literals
        return float(format(value, f".{precision}g"))
    return value


def render_csv(
    meta: Mapping[str, object],
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
    precision: int,
) -> str:
    lines = [f"# {key} = {format_value(val, precision)}" for key, val in meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_value(v, precision) for v in row))
    return "\n".join(lines) + "\n"


def render_json(
    meta: Mapping[str, object],
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
    precision: int,
) -> str:
    doc = {
        "meta": {k: _json_value(v, precision) for k, v in meta.items()},
        "columns": list(columns),
        "rows": [[_json_value(v, precision) for v in row] for row in rows],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def render_table(meta, columns, rows, fmt: str, precision: int) -> str:
    if fmt == "json":
        return render_json(meta, columns, rows, precision)
    return render_csv(meta, columns, rows, precision)


def write_output(text: str, out_path: Optional[str]) -> None:
    """Write to stdout or to a file.  Relative paths are resolved against
    ENTROPATH_OUT_DIR when that variable is set."""
    if out_path is None:
        sys.stdout.write(text)
        return
    base = os.environ.get("ENTROPATH_OUT_DIR")
    if base and not os.path.isabs(out_path):
        out_path = os.path.join(base, out_path)
    with open(out_path, "w", newline="") as fh:
        fh.write(text)
