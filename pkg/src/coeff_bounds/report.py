"""Report serialization shared by the CLI subcommands.

A report is ``{"schema", "command", "config", "passed", "rows"}`` where each
row is a flat mapping of scalars.  Floats are written with 17 significant
digits in every format so JSON and CSV carry the same numbers, and nothing
time-dependent goes in, so a fixed config and seed give identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile

SCHEMA = "coeff-bounds/1"

__all__ = ["SCHEMA", "make_report", "fmt_float", "to_json", "to_csv", "write_atomic"]


def make_report(command: str, config: dict, rows: list[dict], passed: bool, **extra) -> dict:
    rep = {"schema": SCHEMA, "command": command, "config": config, "passed": bool(passed), "rows": rows}
    rep.update(extra)
    return rep


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x, ".17g")
    # keep a float marker so readers do not coerce 2.0 into an integer
    if all(ch not in s for ch in ".eEn"):
        s += ".0"
    return s


def _json(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(report: dict, indent: int = 2) -> str:
    return _json(report, indent, 0) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if v is None:
        return ""
    return str(v)


def to_csv(report: dict) -> str:
    """Rows only, one header line; the union of row keys in first-seen order."""
    rows = report["rows"]
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r.get(k)) for k in cols])
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
