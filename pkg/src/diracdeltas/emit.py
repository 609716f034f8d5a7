"""Deterministic delimited output: CSV and JSON with round-trippable floats.

Every float is rendered with 17 significant digits (``%.17g``), which is
enough for exact binary round-trips, so reruns of the same computation
produce bit-identical files.  The JSON document is assembled by hand to
keep the same float rendering as the CSV path and the key order stable:

    {"spec": {...run parameters...}, "rows": [...]}
"""

from __future__ import annotations

import csv
import io
import json

__all__ = ["fmt_float", "emit"]


def fmt_float(x) -> str:
    """Render a float with 17 significant digits (binary round-trippable)."""
    return format(float(x), ".17g")


def _scalar(value) -> str:
    """JSON token for one scalar value."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return repr(value)
    return fmt_float(value)


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, str)):
        return str(value)
    return fmt_float(value)


def emit(rows, header, spec=None, format="csv", path=None):
    """Serialize rows (dicts keyed by ``header``) to CSV or JSON.

    Parameters
    ----------
    rows : iterable of dict
        Records; each must provide every key in ``header``.
    header : sequence of str
        Column names, in output order.
    spec : dict, optional
        Run parameters stored under the ``"spec"`` key of the JSON
        document (ignored for CSV).
    format : {"csv", "json"}
        Output format.
    path : str, optional
        Destination file; if None the serialized text is returned.

    Returns
    -------
    str
        The file path if ``path`` was given, else the serialized text.
    """
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(row[key]) for key in header])
        text = buf.getvalue()
    elif format == "json":
        parts = ["{\n"]
        spec = spec or {}
        parts.append('  "spec": {')
        parts.append(", ".join(f"{json.dumps(k)}: {_scalar(v)}" for k, v in spec.items()))
        parts.append('},\n  "rows": [\n')
        body = ",\n".join(
            "    {" + ", ".join(f"{json.dumps(key)}: {_scalar(row[key])}" for key in header) + "}"
            for row in rows
        )
        parts.append(body)
        parts.append("\n  ]\n}\n")
        text = "".join(parts)
    else:
        raise ValueError(f"unknown format {format!r}; expected 'csv' or 'json'")

    if path is None:
        return text
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path
