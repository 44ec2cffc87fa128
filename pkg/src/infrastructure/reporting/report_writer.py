"""
Report serialization.

JSON reports keep the key order of the DTOs and write floats as their
shortest round-trip decimal, so identical runs give identical bytes.
CSV reports carry the rows only.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

logger = logging.getLogger(__name__)

NON_FINITE = {math.inf: 'inf', -math.inf: '-inf'}


def normalize(value: Any) -> Any:
    """
    Convert a report value to plain JSON types.

    Business rules:
    - numpy scalars and arrays become Python numbers and lists
    - complex numbers become [re, im]
    - non-finite floats become the strings 'inf', '-inf' and 'nan'
    """
    if isinstance(value, dict):
        return {str(key): normalize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(item) for item in value]
    if isinstance(value, np.ndarray):
        return normalize(value.tolist())
    if isinstance(value, np.generic):
        return normalize(value.item())
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, complex):
        return [normalize(value.real), normalize(value.imag)]
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        return NON_FINITE.get(value, value)
    return str(value)


def render_json(report: Dict[str, Any]) -> str:
    """The report as indented JSON with a trailing newline."""
    return json.dumps(normalize(report), indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, separators=(",", ":"))
    return value


def render_csv(rows: List[Dict[str, Any]]) -> str:
    """
    The rows as CSV, columns in order of first appearance.

    Nested values are written as compact JSON.
    """
    rows = [normalize(row) for row in rows]
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(item) for key, item in row.items()})
    return buffer.getvalue()


def render(report: Dict[str, Any], fmt: str = 'json') -> str:
    """
    Render a report dictionary.

    Raises:
        ValueError: For an unknown format
    """
    if fmt == 'json':
        return render_json(report)
    if fmt == 'csv':
        return render_csv(report.get('rows', []))
    raise ValueError(f"Unknown report format {fmt!r}")


def write_report(report: Dict[str, Any], fmt: str = 'json', path: Optional[str] = None) -> str:
    """
    Render a report and write it to path, or return it for stdout when path is None.

    Returns:
        The rendered text
    """
    text = render(report, fmt)
    if path is not None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding='utf-8')
        logger.info(f"Wrote {fmt} report to {target}")
    return text
