"""
Report writers.

CSV through pandas with full float precision and a fixed line terminator,
JSON through json.dumps(sort_keys=True), JSON Lines through jsonlines.
Output goes to a file when a path is given and to stdout otherwise.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import jsonlines
import numpy as np
import pandas as pd

from src.core.constants import OutputFormat

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.17g"


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        value = float(value)
    if isinstance(value, float) and not np.isfinite(value):
        return None
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def _open(path: Optional[str]):
    if path is None:
        return None
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target


def frame_to_csv(frame: pd.DataFrame) -> str:
    """CSV text with ',' separators and '.' decimals, independent of locale."""
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def dumps_json(data: Dict[str, Any]) -> str:
    """Deterministic JSON text; NaN becomes null."""
    return json.dumps(_jsonable(data), sort_keys=True, allow_nan=False)


def write_text(text: str, path: Optional[str]) -> None:
    """Write UTF-8 text to a file, or to stdout."""
    target = _open(path)
    if target is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        sys.stdout.flush()
        return
    target.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info(f"Wrote {target}")


def write_jsonl(rows: Iterable[Dict[str, Any]], path: Optional[str]) -> None:
    """One JSON object per line."""
    target = _open(path)
    if target is None:
        writer = jsonlines.Writer(sys.stdout, sort_keys=True)
        writer.write_all(_jsonable(list(rows)))
        sys.stdout.flush()
        return
    with jsonlines.open(target, mode="w", sort_keys=True) as writer:
        writer.write_all(_jsonable(list(rows)))
    logger.info(f"Wrote {target}")


def write_report(
    frame: pd.DataFrame,
    output_format: OutputFormat,
    path: Optional[str],
    json_document: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Write a tabular report.

    Args:
        frame: Table for CSV and JSON Lines output
        output_format: csv, json or jsonl
        path: Output file, or None for stdout
        json_document: Object written for json output (defaults to the rows)
    """
    fmt = OutputFormat(output_format)
    if fmt == OutputFormat.CSV:
        write_text(frame_to_csv(frame), path)
    elif fmt == OutputFormat.JSONL:
        write_jsonl(frame.to_dict(orient="records"), path)
    else:
        document = json_document if json_document is not None else {"rows": frame.to_dict(orient="records")}
        write_text(dumps_json(document), path)


def write_eigenfields(spectrum, directory: str) -> None:
    """Per-level CSV files x,chi named level_<n>.csv."""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    for level in spectrum.levels:
        if level.eigenfield is None:
            continue
        path = target / f"level_{level.n}.csv"
        path.write_text(frame_to_csv(spectrum.eigenfield_frame(level.n)), encoding="utf-8")
    logger.info(f"Wrote {len(spectrum.levels)} eigenfield files to {target}")
