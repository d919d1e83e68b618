"""CSV ingestion for observation matrices.

Contract: comma-delimited, decimal point, rows are observations.  A header
line is auto-detected (any token that fails float parsing makes the first
line a header).  Ragged rows and unparseable or non-finite values are
rejected with the 1-based line number in the message.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .errors import ConfigError, TooFewRows
from .spectra import DataMatrix


def _parse_row(tokens: list[str], line_no: int) -> list[float]:
    values = []
    for col, token in enumerate(tokens):
        try:
            value = float(token)
        except ValueError:
            raise ConfigError(
                f"line {line_no}: column {col + 1} is not numeric: {token!r}"
            ) from None
        if not math.isfinite(value):
            raise ConfigError(f"line {line_no}: column {col + 1} is not finite")
        values.append(value)
    return values


def read_data_matrix(path) -> DataMatrix:
    """Load a CSV file of observations into a DataMatrix."""
    path = Path(path)
    try:
        with path.open(newline="") as handle:
            raw = [(i + 1, row) for i, row in enumerate(csv.reader(handle))]
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc

    raw = [(line_no, row) for line_no, row in raw if row]
    if not raw:
        raise ConfigError(f"{path}: no data rows")

    first_no, first = raw[0]
    header_like = any(_not_float(token) for token in first)
    if header_like:
        raw = raw[1:]
        if not raw:
            raise ConfigError(f"{path}: header only, no data rows")

    width = len(raw[0][1])
    rows = []
    for line_no, tokens in raw:
        if len(tokens) != width:
            raise ConfigError(
                f"line {line_no}: expected {width} columns, got {len(tokens)}"
            )
        rows.append(_parse_row(tokens, line_no))

    if len(rows) < 2:
        raise TooFewRows(f"{path}: need at least 2 observation rows, got {len(rows)}")
    return DataMatrix(np.asarray(rows))


def _not_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return True
    return False
