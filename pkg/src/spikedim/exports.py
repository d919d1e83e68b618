"""File exports for study results.

Stable schemas:

* rejection CSV: header ``setting,n,k,rate,replicates,alpha,seed``;
* rejection JSON: a list of objects carrying exactly those fields;
* histogram CSV: header ``setting,n,d,replicate,g`` plus a sidecar
  ``<stem>.summary.json`` holding
  ``{"mean": ..., "variance": ..., "reference": {"mean": 1, "variance": 4}}``;
* histogram JSON: ``{"rows": [...], "summary": {...}}`` with the same fields.

Exports round-trip: ``read_rejection_json`` / ``read_histogram_json``
reconstruct structures equal to what was written.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .harness import HistogramRun, RejectionRow, RejectionTable

REJECTION_FIELDS = ["setting", "n", "k", "rate", "replicates", "alpha", "seed"]
HISTOGRAM_FIELDS = ["setting", "n", "d", "replicate", "g"]


def _open_for_write(path):
    path = Path(path)
    try:
        return path, path.open("w", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def rejection_records(table: RejectionTable) -> list[dict]:
    return [
        {
            "setting": table.setting,
            "n": row.n,
            "k": row.k,
            "rate": row.rate,
            "replicates": table.replicates,
            "alpha": table.alpha,
            "seed": table.seed,
        }
        for row in table.rows
    ]


def histogram_records(run: HistogramRun) -> list[dict]:
    return [
        {"setting": run.setting, "n": run.n, "d": run.d, "replicate": i, "g": float(g)}
        for i, g in enumerate(run.g_values)
    ]


def histogram_summary(run: HistogramRun) -> dict:
    # Degenerate runs (fewer than 2 replicates) serialize null summaries.
    mean, variance = run.mean, run.variance
    return {
        "mean": mean if math.isfinite(mean) else None,
        "variance": variance if math.isfinite(variance) else None,
        "reference": {"mean": run.reference[0], "variance": run.reference[1]},
    }


def write_rejection_csv(table: RejectionTable, path) -> Path:
    path, handle = _open_for_write(path)
    with handle:
        writer = csv.DictWriter(handle, fieldnames=REJECTION_FIELDS)
        writer.writeheader()
        writer.writerows(rejection_records(table))
    return path


def write_rejection_json(table: RejectionTable, path) -> Path:
    path, handle = _open_for_write(path)
    with handle:
        json.dump(rejection_records(table), handle, indent=2)
        handle.write("\n")
    return path


def summary_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".summary.json")


def write_histogram_csv(run: HistogramRun, path) -> Path:
    path, handle = _open_for_write(path)
    with handle:
        writer = csv.DictWriter(handle, fieldnames=HISTOGRAM_FIELDS)
        writer.writeheader()
        writer.writerows(histogram_records(run))
    side, handle = _open_for_write(summary_path(path))
    with handle:
        json.dump(histogram_summary(run), handle, indent=2)
        handle.write("\n")
    return path


def write_histogram_json(run: HistogramRun, path) -> Path:
    path, handle = _open_for_write(path)
    with handle:
        json.dump(
            {"rows": histogram_records(run), "summary": histogram_summary(run)},
            handle,
            indent=2,
        )
        handle.write("\n")
    return path


def export_results(result, path, fmt: str = "csv") -> Path:
    """Write a RejectionTable or HistogramRun as csv or json."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    if isinstance(result, RejectionTable):
        writer = write_rejection_csv if fmt == "csv" else write_rejection_json
    elif isinstance(result, HistogramRun):
        writer = write_histogram_csv if fmt == "csv" else write_histogram_json
    else:
        raise TypeError(f"cannot export {type(result).__name__}")
    return writer(result, path)


def read_rejection_json(path) -> RejectionTable:
    with Path(path).open() as handle:
        records = json.load(handle)
    if not records:
        raise ValueError(f"{path} holds no rejection rows")
    head = records[0]
    return RejectionTable(
        setting=head["setting"],
        alpha=head["alpha"],
        seed=head["seed"],
        replicates=head["replicates"],
        rows=tuple(
            RejectionRow(n=rec["n"], k=rec["k"], rate=rec["rate"]) for rec in records
        ),
    )


def read_histogram_json(path) -> HistogramRun:
    with Path(path).open() as handle:
        payload = json.load(handle)
    rows = payload["rows"]
    if not rows:
        raise ValueError(f"{path} holds no histogram rows")
    head = rows[0]
    return HistogramRun(
        setting=head["setting"],
        n=head["n"],
        d=head["d"],
        seed=0,
        g_values=np.asarray([rec["g"] for rec in rows]),
    )
