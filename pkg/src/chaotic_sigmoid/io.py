"""CSV / JSON formats. Every write goes to a temporary file in the target
directory and is renamed into place, so a failed run never leaves a partial
file behind."""
from __future__ import annotations

import csv
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import DomainError


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def atomic_write_text(path, text: str) -> Path:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def csv_text(header: tuple[str, ...], columns) -> str:
    cols = [np.asarray(c) for c in columns]
    lines = [",".join(header)]
    for row in zip(*cols):
        lines.append(",".join(str(v) if isinstance(v, (int, np.integer)) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_series_csv(path, values, value_name: str = "value") -> Path:
    """``t,value`` (or ``t,x`` for orbits) with integer t from 0."""
    values = np.asarray(values, dtype=float)
    t = np.arange(len(values))
    return atomic_write_text(path, csv_text(("t", value_name), [t.tolist(), values]))


def read_series_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) != 2 or rows[0][0] != "t":
        raise DomainError(f"{path}: expected a two-column CSV with header 't,value'")
    try:
        values = np.array([float(r[1]) for r in rows[1:]])
    except (ValueError, IndexError) as exc:
        raise DomainError(f"{path}: malformed row ({exc})") from exc
    if values.size == 0:
        raise DomainError(f"{path}: no data rows")
    return values


def write_scan_csv(path, r, x) -> Path:
    return atomic_write_text(path, csv_text(("r", "x"), [r, x]))


def write_sweep_csv(path, rows) -> Path:
    return atomic_write_text(
        path, csv_text(("delta_phi", "sigma"), [[r.delta_phi for r in rows], [r.sigma for r in rows]])
    )


def write_json(path, obj) -> Path:
    return atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=False) + "\n")


def read_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
