"""CSV/JSON input and output.

All writers are atomic (write to a temp file, then rename) and fully
deterministic: fixed '\\n' newlines, floats at 17 significant digits, JSON
with sorted keys.
"""
from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .atypicality import DictionaryEntry, TypicalDictionary
from .errors import EmptySeries, InvalidData
from .pipeline import TimeSeries

DICTIONARY_FORMAT_VERSION = 1


def fmt(x) -> str:
    """Shortest full-precision decimal form of a number."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def parse_timestamp(text: str) -> float:
    """Epoch seconds from either a number or an RFC3339 datetime (naive
    datetimes are taken as UTC)."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    iso = text.replace("Z", "+00:00") if text.endswith("Z") else text
    dt = datetime.fromisoformat(iso)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def read_timeseries_csv(path: str | Path) -> TimeSeries:
    """Read a `timestamp,value` CSV; errors carry the 1-based line number."""
    path = Path(path)
    timestamps: list[float] = []
    values: list[float] = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise EmptySeries(f"{path}: file is empty")
        if [c.strip().lower() for c in header[:2]] != ["timestamp", "value"]:
            raise InvalidData(f"{path}: line 1: expected header 'timestamp,value'")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2:
                raise InvalidData(f"{path}: line {lineno}: expected 2 columns, got {len(row)}")
            try:
                ts = parse_timestamp(row[0])
                val = float(row[1])
            except ValueError as exc:
                raise InvalidData(f"{path}: line {lineno}: {exc}") from exc
            if not (np.isfinite(ts) and np.isfinite(val)):
                raise InvalidData(f"{path}: line {lineno}: non-finite value")
            timestamps.append(ts)
            values.append(val)
    if not timestamps:
        raise EmptySeries(f"{path}: no data rows")
    try:
        return TimeSeries(np.asarray(timestamps), np.asarray(values))
    except InvalidData as exc:
        raise InvalidData(f"{path}: {exc}") from exc


def atomic_write_text(path: str | Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]):
    buf = _io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(cell if isinstance(cell, str) else fmt(cell) for cell in row) + "\n")
    atomic_write_text(path, buf.getvalue())


def write_json(path: str | Path, obj):
    atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def write_timeseries_csv(path: str | Path, series: TimeSeries):
    write_csv(path, ["timestamp", "value"], zip(series.timestamps, series.values))


def save_dictionary(dictionary: TypicalDictionary, path: str | Path):
    obj = {
        "version": DICTIONARY_FORMAT_VERSION,
        "basis_name": dictionary.basis_name,
        "l": dictionary.l,
        "entries": [[e.k, list(e.support)] for e in dictionary.entries],
    }
    write_json(path, obj)


def load_dictionary(path: str | Path) -> TypicalDictionary:
    with open(path) as f:
        obj = json.load(f)
    if obj.get("version") != DICTIONARY_FORMAT_VERSION:
        raise InvalidData(f"{path}: unsupported dictionary version {obj.get('version')!r}")
    entries = tuple(
        DictionaryEntry(int(k), tuple(int(i) for i in support)) for k, support in obj["entries"]
    )
    return TypicalDictionary(basis_name=obj["basis_name"], l=int(obj["l"]), entries=entries)
