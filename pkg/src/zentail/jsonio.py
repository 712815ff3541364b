"""Line-delimited JSON helpers.

All artifacts are flat files; dumps are canonical (sorted keys, compact
separators) so that identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Iterator

from .errors import DataError


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def write_jsonl(path: str | Path, rows: Iterable[dict]) -> int:
    """Write one canonical JSON object per line. Returns the row count."""
    n = 0
    with open(path, "w", encoding="ascii") as fp:
        for row in rows:
            fp.write(dumps_canonical(row))
            fp.write("\n")
            n += 1
    return n


def read_jsonl(path: str | Path) -> Iterator[tuple[int, dict]]:
    """Yield (line_number, object) for each non-blank line.

    Malformed lines raise DataError carrying the 1-based line number.
    """
    with open(path, "r", encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise DataError(f"{path}: line {lineno}: expected a JSON object")
            yield lineno, obj


def read_json(path: str | Path) -> dict:
    with open(path, "r", encoding="utf-8") as fp:
        try:
            obj = json.load(fp)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DataError(f"{path}: expected a top-level JSON object")
    return obj


def write_json(path: str | Path, obj: dict) -> None:
    with open(path, "w", encoding="ascii") as fp:
        json.dump(obj, fp, sort_keys=True, indent=2, ensure_ascii=True)
        fp.write("\n")
