"""On-disk JSON cache for character tables.

One file per (group, n).  The file name carries a hash of the generator
parameters, so changing the builder version invalidates old files without
touching them.  The payload has a SHA-256 checksum; a file that fails to
parse or to match its checksum is rebuilt, never trusted.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

from .scalar import scalar_from_json, scalar_json

CACHE_VERSION = 1
ENV_CACHE_DIR = "SYMCOVER_CACHE_DIR"
ENV_THREADS = "SYMCOVER_THREADS"

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "symcover"


def default_threads() -> int:
    env = os.environ.get(ENV_THREADS)
    if env:
        threads = int(env)
        if threads < 1:
            raise ValueError(f"{ENV_THREADS} must be a positive integer")
        return threads
    return 1


def params_hash(group: str, n: int) -> str:
    params = {"group": group, "n": n, "version": CACHE_VERSION, "order": "reverse-lex"}
    return hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()[:16]


def cache_path(group: str, n: int, cache_dir) -> Path:
    return Path(cache_dir) / f"{group}{n}-{params_hash(group, n)}.json"


def _payload(table) -> dict:
    return {
        "group": table.group,
        "n": table.n,
        "rows": [str(r) for r in table.rows],
        "cols": [str(c) for c in table.cols],
        "values": [[scalar_json(v) for v in row] for row in table.values],
        "dims": [str(d) for d in table.dims],
        "levels": table.levels,
        "class_sizes": [str(s) for s in table.class_sizes],
    }


def _checksum(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def dump_table(table, path: Path) -> None:
    payload = _payload(table)
    doc = {"version": CACHE_VERSION, "key": params_hash(table.group, table.n),
           "checksum": _checksum(payload), "table": payload}
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def load_table(path: Path):
    """Parse and validate a cache file; returns None if it is unusable."""
    from .characters import CharacterTable, parse_label

    try:
        doc = json.loads(path.read_text())
        payload = doc["table"]
        if doc["version"] != CACHE_VERSION or doc["checksum"] != _checksum(payload):
            log.warning("cache file %s failed validation; rebuilding", path)
            return None
        group = payload["group"]
        if group == "S":
            values = [[int(v) for v in row] for row in payload["values"]]
        else:
            values = [[scalar_from_json(v) for v in row] for row in payload["values"]]
        return CharacterTable(
            group=group,
            n=payload["n"],
            rows=[parse_label(r) for r in payload["rows"]],
            cols=[parse_label(c) for c in payload["cols"]],
            values=values,
            dims=[int(d) for d in payload["dims"]],
            levels=list(payload["levels"]),
            class_sizes=[int(s) for s in payload["class_sizes"]],
        )
    except FileNotFoundError:
        return None
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("cache file %s is corrupt (%s); rebuilding", path, exc)
        return None


def load_or_build(group: str, n: int, cache_dir, build: Callable, rebuild: bool = False):
    path = cache_path(group, n, cache_dir)
    if not rebuild:
        table = load_table(path)
        if table is not None:
            return table
    table = build()
    dump_table(table, path)
    return table
