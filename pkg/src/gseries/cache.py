"""Deterministic on-disk cache for exact series expansions.

Entries are keyed by (name, k, order, format version) and wrapped with a
sha256 checksum of the canonical payload bytes.  A checksum mismatch is
treated as a miss: the value is recomputed and the entry rewritten, so
corruption can cost time but never correctness.  Writes go through a
temporary file and an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional

FORMAT_VERSION = 1

ENV_CACHE_DIR = "GSERIES_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "gseries"


def _canonical_bytes(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def _entry_path(cache_dir: Path, name: str, k: int, order: int) -> Path:
    return cache_dir / f"{name}-k{k}-N{order}-v{FORMAT_VERSION}.json"


def load_or_compute(
    name: str,
    k: int,
    order: int,
    compute: Callable[[], dict],
    cache_dir: Optional[Path] = None,
    enabled: bool = True,
) -> dict:
    """Return the cached payload for the key, computing and storing on miss.

    `compute` must return a JSON-serializable dict; exact arithmetic makes
    recomputation byte-identical, which the checksum relies on.
    """
    if not enabled:
        return compute()
    cache_dir = cache_dir or default_cache_dir()
    path = _entry_path(cache_dir, name, k, order)
    if path.exists():
        try:
            wrapper = json.loads(path.read_text())
            payload = wrapper["payload"]
            digest = hashlib.sha256(_canonical_bytes(payload)).hexdigest()
            if (
                wrapper.get("sha256") == digest
                and wrapper.get("key") == [name, k, order, FORMAT_VERSION]
            ):
                return payload
        except (json.JSONDecodeError, KeyError, TypeError, OSError):
            pass  # fall through to recompute
    payload = compute()
    write_entry(path, name, k, order, payload)
    return payload


def write_entry(path: Path, name: str, k: int, order: int, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    wrapper = {
        "schema": "gseries.cache/1",
        "key": [name, k, order, FORMAT_VERSION],
        "sha256": hashlib.sha256(_canonical_bytes(payload)).hexdigest(),
        "payload": payload,
    }
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(wrapper, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
