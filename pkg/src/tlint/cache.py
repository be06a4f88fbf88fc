"""On-disk cache of canonical JSON payloads, one file per key.

Writes go to a temporary file in the cache directory followed by an atomic
rename, so concurrent processes never observe partial entries.  Each entry
stores a digest of its payload; a mismatch, a parse failure or a different
version tag means the entry is recomputed and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from pathlib import Path

from . import __version__
from .serialize import dumps

log = logging.getLogger(__name__)

CACHE_VERSION = f"tlint-{__version__}-c1"


def default_dir() -> Path:
    env = os.environ.get("TLINT_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "tlint"


def make_key(op: str, params: dict) -> str:
    text = dumps({"op": op, "params": params, "version": CACHE_VERSION})
    return hashlib.sha256(text.encode()).hexdigest()


def _digest(payload) -> str:
    return hashlib.sha256(dumps(payload).encode()).hexdigest()


class Cache:
    def __init__(self, directory=None, enabled: bool = True):
        self.dir = Path(directory) if directory is not None else default_dir()
        self.enabled = enabled
        self.hits = 0

    def path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def load(self, key: str):
        """The stored payload, or None when missing, stale or corrupt."""
        try:
            entry = json.loads(self.path(key).read_text())
        except (OSError, ValueError):
            return None
        if not isinstance(entry, dict) or entry.get("version") != CACHE_VERSION or entry.get("key") != key:
            return None
        payload = entry.get("payload")
        if entry.get("digest") != _digest(payload):
            return None
        return payload

    def store(self, key: str, payload) -> None:
        entry = {"key": key, "version": CACHE_VERSION, "created": int(time.time()),
                 "digest": _digest(payload), "payload": payload}
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-", suffix=".json")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(dumps(entry))
                os.replace(tmp, self.path(key))
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            log.warning("cache directory %s is not writable (%s); continuing without cache", self.dir, exc)

    def get_put(self, op: str, params: dict, compute):
        """Payload for (op, params), computing and storing it on a miss."""
        if not self.enabled:
            return compute()
        key = make_key(op, params)
        payload = self.load(key)
        if payload is not None:
            self.hits += 1
            return payload
        payload = compute()
        self.store(key, payload)
        return payload
