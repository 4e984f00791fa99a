"""Content-addressed JSON cache for reports.

Keys hash the command, its parameters and the code version (a hash of the
package sources), so entries written by another version are never served.
Each key has its own lock file; a corrupt entry is recomputed with a warning.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable

from filelock import FileLock

log = logging.getLogger(__name__)

ENV_VAR = "GW_CACHE"
DEFAULT_DIR = ".gw-cache"


@lru_cache(maxsize=1)
def code_version() -> str:
    h = hashlib.sha256()
    root = Path(__file__).parent
    for path in sorted(root.glob("*.py")):
        h.update(path.name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class Cache:
    root: Path
    enabled: bool = True
    hits: int = 0
    misses: int = 0

    @classmethod
    def from_env(cls, override: str | None = None, enabled: bool = True) -> "Cache":
        return cls(Path(override or os.environ.get(ENV_VAR) or DEFAULT_DIR), enabled)

    def key(self, command: str, params: dict) -> str:
        blob = canonical({"command": command, "params": params, "version": code_version()})
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def lookup(self, command: str, params: dict):
        """Cached result or None."""
        if not self.enabled:
            return None
        key = self.key(command, params)
        path = self._path(key)
        if not path.exists():
            return None
        with FileLock(str(path) + ".lock"):
            try:
                entry = json.loads(path.read_text())
                if entry.get("version") == code_version() and entry.get("key") == key:
                    self.hits += 1
                    return entry["result"]
                log.warning("cache entry %s has the wrong version; recomputing", path.name)
            except (json.JSONDecodeError, KeyError, TypeError, AttributeError):
                log.warning("cache entry %s is corrupt; recomputing", path.name)
        return None

    def store(self, command: str, params: dict, result) -> None:
        if not self.enabled:
            return
        key = self.key(command, params)
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "version": code_version(), "command": command, "params": params, "result": result}
        with FileLock(str(path) + ".lock"):
            tmp = path.with_suffix(".tmp")
            tmp.write_text(canonical(entry))
            os.replace(tmp, path)

    def get_or_compute(self, command: str, params: dict, compute: Callable[[], dict]):
        found = self.lookup(command, params)
        if found is not None:
            return found
        self.misses += 1
        result = compute()
        self.store(command, params, result)
        return result

    def gc(self) -> dict:
        """Drop entries from other code versions, unreadable entries and orphaned locks."""
        removed = kept = 0
        if not self.root.exists():
            return {"removed": 0, "kept": 0}
        for path in sorted(self.root.glob("*/*.json")):
            try:
                ok = json.loads(path.read_text()).get("version") == code_version()
            except (json.JSONDecodeError, AttributeError):
                ok = False
            if ok:
                kept += 1
            else:
                path.unlink()
                removed += 1
        for lock in sorted(self.root.glob("*/*.lock")):
            if not lock.with_suffix("").exists():
                lock.unlink(missing_ok=True)
        for sub in sorted(self.root.iterdir()):
            if sub.is_dir() and not any(sub.iterdir()):
                sub.rmdir()
        return {"removed": removed, "kept": kept}
