"""On-disk cache of factor sets, one JSON file per (sequence, n, N, bound, version)."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import __version__
from .complexity import FactorSet

ENV_VAR = "NFACTOR_CACHE_DIR"


class FactorCache:
    def __init__(self, directory, version: str = __version__):
        self.directory = Path(directory)
        self.version = version
        self.directory.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def key(self, spec, n: int, N: int, bound: str) -> dict:
        return {"seq": spec.label, "n": n, "N": N, "bound": bound, "version": self.version}

    def path_for(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()[:40]
        return self.directory / f"{digest}.json"

    def get(self, spec, n: int, N: int, bound: str) -> Optional[FactorSet]:
        key = self.key(spec, n, N, bound)
        path = self.path_for(key)
        try:
            entry = json.loads(path.read_text())
            if entry.get("key") != key:
                raise ValueError("key mismatch")
            fs = FactorSet.from_json(entry["payload"])
        except (OSError, ValueError, KeyError, TypeError):
            # unreadable or stale entries count as misses and get overwritten
            self.misses += 1
            return None
        self.hits += 1
        return fs

    def put(self, fs: FactorSet, bound: str) -> Path:
        key = self.key(fs.spec, fs.n, fs.N, bound)
        path = self.path_for(key)
        entry = {
            "key": key,
            "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "payload": fs.to_json(),
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path


def cache_from_env(flag_value: Optional[str] = None) -> Optional[FactorCache]:
    """``--cache-dir`` wins over ``$NFACTOR_CACHE_DIR``; neither means no cache."""
    directory = flag_value or os.environ.get(ENV_VAR)
    return FactorCache(directory) if directory else None
