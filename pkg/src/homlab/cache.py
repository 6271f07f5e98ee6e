"""Append-log count cache with compaction on load.

One JSON record per line: {"key": [...], "value": "<decimal>", "version":
"..."}.  Later records win (compaction happens in memory on load and the
file is rewritten when it contains corrupt or stale lines).  Writers
serialize through an fcntl lock on a sidecar file, so concurrent
processes cannot interleave partial lines; values are decimal strings so
arbitrary precision survives serialization.
"""

from __future__ import annotations

import fcntl
import json
import os
import warnings
from dataclasses import dataclass


@dataclass(frozen=True)
class CacheRecord:
    key: tuple
    value: str
    engine_version: str


class CountCache:
    def __init__(self, path, engine_version):
        self.path = str(path)
        self.engine_version = engine_version
        self._records = {}
        self._needs_compaction = False
        self._load()

    def _load(self):
        if not os.path.exists(self.path):
            return
        kept = 0
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    key = tuple(rec["key"])
                    value = str(rec["value"])
                    version = rec["version"]
                    int(value)
                except (ValueError, KeyError, TypeError):
                    warnings.warn(f"corrupt cache line ignored in {self.path}")
                    self._needs_compaction = True
                    continue
                if version != self.engine_version:
                    self._needs_compaction = True
                    continue
                if key in self._records:
                    self._needs_compaction = True
                self._records[key] = value
                kept += 1
        if self._needs_compaction:
            self._compact()

    def _lock_path(self):
        return self.path + ".lock"

    def _append(self, key, value):
        record = json.dumps(
            {"key": list(key), "value": value, "version": self.engine_version},
            sort_keys=True,
        )
        lock = open(self._lock_path(), "a+")
        try:
            fcntl.flock(lock, fcntl.LOCK_EX)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(record + "\n")
        finally:
            fcntl.flock(lock, fcntl.LOCK_UN)
            lock.close()

    def _compact(self):
        lock = open(self._lock_path(), "a+")
        try:
            fcntl.flock(lock, fcntl.LOCK_EX)
            tmp = self.path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                for key in sorted(self._records):
                    fh.write(
                        json.dumps(
                            {
                                "key": list(key),
                                "value": self._records[key],
                                "version": self.engine_version,
                            },
                            sort_keys=True,
                        )
                        + "\n"
                    )
            os.replace(tmp, self.path)
            self._needs_compaction = False
        finally:
            fcntl.flock(lock, fcntl.LOCK_UN)
            lock.close()

    def get_or_compute(self, key, compute) -> int:
        key = tuple(key)
        hit = self._records.get(key)
        if hit is not None:
            return int(hit)
        value = compute()
        self._records[key] = str(value)
        self._append(key, str(value))
        return value

    def verify(self, compute_for_key) -> list:
        """Recompute every cached value; return mismatch reports."""
        mismatches = []
        for key in sorted(self._records):
            fresh = compute_for_key(key)
            if str(fresh) != self._records[key]:
                mismatches.append(
                    {
                        "key": list(key),
                        "cached": self._records[key],
                        "recomputed": str(fresh),
                    }
                )
        if mismatches:
            # poisoned entries are repaired by recomputation
            for m in mismatches:
                self._records[tuple(m["key"])] = m["recomputed"]
            self._compact()
        return mismatches

    def __len__(self):
        return len(self._records)
