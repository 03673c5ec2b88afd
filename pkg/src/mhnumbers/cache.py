"""On-disk cache of Macdonald tables: one JSON file per degree.

Files are written to a temporary sibling and moved into place with
``os.replace`` so readers never observe a half-written table.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .macdonald import TABLE_SCHEMA_VERSION, MacdonaldTable, install_table, macdonald_table

__all__ = ["CacheError", "TableCache"]


class CacheError(RuntimeError):
    pass


class TableCache:
    def __init__(self, directory):
        self.dir = Path(directory)

    def path(self, d):
        return self.dir / f"macdonald_d{d}.json"

    def load(self, d):
        """Table for degree d, or None when absent or of a stale schema."""
        p = self.path(d)
        if not p.exists():
            return None
        try:
            obj = json.loads(p.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheError(f"malformed cache file {p}: {exc}") from exc
        if not isinstance(obj, dict) or obj.get("degree") != d:
            raise CacheError(f"malformed cache file {p}: wrong degree or layout")
        if obj.get("schema_version") != TABLE_SCHEMA_VERSION:
            return None
        try:
            return MacdonaldTable.from_json(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise CacheError(f"malformed cache file {p}: {exc}") from exc

    def store(self, table):
        self.dir.mkdir(parents=True, exist_ok=True)
        data = json.dumps(table.to_json(), indent=1, sort_keys=True, ensure_ascii=False)
        fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".json", dir=self.dir)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(data)
            os.replace(tmp, self.path(table.degree))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def warm(self, d):
        """Make degree-d table available in-process, reading or filling the cache."""
        tab = self.load(d)
        if tab is None:
            tab = macdonald_table(d)
            self.store(tab)
        else:
            install_table(tab)
        return tab
