"""Append-only memo store for correlators of one curve."""

from __future__ import annotations

import threading
from typing import Any, Callable, Hashable


class CorrelatorTable:
    """Entries keyed by tuples such as ``("omega", g, n)`` or ``("W", g, k, l)``.

    Reads are lock-free; writes are serialized and an entry, once stored, is
    never replaced.
    """

    def __init__(self, tag: Hashable):
        self.tag = tag
        self._data: dict[Hashable, Any] = {}
        self._lock = threading.RLock()

    def __contains__(self, key: Hashable) -> bool:
        return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def get(self, key: Hashable, default: Any = None) -> Any:
        return self._data.get(key, default)

    def __getitem__(self, key: Hashable) -> Any:
        try:
            return self._data[key]
        except KeyError:
            raise KeyError(f"{key!r} has not been computed for {self.tag!r}") from None

    def put(self, key: Hashable, value: Any) -> Any:
        with self._lock:
            old = self._data.get(key)
            if old is not None:
                if old != value:
                    raise ValueError(f"conflicting values for {key!r}")
                return old
            self._data[key] = value
            return value

    def fetch(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Return the stored entry, computing and storing it on first use."""
        hit = self._data.get(key)
        if hit is not None:
            return hit
        return self.put(key, compute())

    def keys(self):
        return list(self._data)


_TABLES: dict[Hashable, CorrelatorTable] = {}
_TABLES_LOCK = threading.Lock()


def table_for(curve, variant: Hashable = None) -> CorrelatorTable:
    """The shared table of ``curve`` (one per curve and computation variant)."""
    tag = (curve.key(), variant)
    with _TABLES_LOCK:
        t = _TABLES.get(tag)
        if t is None:
            t = _TABLES[tag] = CorrelatorTable(tag)
        return t


def clear_tables() -> None:
    with _TABLES_LOCK:
        _TABLES.clear()
