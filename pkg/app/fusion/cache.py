"""Memo table for fusion ranks with optional JSON persistence."""

import json
import sys
import threading
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

RankKey = Tuple[int, Tuple[int, ...]]


def _encode_key(key: RankKey) -> str:
    level, weights = key
    return f"{level}|{','.join(str(w) for w in weights)}"


def _decode_key(text: str) -> RankKey:
    level, weights = text.split('|', 1)
    return int(level), tuple(int(w) for w in weights.split(',') if w)


class FusionCache:
    """One logical map from (level, canonical weights) to rank.

    Inserts go through ``dict.setdefault`` under a lock, so concurrent callers
    that race on the same key all observe the first stored value.
    """

    def __init__(self) -> None:
        self._ranks: Dict[RankKey, int] = {}
        self._rows: Dict[int, List[List[int]]] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._ranks)

    def get(self, key: RankKey) -> Optional[int]:
        return self._ranks.get(key)

    def get_or_insert(self, key: RankKey, compute: Callable[[], int]) -> int:
        """Return the cached rank for ``key``, computing it outside the lock on a miss."""
        value = self._ranks.get(key)
        if value is not None:
            return value
        value = compute()
        with self._lock:
            return self._ranks.setdefault(key, value)

    def level_rows(self, level: int, upto: int, extend: Callable[[List[List[int]], int], None]) -> List[List[int]]:
        """Rows 0..upto of the r_level(j, t) table, grown in place by ``extend``."""
        with self._lock:
            rows = self._rows.setdefault(level, [])
            if len(rows) <= upto:
                extend(rows, upto)
            return rows

    def items(self) -> Iterable[Tuple[RankKey, int]]:
        return list(self._ranks.items())

    def clear(self) -> None:
        with self._lock:
            self._ranks.clear()
            self._rows.clear()

    def load(self, path: Path) -> int:
        """Merge a JSON memo file into the cache; returns the number of entries read."""
        path = Path(path)
        if not path.exists():
            return 0
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, ValueError) as e:
            print(f"⚠️  Warning: Could not load fusion cache {path}: {e}", file=sys.stderr)
            return 0
        ranks = data.get("ranks") if isinstance(data, dict) else None
        if not isinstance(ranks, dict):
            print(f"⚠️  Warning: Could not load fusion cache {path}: no 'ranks' object", file=sys.stderr)
            return 0

        loaded, skipped = 0, 0
        with self._lock:
            for text, value in ranks.items():
                try:
                    key = _decode_key(text)
                except ValueError:
                    skipped += 1
                    continue
                # bool is an int subclass
                if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                    skipped += 1
                    continue
                self._ranks.setdefault(key, value)
                loaded += 1
        if skipped:
            print(f"⚠️  Warning: Skipped {skipped} malformed entries in {path}", file=sys.stderr)
        return loaded

    def save(self, path: Path) -> None:
        """Write the memo table as JSON."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"ranks": {_encode_key(k): v for k, v in sorted(self.items())}}
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=2)


# Process-wide cache shared by every rank algorithm
fusion_cache = FusionCache()
