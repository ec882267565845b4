"""Small shared helpers."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    """Parallelism cap; BRAIDFORGE_THREADS=1 forces sequential execution."""
    raw = os.environ.get("BRAIDFORGE_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return max(1, n) if n else min(8, os.cpu_count() or 1)


def parallel_map(fn, items):
    """Order-preserving map over independent pure tasks."""
    items = list(items)
    cap = thread_cap()
    if cap == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(cap, len(items))) as pool:
        return list(pool.map(fn, items))


def canonical_json(payload) -> str:
    """Stable serialization: fixed separators and key order, trailing newline."""
    return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False) + "\n"
