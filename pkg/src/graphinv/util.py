"""Small shared helpers: deterministic parallel map, seeded random graphs, file cache."""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .graph import LabeledGraph
from .perm import pair_slot


def pmap(fn, items, jobs: int = 1) -> list:
    """Map a pure function over items, preserving order.

    With jobs > 1 the work runs on a thread pool; results are collected in the
    original order so output never depends on the pool width.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def random_labeled_graph(rng: random.Random, n: int, p: float = 0.5) -> LabeledGraph:
    bits = 0
    for j in range(1, n):
        for i in range(j):
            if rng.random() < p:
                bits |= 1 << pair_slot(i, j)
    return LabeledGraph(n, bits)


def cache_fetch(cache_dir: str | None, key: str, build):
    """JSON file cache; the key carries every semantic parameter of the artifact."""
    if not cache_dir:
        return build()
    path = Path(cache_dir) / (hashlib.sha256(key.encode()).hexdigest()[:24] + ".json")
    if path.exists():
        return json.loads(path.read_text())
    obj = build()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True))
    return obj
