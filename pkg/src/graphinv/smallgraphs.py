"""Named small graph classes used throughout the checks and examples."""

from __future__ import annotations

from .graph import IsoClass, LabeledGraph, canonicalize

_EDGE_LISTS = {
    "empty": [],
    "K2": [(0, 1)],
    "P3": [(0, 1), (1, 2)],
    "2K2": [(0, 1), (2, 3)],
    "K3": [(0, 1), (0, 2), (1, 2)],
    "K1,3": [(0, 1), (0, 2), (0, 3)],
    "P4": [(0, 1), (1, 2), (2, 3)],
    "3K2": [(0, 1), (2, 3), (4, 5)],
    "P3+K2": [(0, 1), (1, 2), (3, 4)],
    "paw": [(0, 1), (0, 2), (1, 2), (0, 3)],
    "C4": [(0, 1), (1, 2), (2, 3), (0, 3)],
    "2P3": [(0, 1), (1, 2), (3, 4), (4, 5)],
    "K1,4": [(0, 1), (0, 2), (0, 3), (0, 4)],
    "P5": [(0, 1), (1, 2), (2, 3), (3, 4)],
    "diamond": [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
    "K4": [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
}


def named_class(name: str) -> IsoClass:
    edges = _EDGE_LISTS[name]
    n = 1 + max((max(e) for e in edges), default=-1)
    return canonicalize(LabeledGraph.from_edges(n, edges))


def class_name(cls: IsoClass) -> str | None:
    """Inverse lookup for reporting; None when the class has no listed name."""
    for name in _EDGE_LISTS:
        if named_class(name) == cls:
            return name
    return None
