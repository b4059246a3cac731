"""Labeled simple graphs as edge bitsets: canonical forms, subgraph counting, graph6 I/O.

A graph on [0..n) is a bitset over the C(n,2) pair slots in colex order (the
same bit order graph6 uses).  Canonical forms take the minimum bitset over all
relabelings of the support, with isolated vertices dropped; the sweep over
support permutations doubles as the automorphism oracle.  Sweeps are
vectorized with precomputed slot-permutation tables for supports up to 9
vertices and fall back to a plain loop at 10.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .errors import CapError, FormatError, PreconditionError
from .perm import Permutation, pair_from_slot, pair_slot

MAX_VERTICES = 16
MAX_SUPPORT = 10        # canonical-form brute force refuses larger supports
_TABLE_SUPPORT_MAX = 9  # vectorized permutation tables kept up to this size

_POW2 = np.left_shift(np.int64(1), np.arange(50, dtype=np.int64))


def _bits_to_slots(bits: int) -> list[int]:
    slots = []
    s = 0
    while bits:
        if bits & 1:
            slots.append(s)
        bits >>= 1
        s += 1
    return slots


@dataclass(frozen=True, slots=True)
class LabeledGraph:
    """A simple graph on the explicit vertex set [0..n), edges as a slot bitset."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if not (0 <= self.n <= MAX_VERTICES):
            raise CapError(f"vertex count {self.n} outside [0..{MAX_VERTICES}]")
        if self.bits < 0 or self.bits >> (self.n * (self.n - 1) // 2):
            raise PreconditionError(f"edge bits 0x{self.bits:x} do not fit in K_{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges) -> LabeledGraph:
        bits = 0
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise PreconditionError(f"edge ({i},{j}) outside [0..{n})")
            slot = pair_slot(i, j)
            if bits >> slot & 1:
                raise PreconditionError(f"duplicate edge ({i},{j})")
            bits |= 1 << slot
        return cls(n, bits)

    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(pair_from_slot(s) for s in _bits_to_slots(self.bits))

    def __iter__(self):
        return iter(self.edge_list())

    @property
    def degree(self) -> int:
        """Number of edges."""
        return self.bits.bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        verts = set()
        for i, j in self.edge_list():
            verts.add(i)
            verts.add(j)
        return tuple(sorted(verts))

    @property
    def cv(self) -> int:
        """Number of vertices meeting at least one edge."""
        return len(self.support)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.bits >> pair_slot(i, j) & 1)


@dataclass(frozen=True)
class IsoClass:
    """Canonical representative of an isomorphism class, with cached metadata.

    Two classes are equal iff their canonical bitsets are equal; degree, cv and
    the support automorphism count ride along for free.
    """

    bits: int
    degree: int = field(compare=False)
    cv: int = field(compare=False)
    aut_support: int = field(compare=False)

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.degree, self.bits)

    def rep(self, n: int | None = None) -> LabeledGraph:
        """The canonical labeled representative, on cv vertices unless n is given."""
        amb = self.cv if n is None else n
        if amb < self.cv:
            raise PreconditionError(f"ambient n={amb} smaller than support {self.cv}")
        return LabeledGraph(amb, self.bits)

    @property
    def graph6(self) -> str:
        return emit_graph6(self.rep())

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"IsoClass({self.graph6!r}, degree={self.degree}, cv={self.cv}, aut={self.aut_support})"


EMPTY_CLASS = IsoClass(0, 0, 0, 1)

# ── canonical-form machinery ─────────────────────────────────────────────

_canon_memo: dict[tuple[int, int], IsoClass] = {}
_perm_tables: dict[int, np.ndarray] = {}
_aut_perm_memo: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}


def _perm_table(cv: int) -> np.ndarray:
    """Slot-image table: row per permutation of [0..cv), column per pair slot."""
    tbl = _perm_tables.get(cv)
    if tbl is None:
        perms = np.array(list(permutations(range(cv))), dtype=np.int16)
        nslots = cv * (cv - 1) // 2
        tbl = np.empty((len(perms), nslots), dtype=np.int8)
        for s in range(nslots):
            i, j = pair_from_slot(s)
            pi, pj = perms[:, i], perms[:, j]
            lo = np.minimum(pi, pj).astype(np.int32)
            hi = np.maximum(pi, pj).astype(np.int32)
            tbl[:, s] = (hi * (hi - 1) // 2 + lo).astype(np.int8)
        _perm_tables[cv] = tbl
    return tbl


def _pack_support(bits: int) -> tuple[int, int]:
    """Relabel the support onto [0..cv) preserving order; returns (cv, packed bits)."""
    slots = _bits_to_slots(bits)
    verts = set()
    pairs = []
    for s in slots:
        i, j = pair_from_slot(s)
        verts.add(i)
        verts.add(j)
        pairs.append((i, j))
    rank = {v: k for k, v in enumerate(sorted(verts))}
    packed = 0
    for i, j in pairs:
        packed |= 1 << pair_slot(rank[i], rank[j])
    return len(verts), packed


def _canon_pure(cv: int, bits: int) -> tuple[int, int]:
    """Plain-loop minimum-bitset sweep; reference route and cv=10 fallback."""
    pairs = [pair_from_slot(s) for s in _bits_to_slots(bits)]
    best = None
    count = 0
    for images in permutations(range(cv)):
        val = 0
        for i, j in pairs:
            val |= 1 << pair_slot(images[i], images[j])
        if best is None or val < best:
            best, count = val, 1
        elif val == best:
            count += 1
    return (0, 1) if best is None else (best, count)


def _canon_from_packed(cv: int, bits: int) -> IsoClass:
    slots = _bits_to_slots(bits)
    if cv <= _TABLE_SUPPORT_MAX:
        imgs = _perm_table(cv)[:, slots]
        vals = _POW2[imgs.astype(np.int64)].sum(axis=1)
        best = int(vals.min())
        count = int((vals == best).sum())
    else:
        best, count = _canon_pure(cv, bits)
    return IsoClass(best, len(slots), cv, count)


def canonicalize_bits(bits: int) -> IsoClass:
    """Canonical class of an edge bitset (ambient vertex count is irrelevant)."""
    if bits == 0:
        return EMPTY_CLASS
    cv, packed = _pack_support(bits)
    if cv > MAX_SUPPORT:
        raise CapError(f"support size {cv} exceeds canonical-form cap of {MAX_SUPPORT}")
    key = (cv, packed)
    cls = _canon_memo.get(key)
    if cls is None:
        cls = _canon_from_packed(cv, packed)
        _canon_memo[key] = cls
    return cls


def canonicalize(g: LabeledGraph) -> IsoClass:
    """Canonical class of a labeled graph; idempotent; isolated vertices dropped."""
    return canonicalize_bits(g.bits)


def support_automorphisms(cls: IsoClass) -> tuple[tuple[int, ...], ...]:
    """All support permutations fixing the canonical edge set (image tuples)."""
    key = (cls.cv, cls.bits)
    cached = _aut_perm_memo.get(key)
    if cached is not None:
        return cached
    if cls.cv == 0:
        result: tuple[tuple[int, ...], ...] = ((),)
    elif cls.cv <= _TABLE_SUPPORT_MAX:
        slots = _bits_to_slots(cls.bits)
        imgs = _perm_table(cls.cv)[:, slots]
        vals = _POW2[imgs.astype(np.int64)].sum(axis=1)
        idx = np.nonzero(vals == cls.bits)[0]
        all_perms = list(permutations(range(cls.cv)))
        result = tuple(all_perms[i] for i in idx)
    else:
        pairs = [pair_from_slot(s) for s in _bits_to_slots(cls.bits)]
        keep = []
        for images in permutations(range(cls.cv)):
            val = 0
            for i, j in pairs:
                val |= 1 << pair_slot(images[i], images[j])
            if val == cls.bits:
                keep.append(images)
        result = tuple(keep)
    assert len(result) == cls.aut_support
    _aut_perm_memo[key] = result
    return result


def permute_bits(bits: int, images) -> int:
    """Relabel an edge bitset by a vertex image sequence."""
    out = 0
    for s in _bits_to_slots(bits):
        i, j = pair_from_slot(s)
        out |= 1 << pair_slot(images[i], images[j])
    return out


def apply_permutation(g: LabeledGraph, p: Permutation | tuple[int, ...]) -> LabeledGraph:
    images = p.images if isinstance(p, Permutation) else tuple(p)
    if len(images) < g.n:
        raise PreconditionError("permutation too short for the graph")
    return LabeledGraph(g.n, permute_bits(g.bits, images))


# ── subgraph counting ────────────────────────────────────────────────────

_hist_cache: dict[tuple[int, int], Counter] = {}


def subgraph_class_counts(host: LabeledGraph | IsoClass, degree: int) -> Counter:
    """Histogram of the isomorphism classes of all degree-edge subsets of host."""
    bits = host.bits
    key = (bits, degree)
    hist = _hist_cache.get(key)
    if hist is not None:
        return hist
    hist = Counter()
    if degree == 0:
        hist[EMPTY_CLASS] = 1
    else:
        pairs = [pair_from_slot(s) for s in _bits_to_slots(bits)]
        if degree <= len(pairs):
            for combo in combinations(pairs, degree):
                verts = sorted({v for e in combo for v in e})
                rank = {v: k for k, v in enumerate(verts)}
                packed = 0
                for i, j in combo:
                    packed |= 1 << pair_slot(rank[i], rank[j])
                cv = len(verts)
                ckey = (cv, packed)
                cls = _canon_memo.get(ckey)
                if cls is None:
                    if cv > MAX_SUPPORT:
                        raise CapError(f"subset support {cv} exceeds cap of {MAX_SUPPORT}")
                    cls = _canon_from_packed(cv, packed)
                    _canon_memo[ckey] = cls
                hist[cls] += 1
    _hist_cache[key] = hist
    return hist


def count_subgraphs(pattern: IsoClass, host: LabeledGraph | IsoClass) -> int:
    """Number of edge subsets of host whose class is pattern (never raises)."""
    if pattern.degree == 0:
        return 1
    host_degree = host.bits.bit_count()
    if pattern.degree > host_degree:
        return 0
    return subgraph_class_counts(host, pattern.degree).get(pattern, 0)


def count_subgraphs_injective(pattern: IsoClass, host: LabeledGraph | IsoClass) -> int:
    """Independent oracle: edge-preserving injections of the support, divided by aut order."""
    if pattern.degree == 0:
        return 1
    host_bits = host.bits
    host_support = sorted({v for s in _bits_to_slots(host_bits) for v in pair_from_slot(s)})
    if pattern.cv > len(host_support):
        return 0
    pat_edges = [pair_from_slot(s) for s in _bits_to_slots(pattern.bits)]
    total = 0
    for images in permutations(host_support, pattern.cv):
        ok = True
        for a, b in pat_edges:
            if not host_bits >> pair_slot(images[a], images[b]) & 1:
                ok = False
                break
        if ok:
            total += 1
    if total % pattern.aut_support:
        raise AssertionError("injection count not divisible by automorphism order")
    return total // pattern.aut_support


def pattern_copies(pattern: IsoClass, host: LabeledGraph | IsoClass) -> list[int]:
    """Edge bitsets of all copies of pattern inside host (host labeling)."""
    if pattern.degree == 0:
        return [0]
    slots = _bits_to_slots(host.bits)
    if pattern.degree > len(slots):
        return []
    out = []
    for combo in combinations(slots, pattern.degree):
        sub = 0
        for s in combo:
            sub |= 1 << s
        if canonicalize_bits(sub) == pattern:
            out.append(sub)
    return out


# ── complement / union / components ──────────────────────────────────────

def complement(g: LabeledGraph, n: int) -> LabeledGraph:
    """Edge set of K_n minus g; an involution on graphs with support inside [0..n)."""
    nslots = n * (n - 1) // 2
    if g.bits >> nslots:
        raise PreconditionError(f"graph does not fit inside K_{n}")
    full = (1 << nslots) - 1
    return LabeledGraph(n, full ^ g.bits)


def disjoint_union(parts) -> IsoClass:
    """Canonical class of the vertex-disjoint union of classes (Counter or iterable)."""
    if isinstance(parts, (Counter, dict)):
        seq: list[IsoClass] = []
        for cls, mult in parts.items():
            seq.extend([cls] * mult)
    else:
        seq = list(parts)
    total_cv = sum(c.cv for c in seq)
    if total_cv > MAX_SUPPORT:
        raise CapError(
            f"disjoint union support {total_cv} exceeds canonical-form cap of {MAX_SUPPORT}"
        )
    bits = 0
    offset = 0
    for cls in seq:
        for i, j in cls.rep().edge_list():
            bits |= 1 << pair_slot(i + offset, j + offset)
        offset += cls.cv
    return canonicalize_bits(bits)


def connected_component_classes(g: LabeledGraph | IsoClass) -> Counter:
    """Multiset of canonical classes of the edge-connected components."""
    bits = g.bits
    adj: dict[int, set[int]] = {}
    edges_at: dict[int, list[int]] = {}
    for s in _bits_to_slots(bits):
        i, j = pair_from_slot(s)
        adj.setdefault(i, set()).add(j)
        adj.setdefault(j, set()).add(i)
        edges_at.setdefault(i, []).append(s)
        edges_at.setdefault(j, []).append(s)
    comps: Counter = Counter()
    seen: set[int] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        stack = [start]
        verts = {start}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in verts:
                    verts.add(w)
                    stack.append(w)
        seen |= verts
        comp_bits = 0
        for v in verts:
            for s in edges_at[v]:
                comp_bits |= 1 << s
        comps[canonicalize_bits(comp_bits)] += 1
    return comps


connected_components = connected_component_classes


def is_connected_class(cls: IsoClass) -> bool:
    """True when the class has at least one edge and a single edge-connected component."""
    if cls.degree == 0:
        return False
    return sum(connected_component_classes(cls).values()) == 1


# ── graph6 and edge-list text formats ────────────────────────────────────

def emit_graph6(g: LabeledGraph) -> str:
    """Standard graph6 encoding (column-wise upper triangle, offset 63)."""
    nslots = g.n * (g.n - 1) // 2
    chars = [chr(63 + g.n)]
    for group_start in range(0, nslots, 6):
        val = 0
        for t in range(6):
            s = group_start + t
            if s < nslots and g.bits >> s & 1:
                val |= 1 << (5 - t)
        chars.append(chr(63 + val))
    return "".join(chars)


def parse_graph6(text: str) -> LabeledGraph:
    """Parse a graph6 string (optionally prefixed with the '>>graph6<<' header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    if not s:
        raise FormatError("empty graph6 string")
    n = ord(s[0]) - 63
    if n < 0 or n > MAX_VERTICES:
        raise CapError(f"graph6 vertex count {n} outside [0..{MAX_VERTICES}]")
    nslots = n * (n - 1) // 2
    ngroups = (nslots + 5) // 6
    body = s[1:]
    if len(body) != ngroups:
        raise FormatError(f"graph6 body length {len(body)} != expected {ngroups}")
    bits = 0
    for gidx, ch in enumerate(body):
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise FormatError(f"graph6 byte {ch!r} out of range")
        for t in range(6):
            s_idx = 6 * gidx + t
            if val >> (5 - t) & 1:
                if s_idx >= nslots:
                    raise FormatError("graph6 padding bits must be zero")
                bits |= 1 << s_idx
    return LabeledGraph(n, bits)


def emit_edge_list(g: LabeledGraph) -> str:
    return ",".join(f"{i}-{j}" for i, j in g.edge_list())


def parse_edge_list(text: str, n: int | None = None) -> LabeledGraph:
    """Parse "i-j,i-j,..."; n defaults to 1 + max vertex (0 when empty)."""
    s = text.strip()
    edges = []
    if s:
        for tok in s.split(","):
            parts = tok.strip().split("-")
            if len(parts) != 2:
                raise FormatError(f"bad edge token {tok!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise FormatError(f"bad edge token {tok!r}") from exc
            edges.append((i, j))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return LabeledGraph.from_edges(n, edges)


def parse_graph(text: str, n: int | None = None) -> LabeledGraph:
    """Accept either graph6 or the i-j,... edge-list format."""
    s = text.strip()
    if "-" in s or s == "":
        return parse_edge_list(s, n)
    g = parse_graph6(s)
    if n is not None and n != g.n:
        if n < g.n:
            raise PreconditionError(f"requested n={n} smaller than graph6 n={g.n}")
        g = LabeledGraph(n, g.bits)
    return g
