"""
Shortest decompositions of a target gate over a fixed set of gate
placements, by breadth-first search and by meet-in-the-middle.

States are whole permutation tables held as numpy rows. A 64-bit hash
buckets them; every hash hit is confirmed against the full table, so an
exhaustion result is never the product of a collision.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import extend
from .circuit import Circuit, GateDef, GateInstance
from .core import GatePerm

DEFAULT_MEM_BUDGET = 4 << 30
_CHUNK_ROWS = 1 << 21

_rng = np.random.default_rng(0x5EED)
_HASH_KEYS = _rng.integers(1, 2**63, size=4096, dtype=np.uint64) | np.uint64(1)


class ResourceCapError(RuntimeError):
    """The search would exceed its memory budget."""


@dataclass
class InstanceSet:
    """Distinct placements of gate definitions on ``n`` wires."""

    q: int
    n: int
    gates: list[GatePerm]
    labels: list[tuple[GateDef, tuple[int, ...]]]

    def __post_init__(self):
        size = self.q**self.n
        self.dtype = np.uint8 if size <= 256 else np.uint16
        self.width = size
        self.arr = np.array([g.table for g in self.gates], dtype=self.dtype).reshape(-1, size)
        self.inv_arr = np.array([g.inverse().table for g in self.gates], dtype=self.dtype).reshape(-1, size)
        index = {g.table: i for i, g in enumerate(self.gates)}
        self.inverse_index = np.array(
            [index.get(g.inverse().table, -1) for g in self.gates], dtype=np.int64
        )

    def __len__(self) -> int:
        return len(self.gates)

    def circuit(self, word: Sequence[int]) -> Circuit:
        return Circuit(
            self.q, self.n, tuple(GateInstance(*self.labels[i]) for i in word)
        )

    def evaluate(self, word: Sequence[int]) -> GatePerm:
        table = tuple(range(self.width))
        for i in word:
            t = self.gates[i].table
            table = tuple(map(t.__getitem__, table))
        return GatePerm(self.q, self.n, table)


def enumerate_instances(bases: GateDef | Sequence[GateDef], n: int) -> InstanceSet:
    """Every placement of each base gate on an ordered tuple of distinct
    wires, deduplicated by table (first placement in lexicographic wire
    order wins)."""
    if isinstance(bases, GateDef):
        bases = [bases]
    q = bases[0].q
    gates, labels, seen = [], [], set()
    for gd in bases:
        if gd.arity > n:
            raise ValueError(f"gate {gd.name} of arity {gd.arity} does not fit on {n} wires")
        for wires in itertools.permutations(range(n), gd.arity):
            g = extend(gd.perm, n, wires)
            if g.table in seen:
                continue
            seen.add(g.table)
            gates.append(g)
            labels.append((gd, wires))
    return InstanceSet(q, n, gates, labels)


@dataclass
class SearchResult:
    """``status`` is ``found`` (with ``word``/``circuit``) or ``exhausted``,
    meaning no decomposition of length <= ``depth`` exists."""

    status: str
    depth: int
    word: list[int] | None = None
    circuit: Circuit | None = field(default=None, repr=False)
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.status == "found"


# table hashing and exact set membership


def _hash_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    out = np.zeros(len(rows), dtype=np.uint64)
    keys = _HASH_KEYS[: rows.shape[1]]
    step = 1 << 18
    for lo in range(0, len(rows), step):
        block = rows[lo:lo + step].astype(np.uint64)
        h = (block * keys).sum(axis=1, dtype=np.uint64)
        h ^= h >> np.uint64(31)
        h *= np.uint64(0x9E3779B97F4A7C15)
        h ^= h >> np.uint64(29)
        out[lo:lo + step] = h
    return out


def _first_unique(rows: np.ndarray, hashes: np.ndarray) -> np.ndarray:
    """Indices of the first occurrence of each distinct row, ascending."""
    if len(rows) == 0:
        return np.zeros(0, dtype=np.int64)
    _, first, inverse = np.unique(hashes, return_index=True, return_inverse=True)
    rep = first[inverse]
    same = (rows == rows[rep]).all(axis=1)
    keep = set(first.tolist())
    if not same.all():
        # hash collisions between different tables: resolve exactly
        groups: dict[int, list[int]] = {}
        for i in np.flatnonzero(~same).tolist():
            groups.setdefault(int(rep[i]), []).append(i)
        for r, members in groups.items():
            kept = [r]
            for i in sorted(members):
                if not any(np.array_equal(rows[i], rows[k]) for k in kept):
                    kept.append(i)
                    keep.add(i)
    return np.array(sorted(keep), dtype=np.int64)


class _TableSet:
    """Exact set of tables, probed by sorted hash."""

    def __init__(self, width: int, dtype):
        self.rows = np.zeros((0, width), dtype=dtype)
        self.sorted_hashes = np.zeros(0, dtype=np.uint64)
        self.order = np.zeros(0, dtype=np.int64)

    def add(self, rows: np.ndarray, hashes: np.ndarray) -> np.ndarray:
        """Append rows; returns their indices in this set."""
        start = len(self.rows)
        self.rows = np.concatenate([self.rows, rows])
        all_h = np.concatenate([self.sorted_hashes, hashes])
        all_o = np.concatenate([self.order, np.arange(start, start + len(rows))])
        perm = np.argsort(all_h, kind="stable")
        self.sorted_hashes, self.order = all_h[perm], all_o[perm]
        return np.arange(start, start + len(rows))

    def lookup(self, rows: np.ndarray, hashes: np.ndarray) -> np.ndarray:
        """For each row, its index in the set or -1."""
        result = np.full(len(rows), -1, dtype=np.int64)
        if len(self.sorted_hashes) == 0 or len(rows) == 0:
            return result
        pos = np.searchsorted(self.sorted_hashes, hashes)
        pos_c = np.minimum(pos, len(self.sorted_hashes) - 1)
        hit = self.sorted_hashes[pos_c] == hashes
        idx = np.flatnonzero(hit)
        if len(idx) == 0:
            return result
        stored = self.order[pos_c[idx]]
        equal = (self.rows[stored] == rows[idx]).all(axis=1)
        result[idx[equal]] = stored[equal]
        for i in idx[~equal].tolist():
            p = int(pos_c[i]) + 1
            while p < len(self.sorted_hashes) and self.sorted_hashes[p] == hashes[i]:
                s = int(self.order[p])
                if np.array_equal(self.rows[s], rows[i]):
                    result[i] = s
                    break
                p += 1
        return result

    def __len__(self) -> int:
        return len(self.rows)


class _Layers:
    """BFS layers from a root, with parent links for word recovery."""

    def __init__(self, root: np.ndarray, inst: InstanceSet, backward: bool, budget: int):
        self.inst = inst
        self.gen = inst.inv_arr if backward else inst.arr
        self.seen = _TableSet(inst.width, inst.dtype)
        root = root.reshape(1, -1).astype(inst.dtype)
        self.seen.add(root, _hash_rows(root))
        self.start = [0]  # index in seen where each layer begins
        self.size = [1]
        self.parent = [np.array([-1], dtype=np.int64)]
        self.via = [np.array([-1], dtype=np.int64)]
        self.budget = budget
        self.nodes = 0

    @property
    def depth(self) -> int:
        return len(self.size) - 1

    def layer_rows(self, d: int) -> np.ndarray:
        return self.seen.rows[self.start[d]:self.start[d] + self.size[d]]

    def _row_bytes(self) -> int:
        return self.inst.width * np.dtype(self.inst.dtype).itemsize + 40

    def expand(self, prune_inverse: bool = True) -> None:
        d = self.depth
        frontier = self.layer_rows(d)
        last_via = self.via[d]
        m = len(self.inst)
        projected = (len(self.seen) + len(frontier) * max(m - 1, 1)) * self._row_bytes()
        if projected > self.budget and len(frontier) * m * self._row_bytes() > self.budget:
            raise ResourceCapError(
                f"layer {d + 1} may need {projected >> 20} MiB, budget is {self.budget >> 20} MiB"
            )
        new_rows, new_parent, new_via, new_hash = [], [], [], []
        step = max(1, _CHUNK_ROWS // m)
        for lo in range(0, len(frontier), step):
            block = frontier[lo:lo + step]
            cand = self.gen[:, block].transpose(1, 0, 2).reshape(-1, self.inst.width)
            parent = np.repeat(np.arange(lo, lo + len(block)), m)
            via = np.tile(np.arange(m), len(block))
            if prune_inverse and d > 0:
                back = self.inst.inverse_index[last_via[parent]]
                keep = via != back
                cand, parent, via = cand[keep], parent[keep], via[keep]
            self.nodes += len(cand)
            h = _hash_rows(cand)
            first = _first_unique(cand, h)
            cand, parent, via, h = cand[first], parent[first], via[first], h[first]
            fresh = self.seen.lookup(cand, h) < 0
            new_rows.append(cand[fresh])
            new_parent.append(parent[fresh])
            new_via.append(via[fresh])
            new_hash.append(h[fresh])
        rows = np.concatenate(new_rows) if new_rows else np.zeros((0, self.inst.width), self.inst.dtype)
        h = np.concatenate(new_hash) if new_hash else np.zeros(0, np.uint64)
        first = _first_unique(rows, h)
        self.start.append(len(self.seen))
        self.seen.add(rows[first], h[first])
        self.size.append(len(first))
        self.parent.append(np.concatenate(new_parent)[first] if new_parent else np.zeros(0, np.int64))
        self.via.append(np.concatenate(new_via)[first] if new_via else np.zeros(0, np.int64))
        if len(self.seen) * self._row_bytes() > self.budget:
            raise ResourceCapError(f"visited set exceeds budget of {self.budget >> 20} MiB")

    def path(self, d: int, idx: int) -> list[int]:
        """Instance indices from the root to element ``idx`` of layer ``d``."""
        out = []
        while d > 0:
            out.append(int(self.via[d][idx]))
            idx = int(self.parent[d][idx])
            d -= 1
        return out[::-1]

    def find_in_layer(self, d: int, rows: np.ndarray, hashes: np.ndarray) -> np.ndarray:
        """Layer-``d`` index of each row, or -1."""
        idx = self.seen.lookup(rows, hashes)
        lo, hi = self.start[d], self.start[d] + self.size[d]
        ok = (idx >= lo) & (idx < hi)
        return np.where(ok, idx - lo, -1)


def _as_row(target: GatePerm, inst: InstanceSet) -> np.ndarray:
    if (target.q, target.n) != (inst.q, inst.n):
        raise ValueError(
            f"target on {target.q}^{target.n} but instances act on {inst.q}^{inst.n}"
        )
    return np.array(target.table, dtype=inst.dtype)


def _finish(inst: InstanceSet, target: GatePerm, word: list[int], depth: int,
            nodes: int, t0: float) -> SearchResult:
    got = inst.evaluate(word)
    if got != target:
        raise AssertionError("search produced a word that does not evaluate to the target")
    return SearchResult("found", depth, word, inst.circuit(word), nodes, time.perf_counter() - t0)


def bfs_min(target: GatePerm, inst: InstanceSet, max_depth: int,
            mem_budget: int = DEFAULT_MEM_BUDGET, prune_inverse: bool = True) -> SearchResult:
    """Breadth-first search from the identity.

    Layers are expanded parent by parent in order and instances in order,
    so the first word reaching the target is the lexicographically least
    among the shortest ones.
    """
    t0 = time.perf_counter()
    row = _as_row(target, inst)
    if target.is_identity():
        return _finish(inst, target, [], 0, 0, t0)
    fwd = _Layers(np.arange(inst.width), inst, backward=False, budget=mem_budget)
    h = _hash_rows(row[None, :])
    for d in range(1, max_depth + 1):
        fwd.expand(prune_inverse)
        idx = fwd.find_in_layer(d, row[None, :], h)[0]
        if idx >= 0:
            return _finish(inst, target, fwd.path(d, int(idx)), d, fwd.nodes, t0)
        if fwd.size[d] == 0:
            break
    return SearchResult("exhausted", max_depth, nodes=fwd.nodes, elapsed=time.perf_counter() - t0)


def _meet_stream(fwd: _Layers, bwd: _Layers, i: int, j: int, workers: int) -> list[tuple[int, int, int]]:
    """Meets between ``layer(i-1) * instance`` and backward layer ``j``,
    without storing forward layer ``i``. Returns (parent, instance, back index)."""
    inst = fwd.inst
    m = len(inst)
    parents = fwd.layer_rows(i - 1)
    step = max(1, _CHUNK_ROWS // m)

    def work(lo: int):
        block = parents[lo:lo + step]
        cand = inst.arr[:, block].transpose(1, 0, 2).reshape(-1, inst.width)
        h = _hash_rows(cand)
        idx = bwd.find_in_layer(j, cand, h)
        hits = np.flatnonzero(idx >= 0)
        return [(lo + int(k) // m, int(k) % m, int(idx[k])) for k in hits]

    starts = range(0, len(parents), step)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(work, starts))
    else:
        chunks = [work(lo) for lo in starts]
    fwd.nodes += len(parents) * m
    return [hit for chunk in chunks for hit in chunk]


def mitm_min(target: GatePerm, inst: InstanceSet, max_depth: int,
             mem_budget: int = DEFAULT_MEM_BUDGET, workers: int = 1) -> SearchResult:
    """Meet-in-the-middle search for a shortest decomposition.

    Depth ``d`` is tested by meeting the forward sphere of radius
    ceil(d/2) around the identity with the backward sphere of radius
    floor(d/2) around the target (built with inverse instances). The
    forward sphere is streamed instead of stored when it is the last one
    needed. Among all meets at the minimal depth the least word is returned.
    """
    t0 = time.perf_counter()
    row = _as_row(target, inst)
    if target.is_identity():
        return _finish(inst, target, [], 0, 0, t0)
    fwd = _Layers(np.arange(inst.width), inst, backward=False, budget=mem_budget // 2)
    bwd = _Layers(row, inst, backward=True, budget=mem_budget // 2)
    for d in range(1, max_depth + 1):
        i, j = (d + 1) // 2, d // 2
        while bwd.depth < j:
            bwd.expand()
        if fwd.depth < i and d == max_depth:
            hits = _meet_stream(fwd, bwd, i, j, workers)
            words = [fwd.path(i - 1, p) + [s] + bwd.path(j, b)[::-1] for p, s, b in hits]
        else:
            while fwd.depth < i:
                fwd.expand()
            rows = fwd.layer_rows(i)
            idx = bwd.find_in_layer(j, rows, _hash_rows(rows))
            words = [fwd.path(i, int(k)) + bwd.path(j, int(idx[k]))[::-1]
                     for k in np.flatnonzero(idx >= 0)]
        if words:
            return _finish(inst, target, min(words), d, fwd.nodes + bwd.nodes, t0)
    return SearchResult("exhausted", max_depth, nodes=fwd.nodes + bwd.nodes,
                        elapsed=time.perf_counter() - t0)


def certify_lower_bound(target: GatePerm, inst: InstanceSet, d: int,
                        mem_budget: int = DEFAULT_MEM_BUDGET) -> bool:
    """True iff no word of length <= d over ``inst`` evaluates to ``target``.

    Raises ResourceCapError rather than answering from a partial search.
    """
    return not mitm_min(target, inst, d, mem_budget).found
