"""
Connectivity of the word graphs G1..G4 on A^n, and the small-graph swap
and cycling group checks.

Edges are never materialized: each kind has a generator that yields the
neighbours of a word, and a union-find merges them.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import factorial, prod
from typing import Iterator, Sequence

from .core import ComponentPartition, GatePerm, Word, all_words, check_word, degree, weight, word_encode
from .groups import build_chain

KINDS = ("G1", "G2", "G3", "G4")
SMALL_GRAPH_CAP = 12


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller code wins so roots are the least member
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _replace(w: Word, i: int, s: int) -> Word:
    return w[:i] + (s,) + w[i + 1:]


def neighbours(kind: str, w: Word, q: int) -> Iterator[Word]:
    """Words sharing an edge (or hyperedge) with ``w`` in the given graph."""
    n = len(w)
    if kind == "G1":
        for i in range(n):
            for s in range(q):
                if s != w[i]:
                    yield _replace(w, i, s)
    elif kind == "G2":
        for i in range(n - 1):
            if w[i] != w[i + 1]:
                yield w[:i] + (w[i + 1], w[i]) + w[i + 2:]
    elif kind == "G3":
        # w = u a b v lies on hyperedges {uabv, uacv, udbv} with c != b, d != a
        for i in range(n - 1):
            for s in range(q):
                if s != w[i + 1]:
                    yield _replace(w, i + 1, s)
                if s != w[i]:
                    yield _replace(w, i, s)
    elif kind == "G4":
        for i in range(n - 2):
            a, b, c = w[i:i + 3]
            if not a == b == c:
                yield w[:i] + (b, c, a) + w[i + 3:]
    else:
        raise ValueError(f"unknown graph kind {kind!r}; expected one of {KINDS}")


def hyperedges(kind: str, q: int, n: int) -> Iterator[tuple[Word, ...]]:
    """Every edge of the graph as a tuple of words (with repeats)."""
    for w in all_words(q, n):
        if kind in ("G1", "G2"):
            for v in neighbours(kind, w, q):
                if w < v:
                    yield (w, v)
        elif kind == "G3":
            for i in range(n - 1):
                a, b = w[i], w[i + 1]
                for c in range(q):
                    for d in range(q):
                        if c != b and d != a:
                            yield (w, _replace(w, i + 1, c), _replace(w, i, d))
        elif kind == "G4":
            for i in range(n - 2):
                a, b, c = w[i:i + 3]
                if not a == b == c:
                    yield (w, w[:i] + (b, c, a) + w[i + 3:], w[:i] + (c, a, b) + w[i + 3:])
        else:
            raise ValueError(f"unknown graph kind {kind!r}")


def components(kind: str, q: int, n: int) -> ComponentPartition:
    if n < 1:
        raise ValueError("components need n >= 1")
    if kind not in KINDS:
        raise ValueError(f"unknown graph kind {kind!r}; expected one of {KINDS}")
    uf = UnionFind(degree(q, n))
    for w in all_words(q, n):
        cw = word_encode(w, q)
        for v in neighbours(kind, w, q):
            uf.union(cw, word_encode(v, q))
    return ComponentPartition.from_keys(q, n, [uf.find(i) for i in range(q**n)])


@dataclass(frozen=True)
class SmallHypergraph:
    """Vertices 0..vertices-1 and edges of a single size (2 or 3)."""

    vertices: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        edges = tuple(tuple(e) for e in self.edges)
        sizes = {len(e) for e in edges}
        if len(sizes) > 1:
            raise ValueError("all edges must have the same size")
        for e in edges:
            if len(set(e)) != len(e):
                raise ValueError(f"edge {e} repeats a vertex")
            if any(not 0 <= v < self.vertices for v in e):
                raise ValueError(f"edge {e} leaves the vertex range")
        object.__setattr__(self, "edges", edges)

    def components(self) -> list[list[int]]:
        uf = UnionFind(self.vertices)
        for e in self.edges:
            for v in e[1:]:
                uf.union(e[0], v)
        blocks: dict[int, list[int]] = {}
        for v in range(self.vertices):
            blocks.setdefault(uf.find(v), []).append(v)
        return list(blocks.values())


def _cycle_perm(size: int, cycle: Sequence[int]) -> tuple[int, ...]:
    table = list(range(size))
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        table[a] = b
    return tuple(table)


def _generated_order(size: int, perms: list[tuple[int, ...]]) -> int:
    # A set of v points is A^1 over an alphabet of size v.
    if size < 2:
        return 1
    gens = [GatePerm(size, 1, p) for p in perms]
    return build_chain(gens, size, 1).order()


def swap_group_order(h: SmallHypergraph) -> int:
    if h.vertices > SMALL_GRAPH_CAP:
        raise ValueError(f"graph has {h.vertices} vertices, cap is {SMALL_GRAPH_CAP}")
    if h.edges and len(h.edges[0]) != 2:
        raise ValueError("swap groups need 2-edges")
    return _generated_order(h.vertices, [_cycle_perm(h.vertices, e) for e in h.edges])


def cycling_group_order(h: SmallHypergraph) -> int:
    if h.vertices > SMALL_GRAPH_CAP:
        raise ValueError(f"graph has {h.vertices} vertices, cap is {SMALL_GRAPH_CAP}")
    if h.edges and len(h.edges[0]) != 3:
        raise ValueError("cycling groups need 3-edges")
    perms = []
    for a, b, c in h.edges:
        perms.append(_cycle_perm(h.vertices, (a, b, c)))
        perms.append(_cycle_perm(h.vertices, (a, c, b)))
    return _generated_order(h.vertices, perms)


def swap_group_check(h: SmallHypergraph) -> bool:
    """Edge swaps generate the product of symmetric groups on components."""
    expected = prod(factorial(len(b)) for b in h.components())
    return swap_group_order(h) == expected


def cycling_group_check(h: SmallHypergraph) -> bool:
    """Edge 3-cycles generate the product of alternating groups on components."""
    expected = prod(max(1, factorial(len(b)) // 2) for b in h.components())
    return cycling_group_order(h) == expected


def _rotate_at(w: Word, k: int) -> Word:
    # wire rotation on positions k, k+1, k+2: position i receives w[i-1]
    return w[:k] + (w[k + 2], w[k], w[k + 1]) + w[k + 3:]


def consecutive_3cycle_parity_route(q: int, n: int, u: Sequence[int], v: Sequence[int]
                                    ) -> list[int] | None:
    """Shortest list of start positions k such that rotating wires
    (k, k+1, k+2) in turn carries ``u`` to ``v``; None if unreachable.

    Each rotation moves the symbol at k to k+1, k+1 to k+2 and k+2 to k.
    """
    u, v = check_word(u, q), check_word(v, q)
    if len(u) != n or len(v) != n:
        raise ValueError(f"words must have length {n}")
    if weight(u, q) != weight(v, q):
        raise ValueError("words have different weights")
    parent: dict[Word, tuple[Word, int] | None] = {u: None}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            route = []
            while parent[w] is not None:
                w, k = parent[w]
                route.append(k)
            return route[::-1]
        for k in range(n - 2):
            x = _rotate_at(w, k)
            if x not in parent:
                parent[x] = (w, k)
                queue.append(x)
    return None
