"""Slow, obviously-correct reference implementations used by the tests."""

from __future__ import annotations

import itertools
from collections import deque

from revgates.core import GatePerm


def positional_code(w, q):
    return sum(s * q ** (len(w) - 1 - i) for i, s in enumerate(w))


def words(q, n):
    return [tuple(w) for w in itertools.product(range(q), repeat=n)]


def inversion_parity(table):
    inv = sum(1 for i in range(len(table)) for j in range(i + 1, len(table)) if table[i] > table[j])
    return inv & 1


def closure(gens, size):
    """All elements of the group generated by ``gens`` (tables), by BFS."""
    ident = tuple(range(size))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def gate_from_map(q, n, fn):
    ws = words(q, n)
    index = {w: i for i, w in enumerate(ws)}
    return GatePerm(q, n, tuple(index[tuple(fn(w))] for w in ws))


def coordinate_shuffle(w, alpha_1based):
    """pi_alpha(x)_i = x_{alpha^-1(i)} with alpha given as a dict on 1..n."""
    inv = {v: k for k, v in alpha_1based.items()}
    return tuple(w[inv[i + 1] - 1] for i in range(len(w)))


def controlled_by_hand(ctrl, base_fn, q, n_base):
    k = len(ctrl)

    def fn(w):
        if tuple(w[:k]) == tuple(ctrl):
            return tuple(w[:k]) + tuple(base_fn(w[k:]))
        return w

    return gate_from_map(q, k + n_base, fn)


def components_by_bfs(q, n, adjacent):
    """Connected components of the graph on A^n with ``adjacent(u, v)``."""
    ws = words(q, n)
    left = set(ws)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        queue = deque([start])
        left.discard(start)
        while queue:
            u = queue.popleft()
            for v in list(left):
                if adjacent(u, v):
                    left.discard(v)
                    comp.add(v)
                    queue.append(v)
        comps.append(comp)
    return comps


def shortest_word_length(target, gens, max_depth):
    """Plain BFS distance from identity to ``target`` over ``gens``."""
    size = len(target)
    ident = tuple(range(size))
    if target == ident:
        return 0
    seen = {ident}
    layer = [ident]
    for d in range(1, max_depth + 1):
        nxt = []
        for x in layer:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    if y == target:
                        return d
                    seen.add(y)
                    nxt.append(y)
        layer = nxt
    return None
