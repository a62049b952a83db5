"""
Permutation groups acting on A^n.

``StabilizerChain`` is a deterministic Schreier-Sims construction used for
exact orders and membership. Factorization into the original generators
goes through a separate table of short words (Minkwitz's method), built
lazily the first time it is needed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import factorial, prod
from typing import Callable, Hashable, Iterable, Sequence

from .algebra import WirePerm, extend, permute_word
from .core import (
    ComponentPartition,
    GatePerm,
    Word,
    all_words,
    is_conservative,
    restriction_parities,
    weight,
    weight_classes,
    word_decode,
    word_encode,
)

# Largest degree the chain will accept.
CHAIN_DEGREE_CAP = 4096

Perm = tuple[int, ...]
Letter = tuple[int, int]  # (generator index, +1 or -1)


def _mul(a: Perm, b: Perm) -> Perm:
    return tuple(map(b.__getitem__, a))


def _inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


class _Level:
    __slots__ = ("point", "strong", "trans", "trans_inv", "orbit", "checked")

    def __init__(self, point: int, degree: int):
        ident = tuple(range(degree))
        self.point = point
        self.strong: list[Perm] = []
        self.trans: dict[int, Perm] = {point: ident}
        self.trans_inv: dict[int, Perm] = {point: ident}
        self.orbit: list[int] = [point]
        self.checked: set[tuple[int, int]] = set()

    def add_generator(self, s: Perm) -> None:
        self.strong.append(s)
        i = 0
        while i < len(self.orbit):
            gamma = self.orbit[i]
            u = self.trans[gamma]
            for g in self.strong:
                delta = g[gamma]
                if delta not in self.trans:
                    t = _mul(u, g)
                    self.trans[delta] = t
                    self.trans_inv[delta] = _inv(t)
                    self.orbit.append(delta)
            i += 1


class NotInGroupError(ValueError):
    pass


class StabilizerChain:
    """Base and strong generating set for the group generated by ``gens``.

    Base points are chosen as the least point moved by the element that
    forces a new level, so the chain depends only on the generator order.
    """

    def __init__(self, gens: Sequence[GatePerm], q: int | None = None, n: int | None = None):
        gens = list(gens)
        if gens:
            q, n = gens[0].q, gens[0].n
            for g in gens:
                if (g.q, g.n) != (q, n):
                    raise ValueError("all generators must act on the same A^n")
        elif q is None or n is None:
            q, n = 2, 1
        self.q: int = q
        self.n: int = n
        self.degree = q**n
        if self.degree > CHAIN_DEGREE_CAP:
            raise ValueError(f"degree {self.degree} exceeds chain cap {CHAIN_DEGREE_CAP}")
        self.gens = gens
        self.identity: Perm = tuple(range(self.degree))
        self.levels: list[_Level] = []
        self._words: _WordTable | None = None
        for g in gens:
            self._add_element(g.table)

    # construction

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for idx in range(start, len(self.levels)):
            lvl = self.levels[idx]
            gamma = g[lvl.point]
            if gamma not in lvl.trans:
                return g, idx
            if gamma != lvl.point:
                g = _mul(g, lvl.trans_inv[gamma])
        return g, len(self.levels)

    def _add_strong(self, h: Perm, lo: int, hi: int) -> None:
        if hi == len(self.levels):
            moved = next(i for i, v in enumerate(h) if i != v)
            self.levels.append(_Level(moved, self.degree))
        for idx in range(lo, hi + 1):
            self.levels[idx].add_generator(h)

    def _add_element(self, g: Perm) -> None:
        h, j = self._sift(g)
        if h == self.identity:
            return
        self._add_strong(h, 0, j)
        self._complete(j)

    def _complete(self, i: int) -> None:
        while i >= 0:
            lvl = self.levels[i]
            jumped = False
            for pi in range(len(lvl.orbit)):
                gamma = lvl.orbit[pi]
                u = lvl.trans[gamma]
                for si in range(len(lvl.strong)):
                    if (pi, si) in lvl.checked:
                        continue
                    lvl.checked.add((pi, si))
                    s = lvl.strong[si]
                    delta = s[gamma]
                    sg = _mul(_mul(u, s), lvl.trans_inv[delta])
                    if sg == self.identity:
                        continue
                    h, j = self._sift(sg, i + 1)
                    if h != self.identity:
                        self._add_strong(h, i + 1, j)
                        i = j
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1

    # queries

    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lvl.orbit) for lvl in self.levels]

    def order(self) -> int:
        return prod(self.orbit_sizes())

    def strong_generators(self) -> list[GatePerm]:
        seen: dict[Perm, None] = {}
        for lvl in self.levels:
            for s in lvl.strong:
                seen.setdefault(s)
        return [GatePerm(self.q, self.n, s) for s in seen]

    def _check(self, g: GatePerm) -> None:
        if (g.q, g.n) != (self.q, self.n):
            raise ValueError(
                f"gate on {g.q}^{g.n} tested against a group on {self.q}^{self.n}"
            )

    def contains(self, g: GatePerm) -> bool:
        self._check(g)
        h, j = self._sift(g.table)
        return j == len(self.levels) and h == self.identity

    def factorize(self, g: GatePerm) -> list[int]:
        """Indices into ``gens`` whose left-to-right product is ``g``."""
        self._check(g)
        if not self.contains(g):
            raise NotInGroupError("gate is not in the group")
        if self._words is None:
            self._words = _WordTable(self)
        word = self._words.factor(g.table)
        return self._words.positive(word)


def build_chain(gens: Sequence[GatePerm], q: int | None = None, n: int | None = None) -> StabilizerChain:
    return StabilizerChain(gens, q, n)


def group_order(chain: StabilizerChain) -> int:
    return chain.order()


def contains(chain: StabilizerChain, g: GatePerm) -> bool:
    return chain.contains(g)


def factorize(chain: StabilizerChain, g: GatePerm) -> list[int]:
    return chain.factorize(g)


def evaluate_word(gens: Sequence[GatePerm], word: Iterable[int], q: int, n: int) -> GatePerm:
    table = tuple(range(q**n))
    for i in word:
        table = _mul(table, gens[i].table)
    return GatePerm(q, n, table)


class _WordTable:
    """Transversal words over the original generators, kept short.

    Random products of generators are sifted through the table; an entry is
    replaced whenever a shorter word for the same coset shows up, and the
    pairwise products of entries are sifted periodically to fill gaps.
    """

    def __init__(self, chain: StabilizerChain, seed: int = 0):
        self.chain = chain
        gens = [g.table for g in chain.gens]
        self.letters: list[tuple[Letter, Perm]] = []
        self.orders: list[int] = []
        for i, t in enumerate(gens):
            order = GatePerm(chain.q, chain.n, t).order()
            self.orders.append(order)
            if order == 1:
                continue
            self.letters.append(((i, 1), t))
            if order > 2:
                self.letters.append(((i, -1), _inv(t)))
        self.base = chain.base
        ident = chain.identity
        self.table: list[dict[int, tuple[Perm, tuple[Letter, ...]]]] = [
            {b: (ident, ())} for b in self.base
        ]
        self.targets = chain.orbit_sizes()
        self.limit = max(8, 2 * len(self.base))
        self._fill(random.Random(seed))

    def _reduce(self, word: Sequence[Letter]) -> tuple[Letter, ...]:
        out: list[list[int]] = []
        for gi, e in word:
            if out and out[-1][0] == gi:
                out[-1][1] += e
            else:
                out.append([gi, e])
            top = out[-1]
            m = self.orders[top[0]]
            top[1] %= m
            if top[1] > m // 2:
                top[1] -= m
            if top[1] == 0:
                out.pop()
        letters: list[Letter] = []
        for gi, e in out:
            letters.extend([(gi, 1 if e > 0 else -1)] * abs(e))
        return tuple(letters)

    @staticmethod
    def _inverse_word(word: Sequence[Letter]) -> tuple[Letter, ...]:
        return tuple((gi, -e) for gi, e in reversed(word))

    def _complete(self) -> bool:
        return all(len(t) == n for t, n in zip(self.table, self.targets))

    def _sift(self, g: Perm, w: tuple[Letter, ...], start: int = 0) -> bool:
        """Sift ``(g, w)``; returns True if a new table entry was created."""
        ident = self.chain.identity
        for idx in range(start, len(self.base)):
            if len(w) > self.limit:
                return False
            tab = self.table[idx]
            gamma = g[self.base[idx]]
            entry = tab.get(gamma)
            if entry is None:
                tab[gamma] = (g, w)
                return True
            t, tw = entry
            if len(w) < len(tw):
                tab[gamma] = (g, w)
                g, w, t, tw = t, tw, g, w
            g = _mul(g, _inv(t))
            w = self._reduce(w + self._inverse_word(tw))
            if g == ident:
                return False
        return False

    def _improve(self) -> None:
        for idx in range(len(self.base)):
            entries = list(self.table[idx].values())
            for (g1, w1), (g2, w2) in itertools.product(entries, repeat=2):
                if not w1 or not w2:
                    continue
                w = self._reduce(w1 + w2)
                if len(w) <= self.limit:
                    self._sift(_mul(g1, g2), w, idx)

    def _fill(self, rng: random.Random) -> None:
        if not self.letters:
            return
        ident = self.chain.identity
        g, w = ident, ()
        stale = 0
        rounds = 0
        while not self._complete():
            rounds += 1
            letter, t = rng.choice(self.letters)
            g = _mul(g, t)
            w = self._reduce(w + (letter,))
            if len(w) > self.limit:
                g, w = ident, ()
                continue
            stale = 0 if self._sift(g, w) else stale + 1
            if rounds % 200 == 0:
                self._improve()
            if stale > 2000:
                self.limit = int(self.limit * 1.5) + 1
                stale = 0

    def factor(self, g: Perm) -> tuple[Letter, ...]:
        parts = []
        for idx, b in enumerate(self.base):
            t, tw = self.table[idx][g[b]]
            g = _mul(g, _inv(t))
            parts.append(tw)
        assert g == self.chain.identity
        word: tuple[Letter, ...] = ()
        for tw in reversed(parts):
            word = word + tw
        return self._reduce(word)

    def positive(self, word: Sequence[Letter]) -> list[int]:
        out: list[int] = []
        for gi, e in word:
            out.extend([gi] * (1 if e > 0 else self.orders[gi] - 1))
        return out


# target classes


@dataclass(frozen=True)
class TargetClass:
    """One of the gate classes a generating set is tested against.

    ``kind`` is ``full``, ``alt``, ``cons``, ``altcons``, ``modk`` or
    ``conserved``. ``modk`` needs ``k``; ``conserved`` needs a classifier
    mapping each word to a hashable label.
    """

    kind: str
    k: int | None = None
    classifier: Callable[[Word], Hashable] | None = field(default=None, compare=False)

    KINDS = ("full", "alt", "cons", "altcons", "modk", "conserved")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown class {self.kind!r}; expected one of {self.KINDS}")
        if self.kind == "modk" and (self.k is None or self.k < 1):
            raise ValueError("class modk needs k >= 1")
        if self.kind == "conserved" and self.classifier is None:
            raise ValueError("class conserved needs a classifier")

    def partition(self, q: int, n: int) -> ComponentPartition | None:
        """Blocks the class must preserve, or None for full/alt."""
        if self.kind in ("full", "alt"):
            return None
        if self.kind in ("cons", "altcons"):
            return weight_classes(q, n)
        if self.kind == "modk":
            keys = [tuple(c % self.k for c in weight(w, q)) for w in all_words(q, n)]
        else:
            keys = [self.classifier(w) for w in all_words(q, n)]
        return ComponentPartition.from_keys(q, n, keys)

    def violation(self, f: GatePerm) -> Word | None:
        """A word witnessing that ``f`` is outside the class, or None."""
        part = self.partition(f.q, f.n)
        if part is not None:
            labels = part.labels
            for i, v in enumerate(f.table):
                if labels[i] != labels[v]:
                    return word_decode(i, f.n, f.q)
        if self.kind in ("alt", "altcons"):
            blocks = part.blocks() if part else [list(range(len(f.table)))]
            parts = ComponentPartition.from_keys(
                f.q, f.n, part.labels if part else [0] * len(f.table)
            )
            parities = restriction_parities(f, parts)
            for block, par in zip(blocks, parities):
                if par:
                    return word_decode(block[0], f.n, f.q)
        return None

    def __contains__(self, f: GatePerm) -> bool:
        return self.violation(f) is None


def target_order(t: TargetClass, q: int, n: int) -> int:
    size = q**n
    if t.kind == "full":
        return factorial(size)
    if t.kind == "alt":
        return factorial(size) // 2
    sizes = t.partition(q, n).sizes()
    if t.kind == "altcons":
        return prod(max(1, factorial(s) // 2) for s in sizes)
    return prod(factorial(s) for s in sizes)


class OutsideClassError(ValueError):
    def __init__(self, index: int, word: Word, kind: str):
        super().__init__(f"generator {index} is not in class {kind} (witness word {word})")
        self.index = index
        self.word = word


@dataclass
class GenerationReport:
    order: int
    target: int
    chain: StabilizerChain = field(repr=False)

    @property
    def passed(self) -> bool:
        return self.order == self.target


def generation_report(gens: Sequence[GatePerm], t: TargetClass, q: int | None = None,
                      n: int | None = None) -> GenerationReport:
    for i, g in enumerate(gens):
        w = t.violation(g)
        if w is not None:
            raise OutsideClassError(i, w, t.kind)
    chain = build_chain(gens, q, n)
    return GenerationReport(chain.order(), target_order(t, chain.q, chain.n), chain)


def generates(gens: Sequence[GatePerm], t: TargetClass, q: int | None = None,
              n: int | None = None) -> bool:
    return generation_report(gens, t, q, n).passed


# parity sequences


def parity_sequence(f: GatePerm) -> tuple[int, ...]:
    """Per-weight-class parity of a conservative gate (0 even, 1 odd)."""
    if not is_conservative(f):
        raise ValueError("parity sequences are defined for conservative gates only")
    return restriction_parities(f, weight_classes(f.q, f.n))


def _extensions(g: GatePerm, n: int) -> list[GatePerm]:
    out = {}
    for wires in itertools.permutations(range(n), g.n):
        e = extend(g, n, wires)
        out.setdefault(e.table, e)
    return list(out.values())


def _span(vectors: Iterable[int]) -> set[int]:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    span = {0}
    for b in basis:
        span |= {s ^ b for s in span}
    return span


def _to_bits(seq: Sequence[int]) -> int:
    return sum(bit << i for i, bit in enumerate(seq))


def _from_bits(v: int, length: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(length))


def parity_span(gens: Sequence[GatePerm], n: int, q: int | None = None) -> set[tuple[int, ...]]:
    """Parity sequences reachable from all extensions of ``gens`` to n wires."""
    q = gens[0].q if gens else (q or 2)
    vectors = []
    for g in gens:
        if g.n > n:
            raise ValueError(f"generator of arity {g.n} does not fit on {n} wires")
        if not is_conservative(g):
            raise ValueError("parity_span needs conservative generators")
        vectors.extend(_to_bits(parity_sequence(e)) for e in _extensions(g, n))
    length = weight_classes(q, n).count
    return {_from_bits(v, length) for v in _span(vectors)}


def binary_class_swap(q: int, n: int, ones: int) -> GatePerm:
    """Swap of the two least words with ``ones`` ones and the rest zeros."""
    words = sorted(
        (w for w in itertools.product((0, 1), repeat=n) if sum(w) == ones),
        key=lambda w: word_encode(w, q),
    )
    if len(words) < 2:
        raise ValueError(f"class with {ones} ones in length {n} has a single word")
    return GatePerm.from_cycles(q, n, [words[:2]])


def find_unreachable_conservative(gens: Sequence[GatePerm], n: int, q: int | None = None
                                  ) -> GatePerm | None:
    """A single-class word swap whose parity sequence no composition of
    extensions of ``gens`` can produce.

    Candidates swap two words with i ones and n-i zeros, for i = 1, 2, ...
    Returns None when every candidate's parity lies in the span, which can
    only happen when n is smaller than the span size plus two.
    """
    q = gens[0].q if gens else (q or 2)
    span = parity_span(gens, n, q)
    last = min(len(span) + 1, n - 1)
    for i in range(1, last + 1):
        f = binary_class_swap(q, n, i)
        if parity_sequence(f) not in span:
            return f
    return None


def check_conserved_quantity(classifier: Callable[[Word], Hashable], q: int, n_max: int) -> bool:
    """Check that ``classifier`` is compatible and permutable on words of
    length up to ``n_max``, trying every wire permutation."""
    for n in range(n_max + 1):
        words = list(all_words(q, n))
        classes: dict[Hashable, list[Word]] = {}
        for w in words:
            classes.setdefault(classifier(w), []).append(w)
        groups = [ws for ws in classes.values() if len(ws) > 1]
        if n < n_max:
            for a in range(q):
                for ws in groups:
                    if len({classifier(w + (a,)) for w in ws}) > 1:
                        return False
        for images in itertools.permutations(range(n)):
            alpha = WirePerm(images)
            for ws in groups:
                if len({classifier(permute_word(w, alpha)) for w in ws}) > 1:
                    return False
    return True
