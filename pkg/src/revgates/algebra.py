"""
Operations that build new gates from old ones: wire permutations,
rewiring, parallel application, generalized composition, extensions and
controlled permutations, plus the four controlled gate families.

Composition is left to right throughout: ``compose_lr(f, g)`` runs ``f``
first. Wire indices are 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import (
    GatePerm,
    Word,
    all_words,
    check_word,
    compose_lr,
    degree,
    word_decode,
    word_encode,
)

FAMILIES = ("P1", "P2", "P3", "P4")


@dataclass(frozen=True)
class WirePerm:
    """A permutation alpha of the wires {0, ..., n-1}; ``images[i] = alpha(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> WirePerm:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> WirePerm:
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def inverse(self) -> WirePerm:
        inv = [0] * self.n
        for i, a in enumerate(self.images):
            inv[a] = i
        return WirePerm(tuple(inv))

    def then(self, other: WirePerm) -> WirePerm:
        """``self`` followed by ``other``, as maps on wire indices."""
        return WirePerm(tuple(other.images[a] for a in self.images))


def permute_word(w: Sequence[int], alpha: WirePerm) -> Word:
    """Position ``alpha(j)`` of the output holds input symbol ``w[j]``."""
    out = [0] * len(w)
    for j, a in enumerate(alpha.images):
        out[a] = w[j]
    return tuple(out)


def wire_perm(alpha: WirePerm, q: int) -> GatePerm:
    return GatePerm.from_function(q, alpha.n, lambda w: permute_word(w, alpha))


def rewire(f: GatePerm, alpha: WirePerm) -> GatePerm:
    """Conjugate ``f`` by the wire permutation: pi_alpha, then f, then pi_alpha^-1."""
    if alpha.n != f.n:
        raise ValueError(f"wire permutation on {alpha.n} wires, gate has arity {f.n}")
    p = wire_perm(alpha, f.q)
    return compose_lr(compose_lr(p, f), p.inverse())


def parallel(f: GatePerm, g: GatePerm) -> GatePerm:
    """``f`` on the first ``f.n`` wires and ``g`` on the remaining ones."""
    if f.q != g.q:
        raise ValueError("alphabet mismatch")
    size_g = len(g.table)
    table = [0] * (len(f.table) * size_g)
    for cx, fx in enumerate(f.table):
        base, fbase = cx * size_g, fx * size_g
        for cy, gy in enumerate(g.table):
            table[base + cy] = fbase + gy
    return GatePerm(f.q, f.n + g.n, tuple(table))


def _check_positions(positions: Sequence[int], n: int) -> tuple[int, ...]:
    positions = tuple(positions)
    if len(set(positions)) != len(positions):
        raise ValueError(f"repeated wire in {positions}")
    for p in positions:
        if not 0 <= p < n:
            raise ValueError(f"wire {p} outside 0..{n - 1}")
    return positions


def placement_alpha(positions: Sequence[int], n: int) -> WirePerm:
    """The alpha with alpha^-1(i) = positions[i], remaining wires in order."""
    positions = _check_positions(positions, n)
    rest = [w for w in range(n) if w not in positions]
    return WirePerm(tuple(positions) + tuple(rest)).inverse()


def extend(f: GatePerm, n: int, positions: Sequence[int]) -> GatePerm:
    """Apply ``f`` to wires ``positions`` (in order) of an n-wire register."""
    if f.n > n:
        raise ValueError(f"cannot extend arity {f.n} gate to {n} wires")
    positions = _check_positions(positions, n)
    if len(positions) != f.n:
        raise ValueError(f"gate of arity {f.n} needs {f.n} positions, got {len(positions)}")
    q = f.q
    size = degree(q, n)
    weights = [q ** (n - 1 - p) for p in positions]
    table = [0] * size
    ftab = f.table
    for code in range(size):
        sub = 0
        for wt in weights:
            sub = sub * q + (code // wt) % q
        img = ftab[sub]
        if img == sub:
            table[code] = code
            continue
        out = code
        for wt in reversed(weights):
            old = (code // wt) % q
            new = img % q
            img //= q
            out += (new - old) * wt
        table[code] = out
    return GatePerm(q, n, tuple(table))


def gencomp(f: GatePerm, g: GatePerm, k: int) -> GatePerm:
    """Generalized composition: ``g`` reads the first ``k`` outputs of ``f``
    followed by ``g.n - k`` fresh inputs; ``f``'s other outputs pass through
    after ``g``'s outputs."""
    if f.q != g.q:
        raise ValueError("alphabet mismatch")
    n, m = f.n, g.n
    if not 0 <= k <= min(n, m):
        raise ValueError(f"k={k} outside 0..{min(n, m)}")
    q = f.q

    def fn(x: Word) -> Word:
        fx = f(x[:n])
        gx = g(fx[:k] + x[n:])
        return gx + fx[k:]

    return GatePerm.from_function(q, n + m - k, fn)


def controlled(w: Sequence[int], base: GatePerm) -> GatePerm:
    """C_w[base]: applies ``base`` to the suffix when the prefix equals ``w``."""
    w = check_word(w, base.q)
    if not w:
        return base
    q = base.q
    k = len(w)
    size_b = len(base.table)
    table = list(range(q**k * size_b))
    offset = word_encode(w, q) * size_b
    for i, v in enumerate(base.table):
        table[offset + i] = offset + v
    return GatePerm(q, k + base.n, tuple(table))


# named gates


def symbol_swap(q: int, a: int, b: int) -> GatePerm:
    return GatePerm.from_cycles(q, 1, [[(a,), (b,)]] if a != b else [])


def word_cycle(q: int, words: Sequence[Sequence[int]]) -> GatePerm:
    words = [tuple(w) for w in words]
    return GatePerm.from_cycles(q, len(words[0]), [words])


def wire_swap(q: int) -> GatePerm:
    return wire_perm(WirePerm((1, 0)), q)


def wire_rotation(q: int) -> GatePerm:
    """Three-wire rotation (x1, x2, x3) -> (x2, x3, x1)."""
    return GatePerm.from_function(q, 3, lambda w: (w[1], w[2], w[0]))


def negation() -> GatePerm:
    return symbol_swap(2, 0, 1)


def toffoli() -> GatePerm:
    return controlled((1, 1), negation())


def fredkin() -> GatePerm:
    return controlled((1,), wire_swap(2))


# control-universal families


def family_bases(family: str, q: int, k: int | None = None) -> list[GatePerm]:
    """Base gates of P1..P4, or of P2K (P2 plus the swaps (a^k b^k)).

    Trivial members (identity) are dropped; the list is sorted by table and
    free of duplicates.
    """
    gates: list[GatePerm] = []
    A = range(q)
    if family == "P1":
        gates = [symbol_swap(q, a, b) for a in A for b in A if a < b]
    elif family == "P2":
        gates = [word_cycle(q, [(a, b), (b, a)]) for a in A for b in A if a < b]
    elif family == "P3":
        gates = [
            word_cycle(q, [(a, b), (a, c), (d, b)])
            for a, b, c, d in itertools.product(A, repeat=4)
            if a != d and b != c
        ]
    elif family == "P4":
        gates = [
            word_cycle(q, [(a, b, c), (b, c, a), (c, a, b)])
            for a, b, c in itertools.product(A, repeat=3)
            if not a == b == c
        ]
    elif family == "P2K":
        if k is None or k < 1:
            raise ValueError("family P2K needs a modulus k >= 1")
        gates = family_bases("P2", q)
        if k >= 2:
            gates += [word_cycle(q, [(a,) * k, (b,) * k]) for a in A for b in A if a < b]
        else:
            gates += [symbol_swap(q, a, b) for a in A for b in A if a < b]
    else:
        raise ValueError(f"unknown family {family!r}")
    unique = {g.table: g for g in gates}
    return sorted(unique.values(), key=lambda g: (g.n, g.table))


@dataclass(frozen=True)
class Placement:
    """A controlled gate C_control[base] laid onto ``wires`` of an n-wire register.

    ``wires[:len(control)]`` carry the control word, the rest feed ``base``.
    """

    gate: GatePerm
    control: Word
    base: GatePerm
    wires: tuple[int, ...]


def controlled_placements(
    family: str | Sequence[GatePerm], q: int, n: int, k: int | None = None
) -> list[Placement]:
    """All rewirings of C_w[p] for p in the family and |w| = n - arity(p).

    Output is deduplicated by table, keeping the first occurrence under the
    order (control word, base table, wire assignment).
    """
    bases = family_bases(family, q, k) if isinstance(family, str) else list(family)
    usable = [p for p in bases if p.n <= n]
    if not usable:
        raise ValueError(f"no gate of family {family} fits on {n} wires")
    items = []
    for p in usable:
        for w in all_words(q, n - p.n):
            items.append((len(w), word_encode(w, q) if w else 0, p.table, w, p))
    items.sort(key=lambda t: t[:3])
    seen: set[tuple[int, ...]] = set()
    out = []
    for _, _, _, w, p in items:
        cg = controlled(w, p)
        for wires in itertools.permutations(range(n)):
            g = extend(cg, n, wires)
            if g.table in seen or g.is_identity():
                continue
            seen.add(g.table)
            out.append(Placement(g, w, p, wires))
    return out


def controlled_instances(
    family: str | Sequence[GatePerm], q: int, n: int, k: int | None = None
) -> list[GatePerm]:
    return [pl.gate for pl in controlled_placements(family, q, n, k)]


def decode_table(f: GatePerm) -> dict[Word, Word]:
    """Readable form ``{word: image}`` for debugging and reports."""
    return {
        word_decode(i, f.n, f.q): word_decode(v, f.n, f.q) for i, v in enumerate(f.table)
    }
