"""
Words over a finite alphabet {0, ..., q-1}, their radix codes, and gates
stored as permutation tables over A^n.

Words are plain tuples of ints. Codes are big-endian: the leftmost symbol
is the most significant digit, so code order is lexicographic word order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]

EVEN = 0
ODD = 1

# q**n above this is refused outright; tables are explicit tuples.
MAX_DEGREE = 1 << 24


class DegreeCapError(ValueError):
    """Raised when q**n exceeds the table size cap."""


def check_alphabet(q: int) -> None:
    if q < 2:
        raise ValueError(f"alphabet size must be at least 2, got {q}")


def degree(q: int, n: int) -> int:
    check_alphabet(q)
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    size = q**n
    if size > MAX_DEGREE:
        raise DegreeCapError(f"{q}^{n} = {size} words exceeds the cap of {MAX_DEGREE}")
    return size


def check_word(w: Sequence[int], q: int) -> Word:
    check_alphabet(q)
    w = tuple(w)
    for s in w:
        if not 0 <= s < q:
            raise ValueError(f"symbol {s} outside alphabet of size {q}")
    return w


def word_encode(w: Sequence[int], q: int) -> int:
    """Big-endian radix code of ``w``."""
    code = 0
    for s in check_word(w, q):
        code = code * q + s
    return code


def word_decode(code: int, n: int, q: int) -> Word:
    size = degree(q, n)
    if not 0 <= code < size:
        raise ValueError(f"code {code} out of range for {q}^{n}")
    out = [0] * n
    for i in range(n - 1, -1, -1):
        code, out[i] = divmod(code, q)
    return tuple(out)


def all_words(q: int, n: int) -> Iterator[Word]:
    """All words of A^n in code order."""
    degree(q, n)
    return itertools.product(range(q), repeat=n)


def parse_word(text: str, q: int) -> Word:
    """Read ``"0120"`` (or ``"10.11.3"`` when q > 10) into a word."""
    text = text.strip()
    if text in ("", "-"):
        return ()
    if "." in text or "," in text:
        parts = text.replace(",", ".").split(".")
        return check_word((int(p) for p in parts), q)
    return check_word((int(c, 36) for c in text), q)


def format_word(w: Sequence[int], q: int) -> str:
    if not w:
        return "-"
    if q <= 10:
        return "".join(str(s) for s in w)
    return ".".join(str(s) for s in w)


@dataclass(frozen=True)
class GatePerm:
    """A bijection of A^n given by its image table over word codes.

    ``table[i]`` is the code of the image of the word whose code is ``i``.
    """

    q: int
    n: int
    table: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("gates need arity n >= 1")
        size = degree(self.q, self.n)
        table = tuple(self.table)
        if len(table) != size:
            raise ValueError(f"table has {len(table)} entries, expected {size}")
        seen = bytearray(size)
        for v in table:
            if not 0 <= v < size or seen[v]:
                raise ValueError("table is not a bijection")
            seen[v] = 1
        object.__setattr__(self, "table", table)

    @classmethod
    def identity(cls, q: int, n: int) -> GatePerm:
        return cls(q, n, tuple(range(degree(q, n))))

    @classmethod
    def from_function(cls, q: int, n: int, fn) -> GatePerm:
        """Tabulate ``fn`` (a map Word -> Word) over all of A^n."""
        return cls(q, n, tuple(word_encode(fn(w), q) for w in all_words(q, n)))

    @classmethod
    def from_cycles(cls, q: int, n: int, cycles: Iterable[Sequence[Sequence[int]]]) -> GatePerm:
        """Build a word permutation from cycles of words, e.g. ``[[(0,1),(1,0)]]``.

        Cycles are applied in the order given.
        """
        table = list(range(degree(q, n)))
        for cyc in cycles:
            codes = [word_encode(check_word(w, q), q) for w in cyc]
            if any(len(w) != n for w in cyc):
                raise ValueError("cycle words must have length n")
            if len(set(codes)) != len(codes):
                raise ValueError("cycle words must be distinct")
            step = list(range(len(table)))
            for a, b in zip(codes, codes[1:] + codes[:1]):
                step[a] = b
            table = [step[v] for v in table]
        return cls(q, n, tuple(table))

    @property
    def degree(self) -> int:
        return len(self.table)

    def __call__(self, w: Sequence[int]) -> Word:
        if len(w) != self.n:
            raise ValueError(f"word of length {len(w)} given to arity-{self.n} gate")
        return word_decode(self.table[word_encode(w, self.q)], self.n, self.q)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.table))

    def inverse(self) -> GatePerm:
        inv = [0] * len(self.table)
        for i, v in enumerate(self.table):
            inv[v] = i
        return GatePerm(self.q, self.n, tuple(inv))

    def then(self, other: GatePerm) -> GatePerm:
        """``self`` followed by ``other``."""
        if (self.q, self.n) != (other.q, other.n):
            raise ValueError(
                f"cannot compose gates on {self.q}^{self.n} and {other.q}^{other.n}"
            )
        t = other.table
        return GatePerm(self.q, self.n, tuple(map(t.__getitem__, self.table)))

    def power(self, k: int) -> GatePerm:
        result = GatePerm.identity(self.q, self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result.then(base)
        return result

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles over word codes."""
        seen = bytearray(len(self.table))
        out = []
        for start in range(len(self.table)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = 1
                cyc.append(x)
                x = self.table[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.table) if i != v]


def compose_lr(f: GatePerm, g: GatePerm) -> GatePerm:
    """Apply ``f`` first, then ``g``."""
    return f.then(g)


def table_parity(table: Sequence[int]) -> int:
    """Parity of a permutation table via its cycle decomposition."""
    seen = bytearray(len(table))
    transpositions = 0
    for start in range(len(table)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = 1
            x = table[x]
            length += 1
        transpositions += length - 1
    return transpositions & 1


def perm_parity(f: GatePerm) -> int:
    """0 for even, 1 for odd."""
    return table_parity(f.table)


def weight(w: Sequence[int], q: int) -> tuple[int, ...]:
    counts = [0] * q
    for s in check_word(w, q):
        counts[s] += 1
    return tuple(counts)


@dataclass(frozen=True)
class ComponentPartition:
    """A partition of A^n into blocks.

    ``labels[code]`` is the block index of the word with that code. Blocks
    are numbered by their least word code, so the numbering is canonical.
    """

    q: int
    n: int
    labels: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_keys(cls, q: int, n: int, keys: Sequence) -> ComponentPartition:
        """Group codes with equal ``keys[code]``; blocks ordered by least member."""
        index: dict = {}
        labels = []
        for k in keys:
            if k not in index:
                index[k] = len(index)
            labels.append(index[k])
        return cls(q, n, tuple(labels))

    @property
    def count(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for code, lab in enumerate(self.labels):
            out[lab].append(code)
        return out

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks()]


def weight_classes(q: int, n: int) -> ComponentPartition:
    """Partition of A^n by weight.

    Classes are numbered by least member code, which is the same as
    descending lexicographic order of the weight vectors.
    """
    return ComponentPartition.from_keys(q, n, [weight(w, q) for w in all_words(q, n)])


def class_count(q: int, n: int) -> int:
    return comb(n + q - 1, q - 1)


def multinomial(counts: Sequence[int]) -> int:
    return factorial(sum(counts)) // prod(factorial(c) for c in counts)


def _weights_of(q: int, n: int) -> list[tuple[int, ...]]:
    return [weight(w, q) for w in all_words(q, n)]


def is_conservative(f: GatePerm) -> bool:
    ws = _weights_of(f.q, f.n)
    return all(ws[i] == ws[v] for i, v in enumerate(f.table))


def restriction_parities(f: GatePerm, classes: ComponentPartition) -> tuple[int, ...]:
    """Parity of ``f`` on each block; ``f`` must map every block to itself."""
    labels = classes.labels
    out = []
    for block in classes.blocks():
        pos = {c: i for i, c in enumerate(block)}
        try:
            local = [pos[f.table[c]] for c in block]
        except KeyError:
            raise ValueError("gate does not preserve the partition") from None
        out.append(table_parity(local))
    assert len(out) == max(labels) + 1
    return tuple(out)


def is_alt_conservative(f: GatePerm) -> bool:
    if not is_conservative(f):
        return False
    return not any(restriction_parities(f, weight_classes(f.q, f.n)))


def is_mod_k_conservative(f: GatePerm, k: int) -> bool:
    if k < 1:
        raise ValueError(f"modulus must be at least 1, got {k}")
    ws = [tuple(c % k for c in w) for w in _weights_of(f.q, f.n)]
    return all(ws[i] == ws[v] for i, v in enumerate(f.table))
