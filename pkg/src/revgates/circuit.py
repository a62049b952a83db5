"""
Circuits: gate definitions applied to wire tuples, in order.

Text format (``.rg``), one statement per line, ``#`` starts a comment::

    revgate v1
    alphabet 2
    wires 3
    gate fred controlled 1 base 0 2 1 3
    gate neg table 1 0
    gate swap wireperm 1 0
    apply fred 0,1,2
    apply neg 2

Wires are 0-based. Instances run in file order; the first one listed is
applied first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import WirePerm, controlled, extend, wire_perm
from .core import (
    GatePerm,
    Word,
    check_word,
    format_word,
    parse_word,
    word_decode,
    word_encode,
)

HEADER = "revgate v1"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")


class FormatError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True)
class GateDef:
    """A named gate. ``kind`` is ``table``, ``controlled`` or ``wireperm``.

    ``table`` kinds carry ``base``; ``controlled`` kinds carry ``control``
    and ``base`` (controls come first on the gate's wires); ``wireperm``
    kinds carry ``images``.
    """

    name: str
    q: int
    kind: str
    base: GatePerm | None = None
    control: Word = ()
    images: tuple[int, ...] = ()

    def __post_init__(self):
        if not _NAME.match(self.name):
            raise ValueError(f"bad gate name {self.name!r}")
        if self.kind in ("table", "controlled"):
            if self.base is None or self.base.q != self.q:
                raise ValueError(f"gate {self.name}: base table missing or on wrong alphabet")
            object.__setattr__(self, "control", check_word(self.control, self.q))
            if self.kind == "table" and self.control:
                raise ValueError(f"gate {self.name}: table gates take no control word")
        elif self.kind == "wireperm":
            WirePerm(self.images)
        else:
            raise ValueError(f"gate {self.name}: unknown kind {self.kind!r}")

    @classmethod
    def from_perm(cls, name: str, f: GatePerm) -> GateDef:
        return cls(name, f.q, "table", base=f)

    @classmethod
    def make_controlled(cls, name: str, control: Sequence[int], base: GatePerm) -> GateDef:
        return cls(name, base.q, "controlled", base=base, control=tuple(control))

    @property
    def arity(self) -> int:
        if self.kind == "wireperm":
            return len(self.images)
        return len(self.control) + self.base.n

    @property
    def is_controlled(self) -> bool:
        return self.kind == "controlled"

    @cached_property
    def perm(self) -> GatePerm:
        if self.kind == "table":
            return self.base
        if self.kind == "controlled":
            return controlled(self.control, self.base)
        return wire_perm(WirePerm(self.images), self.q)

    def inverse(self) -> GateDef:
        name = self.name[:-4] if self.name.endswith("_inv") else self.name + "_inv"
        if self.kind == "wireperm":
            return GateDef(name, self.q, "wireperm", images=WirePerm(self.images).inverse().images)
        return GateDef(name, self.q, self.kind, base=self.base.inverse(), control=self.control)


@dataclass(frozen=True)
class GateInstance:
    gate: GateDef
    wires: tuple[int, ...]

    def __post_init__(self):
        wires = tuple(self.wires)
        if len(set(wires)) != len(wires):
            raise ValueError(f"repeated wire in {wires}")
        if len(wires) != self.gate.arity:
            raise ValueError(f"gate {self.gate.name} has arity {self.gate.arity}, got wires {wires}")
        object.__setattr__(self, "wires", wires)


@dataclass(frozen=True)
class Circuit:
    q: int
    n: int
    instances: tuple[GateInstance, ...] = field(default=())

    def __post_init__(self):
        instances = tuple(self.instances)
        for inst in instances:
            if inst.gate.q != self.q:
                raise ValueError(f"gate {inst.gate.name} is on alphabet {inst.gate.q}, circuit on {self.q}")
            if any(not 0 <= w < self.n for w in inst.wires):
                raise ValueError(f"wire index in {inst.wires} outside 0..{self.n - 1}")
        object.__setattr__(self, "instances", instances)

    def __len__(self) -> int:
        return len(self.instances)

    def __add__(self, other: Circuit) -> Circuit:
        if (self.q, self.n) != (other.q, other.n):
            raise ValueError("cannot concatenate circuits of different shapes")
        return Circuit(self.q, self.n, self.instances + other.instances)

    def gate_defs(self) -> list[GateDef]:
        """Distinct definitions in order of first use."""
        seen: dict[str, GateDef] = {}
        for inst in self.instances:
            prev = seen.setdefault(inst.gate.name, inst.gate)
            if prev != inst.gate:
                raise ValueError(f"two different gates share the name {inst.gate.name!r}")
        return list(seen.values())


def simulate(c: Circuit, w: Sequence[int]) -> Word:
    w = check_word(w, c.q)
    if len(w) != c.n:
        raise ValueError(f"input of length {len(w)} for a circuit on {c.n} wires")
    cur = list(w)
    for inst in c.instances:
        g = inst.gate.perm
        sub = [cur[i] for i in inst.wires]
        img = word_decode(g.table[word_encode(sub, c.q)], g.n, c.q)
        for i, s in zip(inst.wires, img):
            cur[i] = s
    return tuple(cur)


def to_perm(c: Circuit) -> GatePerm:
    table = tuple(range(c.q**c.n))
    cache: dict[tuple[str, tuple[int, ...]], tuple[int, ...]] = {}
    for inst in c.instances:
        key = (inst.gate.name, inst.wires)
        if key not in cache:
            cache[key] = extend(inst.gate.perm, c.n, inst.wires).table
        t = cache[key]
        table = tuple(map(t.__getitem__, table))
    return GatePerm(c.q, c.n, table)


def invert(c: Circuit) -> Circuit:
    inverses: dict[str, GateDef] = {}
    out = []
    for inst in reversed(c.instances):
        g = inverses.get(inst.gate.name)
        if g is None:
            g = inverses[inst.gate.name] = inst.gate.inverse()
        out.append(GateInstance(g, inst.wires))
    return Circuit(c.q, c.n, tuple(out))


def from_gates(q: int, n: int, items: Sequence[tuple[GateDef, Sequence[int]]]) -> Circuit:
    return Circuit(q, n, tuple(GateInstance(g, tuple(w)) for g, w in items))


# text format


def serialize(c: Circuit) -> str:
    lines = [HEADER, f"alphabet {c.q}", f"wires {c.n}"]
    for g in c.gate_defs():
        if g.kind == "table":
            body = "table " + " ".join(map(str, g.base.table))
        elif g.kind == "controlled":
            body = f"controlled {format_word(g.control, c.q)} base " + " ".join(map(str, g.base.table))
        else:
            body = "wireperm " + " ".join(map(str, g.images))
        lines.append(f"gate {g.name} {body}")
    for inst in c.instances:
        lines.append(f"apply {inst.gate.name} " + ",".join(map(str, inst.wires)))
    return "\n".join(lines) + "\n"


def _arity_from_size(size: int, q: int, lineno: int) -> int:
    n, p = 0, 1
    while p < size:
        p *= q
        n += 1
    if p != size or n < 1:
        raise FormatError(lineno, f"table of {size} entries is not a power of {q}")
    return n


def _ints(tokens: Sequence[str], lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise FormatError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse(text: str) -> Circuit:
    q = n = None
    gates: dict[str, GateDef] = {}
    instances: list[GateInstance] = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != HEADER:
                raise FormatError(lineno, f"expected {HEADER!r}")
            saw_header = True
            continue
        tok = line.split()
        head = tok[0]
        if head == "alphabet":
            if q is not None or len(tok) != 2:
                raise FormatError(lineno, "alphabet must be given once, as 'alphabet <q>'")
            (q,) = _ints(tok[1:], lineno)
            if q < 2:
                raise FormatError(lineno, "alphabet size must be at least 2")
        elif head == "wires":
            if n is not None or len(tok) != 2:
                raise FormatError(lineno, "wires must be given once, as 'wires <n>'")
            (n,) = _ints(tok[1:], lineno)
            if n < 0:
                raise FormatError(lineno, "wire count must be non-negative")
        elif head == "gate":
            if q is None or n is None:
                raise FormatError(lineno, "gate before alphabet/wires header")
            if len(tok) < 4:
                raise FormatError(lineno, "truncated gate line")
            name, kind = tok[1], tok[2]
            if name in gates:
                raise FormatError(lineno, f"duplicate gate name {name!r}")
            try:
                if kind == "table":
                    codes = _ints(tok[3:], lineno)
                    base = GatePerm(q, _arity_from_size(len(codes), q, lineno), codes)
                    g = GateDef(name, q, "table", base=base)
                elif kind == "controlled":
                    if len(tok) < 6 or tok[4] != "base":
                        raise FormatError(lineno, "expected 'controlled <word> base <codes>'")
                    control = parse_word(tok[3], q)
                    codes = _ints(tok[5:], lineno)
                    base = GatePerm(q, _arity_from_size(len(codes), q, lineno), codes)
                    g = GateDef(name, q, "controlled", base=base, control=control)
                elif kind == "wireperm":
                    g = GateDef(name, q, "wireperm", images=_ints(tok[3:], lineno))
                else:
                    raise FormatError(lineno, f"unknown gate kind {kind!r}")
            except FormatError:
                raise
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from None
            gates[name] = g
        elif head == "apply":
            if n is None:
                raise FormatError(lineno, "apply before wires header")
            if len(tok) != 3:
                raise FormatError(lineno, "expected 'apply <name> <w,w,...>'")
            g = gates.get(tok[1])
            if g is None:
                raise FormatError(lineno, f"unknown gate {tok[1]!r}")
            wires = _ints(tok[2].split(","), lineno)
            for w in wires:
                if not 0 <= w < n:
                    raise FormatError(lineno, f"wire {w} out of range 0..{n - 1}")
            try:
                instances.append(GateInstance(g, wires))
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from None
        else:
            raise FormatError(lineno, f"unknown statement {head!r}")
    if not saw_header:
        raise FormatError(1, "empty document")
    if q is None or n is None:
        raise FormatError(1, "missing alphabet or wires line")
    return Circuit(q, n, tuple(instances))


def load(path) -> Circuit:
    with open(path) as fh:
        return parse(fh.read())


def save(c: Circuit, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(c))
