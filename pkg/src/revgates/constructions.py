"""
Explicit circuits: control lifting, the eight-gate controlled 3-cycle and
its recursive expansion, a 3-cycle from four 2-controlled symbol swaps,
the frozen controlled-rotation circuits, and synthesis by factorization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .algebra import (
    controlled,
    controlled_placements,
    family_bases,
    symbol_swap,
    wire_rotation,
    wire_swap,
    word_cycle,
)
from .circuit import Circuit, GateDef, GateInstance, parse, to_perm
from .core import GatePerm, Word, all_words, check_word, format_word, is_alt_conservative, word_decode, word_encode
from .groups import OutsideClassError, TargetClass, generation_report

FAMILIES = ("P1", "P2", "P3", "P4")


class NotUniversalError(ValueError):
    """The basis does not generate the target class at this arity."""


@dataclass(frozen=True)
class ThreeCycleSpec:
    """A 3-cycle (x y z) on A^n with two helper words s, t."""

    q: int
    n: int
    x: Word
    y: Word
    z: Word
    s: Word
    t: Word

    def __post_init__(self):
        words = []
        for name in ("x", "y", "z", "s", "t"):
            w = check_word(getattr(self, name), self.q)
            if len(w) != self.n:
                raise ValueError(f"word {name}={w} does not have length {self.n}")
            object.__setattr__(self, name, w)
            words.append(w)
        if len(set(words)) != 5:
            raise ValueError("x, y, z, s, t must be five distinct words")

    @classmethod
    def from_words(cls, q: int, words: Sequence[Sequence[int]]) -> ThreeCycleSpec:
        if len(words) != 5:
            raise ValueError("need exactly five words x, y, z, s, t")
        return cls(q, len(words[0]), *map(tuple, words))

    @property
    def cycle(self) -> GatePerm:
        return word_cycle(self.q, [self.x, self.y, self.z])

    def target(self, w: Sequence[int]) -> GatePerm:
        """C_w[(x y z)]."""
        return controlled(w, self.cycle)


def _control_tag(w: Word, q: int) -> str:
    return "c" + format_word(w, q).replace("-", "")


def lift_control(circ: Circuit, u: Sequence[int]) -> Circuit:
    """Prefix every gate's control word by ``u`` on |u| new leading wires."""
    u = check_word(u, circ.q)
    if not u:
        return circ
    m = len(u)
    renamed: dict[str, GateDef] = {}
    out = []
    for inst in circ.instances:
        g = inst.gate
        if not g.is_controlled:
            raise ValueError(f"gate {g.name} has no control word to extend")
        lifted = renamed.get(g.name)
        if lifted is None:
            lifted = renamed[g.name] = GateDef.make_controlled(
                f"{g.name}.{_control_tag(u, circ.q)}", u + g.control, g.base
            )
        out.append(GateInstance(lifted, tuple(range(m)) + tuple(w + m for w in inst.wires)))
    return Circuit(circ.q, circ.n + m, tuple(out))


def _one_controlled(q: int, name: str, symbol: int, cycle: Sequence[Word]) -> GateDef:
    return GateDef.make_controlled(name, (symbol,), word_cycle(q, list(cycle)))


def eight_gate_controlled_3cycle(spec: ThreeCycleSpec, a: int, b: int) -> Circuit:
    """C_ab[(x y z)] as eight 1-controlled 3-cycles on wires (c1, c2, data).

    The half circuit applies (s t x) and (x s y) under c1 = a, then
    (s t y) and (y s z) under c2 = b; the whole circuit runs it twice.
    """
    q, n = spec.q, spec.n
    check_word((a, b), q)
    x, y, z, s, t = spec.x, spec.y, spec.z, spec.s, spec.t
    data = tuple(range(2, n + 2))
    half = [
        (_one_controlled(q, "p1a", a, (s, t, x)), (0,) + data),
        (_one_controlled(q, "p1b", a, (x, s, y)), (0,) + data),
        (_one_controlled(q, "p2a", b, (s, t, y)), (1,) + data),
        (_one_controlled(q, "p2b", b, (y, s, z)), (1,) + data),
    ]
    return Circuit(q, n + 2, tuple(GateInstance(g, w) for g, w in half * 2))


def _helpers(spec: ThreeCycleSpec, cycle: Sequence[Word]) -> tuple[Word, Word]:
    rest = [w for w in (spec.x, spec.y, spec.z, spec.s, spec.t) if w not in cycle]
    return rest[0], rest[1]


def expand_controls_3cycle(m: int, spec: ThreeCycleSpec, w: Sequence[int]) -> Circuit:
    """C_w[(x y z)] with |w| = m as 8^(m-1) one-controlled 3-cycles.

    The last two control symbols are removed with the eight-gate circuit,
    lifted by the rest of ``w``; each lifted gate (an (m-1)-controlled
    3-cycle) is expanded the same way.
    """
    w = check_word(w, spec.q)
    if m < 1 or len(w) != m:
        raise ValueError(f"need m >= 1 and a control word of length m, got m={m}, w={w}")
    q, n = spec.q, spec.n
    if m == 1:
        gate = _one_controlled(q, "cyc", w[0], (spec.x, spec.y, spec.z))
        return Circuit(q, n + 1, (GateInstance(gate, tuple(range(n + 1))),))
    lifted = lift_control(eight_gate_controlled_3cycle(spec, w[-2], w[-1]), w[:-2])
    out: list[GateInstance] = []
    for inst in lifted.instances:
        g = inst.gate
        # the base is a single 3-cycle of words
        cyc = [word_decode(c, n, q) for c in g.base.cycles()[0]]
        sub = ThreeCycleSpec(q, n, *cyc, *_helpers(spec, cyc))
        inner = expand_controls_3cycle(m - 1, sub, g.control)
        for sub_inst in inner.instances:
            out.append(GateInstance(sub_inst.gate, tuple(inst.wires[i] for i in sub_inst.wires)))
    return _uniquely_named(Circuit(q, n + m, tuple(out)))


def _uniquely_named(c: Circuit) -> Circuit:
    """Give distinct definitions distinct names (g0, g1, ... by first use)."""
    names: dict[tuple, GateDef] = {}
    out = []
    for inst in c.instances:
        g = inst.gate
        key = (g.kind, g.control, g.base.table if g.base else None, g.images)
        if key not in names:
            names[key] = GateDef(f"g{len(names)}", g.q, g.kind, g.base, g.control, g.images)
        out.append(GateInstance(names[key], inst.wires))
    return Circuit(c.q, c.n, tuple(out))


def p3cycle_from_controlled_swaps(a: int, b: int, x: int, s: int, t: int, y: int,
                                  q: int = 2) -> Circuit:
    """C_ab[(xs xt ys)] on wires (c1, c2, d1, d2) from four 2-controlled
    symbol swaps, [h, g, h, g].

    h swaps x and y on d1 when (c2, d2) = (b, s); g swaps s and t on d2
    when (c1, d1) = (a, x).
    """
    check_word((a, b, x, s, t, y), q)
    if s == t or x == y:
        raise ValueError("the cycle (xs xt ys) needs s != t and x != y")
    h = GateDef.make_controlled("h", (b, s), symbol_swap(q, x, y))
    g = GateDef.make_controlled("g", (a, x), symbol_swap(q, s, t))
    seq = [(h, (1, 3, 2)), (g, (0, 2, 3))] * 2
    return Circuit(q, 4, tuple(GateInstance(gd, w) for gd, w in seq))


def p3cycle_target(a: int, b: int, x: int, s: int, t: int, y: int, q: int = 2) -> GatePerm:
    return controlled((a, b), word_cycle(q, [(x, s), (x, t), (y, s)]))


# frozen controlled-rotation circuits


ROTATION00_CELLS = (
    (1, 0, 2, 3), (3, 1, 4, 2), (1, 0, 2, 4), (3, 0, 1, 2), (0, 1, 3, 4),
    (1, 2, 3, 4), (0, 1, 4, 3), (1, 0, 2, 3), (3, 0, 2, 4),
)

WORD_CYCLES = (
    ((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0)),
    ((0, 0, 1, 1), (0, 1, 1, 0), (0, 1, 0, 1)),
)


def controlled_rotation_gate() -> GateDef:
    """The 0-controlled three-wire rotation: (0, b, c, d) -> (0, c, d, b)."""
    return GateDef.make_controlled("c0rot", (0,), wire_rotation(2))


def rotation_target(control: Sequence[int]) -> GatePerm:
    return controlled(control, wire_rotation(2))


def word_cycle_target(index: int) -> GatePerm:
    return word_cycle(2, WORD_CYCLES[index])


def build_rotation00() -> Circuit:
    """The nine-gate sequence; cell (c, b, d, e) puts the control on wire c
    and rotates wires b, d, e."""
    g = controlled_rotation_gate()
    return Circuit(2, 5, tuple(GateInstance(g, cell) for cell in ROTATION00_CELLS))


def _load(name: str) -> Circuit:
    text = resources.files("revgates").joinpath("data").joinpath(name).read_text()
    return parse(text)


def _validated(c: Circuit, target: GatePerm, what: str) -> Circuit:
    if to_perm(c) != target:
        raise AssertionError(f"frozen circuit {what} does not implement its target")
    return c


@lru_cache(maxsize=None)
def rotation00_circuit() -> Circuit:
    return _validated(_load("rotation00.rg"), rotation_target((0, 0)), "rotation00")


@lru_cache(maxsize=None)
def rotation01_circuit() -> Circuit:
    return _validated(_load("rotation01.rg"), rotation_target((0, 1)), "rotation01")


@lru_cache(maxsize=None)
def word_cycle_circuits() -> tuple[Circuit, Circuit]:
    return tuple(
        _validated(_load(f"wordcycle{i}.rg"), word_cycle_target(i), f"wordcycle{i}")
        for i in range(2)
    )


def fredkin_universality_generators() -> list[GatePerm]:
    """The 4-wire gate f(0,b,c,d) = (0,c,d,b), identity when the first bit
    is 1, followed by every nontrivial permutation of {0,1}^3 that is even
    on each weight class."""
    f = rotation_target((0,))
    words = [w for w in all_words(2, 3)]
    by_weight: dict[int, list[int]] = {}
    for w in words:
        by_weight.setdefault(sum(w), []).append(word_encode(w, 2))
    evens = []
    for choice in itertools.product(
        *(list(itertools.permutations(codes)) for _, codes in sorted(by_weight.items()))
    ):
        table = [0] * 8
        for (_, codes), images in zip(sorted(by_weight.items()), choice):
            for c, v in zip(codes, images):
                table[c] = v
        g = GatePerm(2, 3, tuple(table))
        if not g.is_identity() and is_alt_conservative(g):
            evens.append(g)
    return [f] + sorted(evens, key=lambda g: g.table)


def one_controlled_wire_swaps() -> list[GateDef]:
    return [GateDef.make_controlled(f"cswap{a}", (a,), wire_swap(2)) for a in (0, 1)]


# synthesis


def _basis_report(basis: str, t: TargetClass, q: int, n: int):
    try:
        placements = controlled_placements(basis, q, n)
    except ValueError as exc:
        raise NotUniversalError(str(exc)) from None
    return placements, generation_report([p.gate for p in placements], t, q, n)


@lru_cache(maxsize=32)
def _cached_basis_report(basis: str, kind: str, k: int | None, q: int, n: int):
    return _basis_report(basis, TargetClass(kind, k), q, n)


def synthesize(target: GatePerm, t: TargetClass, basis: str) -> Circuit:
    """A circuit of controlled ``basis`` gates on ``target.n`` wires that
    implements ``target``. No attempt is made to keep it short."""
    if basis not in FAMILIES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {FAMILIES}")
    q, n = target.q, target.n
    w = t.violation(target)
    if w is not None:
        raise OutsideClassError(-1, w, t.kind)
    if target.is_identity():
        return Circuit(q, n, ())
    if t.kind == "conserved":
        placements, report = _basis_report(basis, t, q, n)
    else:
        placements, report = _cached_basis_report(basis, t.kind, t.k, q, n)
    if not report.passed:
        raise NotUniversalError(
            f"{basis} generates a group of order {report.order} on {q}^{n}, "
            f"class {t.kind} has order {report.target}"
        )
    word = report.chain.factorize(target)
    index = {p.table: i for i, p in enumerate(family_bases(basis, q))}
    defs: dict[int, GateDef] = {}
    out = []
    for i in word:
        pl = placements[i]
        gd = defs.get(i)
        if gd is None:
            name = f"{basis.lower()}_{index[pl.base.table]}"
            if pl.control:
                name += "_" + _control_tag(pl.control, q)
            gd = defs[i] = GateDef.make_controlled(name, pl.control, pl.base)
        out.append(GateInstance(gd, pl.wires))
    c = Circuit(q, n, tuple(out))
    if to_perm(c) != target:
        raise AssertionError("synthesized circuit does not re-simulate to its target")
    return c
