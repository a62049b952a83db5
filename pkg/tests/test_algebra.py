import random

import pytest

from revgates.algebra import (
    WirePerm,
    controlled,
    controlled_instances,
    controlled_placements,
    extend,
    family_bases,
    fredkin,
    gencomp,
    negation,
    parallel,
    permute_word,
    rewire,
    symbol_swap,
    toffoli,
    wire_perm,
    wire_rotation,
    wire_swap,
    word_cycle,
)
from revgates.core import GatePerm, compose_lr, is_conservative, perm_parity

from oracles import controlled_by_hand, coordinate_shuffle, gate_from_map, words


def rand_gate(rng, q, n):
    t = list(range(q**n))
    rng.shuffle(t)
    return GatePerm(q, n, tuple(t))


def test_wire_perm_examples():
    assert wire_perm(WirePerm.identity(3), 2).is_identity()
    sw = wire_perm(WirePerm((1, 0)), 2)
    assert [sw(w) for w in words(2, 2)] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    # the 3-cycle 1 -> 2 -> 3 -> 1 sends abc to cab
    rot = wire_perm(WirePerm.from_cycles(3, (0, 1, 2)), 2)
    alpha = {1: 2, 2: 3, 3: 1}
    for w in words(2, 3):
        assert rot(w) == coordinate_shuffle(w, alpha) == (w[2], w[0], w[1])


def test_wire_rotation_is_inverse_index_rule():
    # (x1, x2, x3) -> (x2, x3, x1) is pi_alpha for alpha^-1 = (1 2 3)
    alpha = {1: 3, 2: 1, 3: 2}
    for w in words(3, 3):
        assert wire_rotation(3)(w) == coordinate_shuffle(w, alpha)


def test_permute_word_composes():
    rng = random.Random(5)
    for _ in range(50):
        a = WirePerm(tuple(rng.sample(range(5), 5)))
        b = WirePerm(tuple(rng.sample(range(5), 5)))
        w = tuple(rng.randrange(3) for _ in range(5))
        assert permute_word(permute_word(w, a), b) == permute_word(w, a.then(b))


def test_parallel_examples():
    ident = GatePerm.identity(2, 1)
    assert parallel(ident, ident).is_identity()
    p = parallel(negation(), ident)
    assert {w: p(w) for w in words(2, 2)} == {(0, 0): (1, 0), (1, 0): (0, 0), (0, 1): (1, 1), (1, 1): (0, 1)}
    # a borrowed bit doubles every cycle, so the result is even
    f = GatePerm.from_cycles(2, 2, [[(0, 0), (0, 1)]])
    assert perm_parity(f) == 1 and perm_parity(parallel(f, ident)) == 0


def test_extend_examples():
    f = fredkin()
    assert extend(f, 3, (0, 1, 2)) == f
    e = extend(negation(), 2, (1,))
    assert all(e(w) == (w[0], 1 - w[1]) for w in words(2, 2))
    ef = extend(f, 4, (1, 2, 3))
    assert all(ef(w) == (w[0],) + f(w[1:]) for w in words(2, 4))


def test_extend_matches_by_hand():
    rng = random.Random(2)
    for _ in range(30):
        q, n = rng.choice([(2, 4), (3, 3)])
        k = rng.randint(1, n)
        f = rand_gate(rng, q, k)
        pos = tuple(rng.sample(range(n), k))

        def fn(w):
            out = list(w)
            for p, s in zip(pos, f(tuple(w[p] for p in pos))):
                out[p] = s
            return tuple(out)

        assert extend(f, n, pos) == gate_from_map(q, n, fn)


def test_extend_errors():
    with pytest.raises(ValueError):
        extend(fredkin(), 2, (0, 1))
    with pytest.raises(ValueError):
        extend(negation(), 2, (0, 0))
    with pytest.raises(ValueError):
        extend(negation(), 2, (2,))


def test_gencomp_examples():
    rng = random.Random(9)
    ident = GatePerm.identity(2, 1)
    assert gencomp(ident, ident, 1) == ident
    for _ in range(20):
        f, g = rand_gate(rng, 3, 2), rand_gate(rng, 3, 2)
        assert gencomp(f, g, 2) == compose_lr(f, g)
        z = gencomp(f, g, 0)
        # k = 0: f on the first inputs, g on the rest, g's outputs placed first
        assert all(z(w) == g(w[2:]) + f(w[:2]) for w in words(3, 4))
    with pytest.raises(ValueError):
        gencomp(f, g, 3)


def test_gencomp_partial_overlap():
    rng = random.Random(4)
    f, g = rand_gate(rng, 2, 3), rand_gate(rng, 2, 2)
    h = gencomp(f, g, 1)
    for w in words(2, 4):
        fx = f(w[:3])
        assert h(w) == g(fx[:1] + w[3:]) + fx[1:]


def test_rewire_examples():
    rng = random.Random(1)
    for _ in range(30):
        f = rand_gate(rng, 2, 3)
        a = WirePerm(tuple(rng.sample(range(3), 3)))
        assert rewire(f, WirePerm.identity(3)) == f
        assert rewire(rewire(f, a), a.inverse()) == f
        assert perm_parity(rewire(f, a)) == perm_parity(f)
    assert is_conservative(rewire(fredkin(), WirePerm((2, 0, 1))))


def test_controlled_examples():
    assert toffoli() == controlled_by_hand((1, 1), lambda w: (1 - w[0],), 2, 1)
    assert fredkin() == controlled_by_hand((1,), lambda w: (w[1], w[0]), 2, 2)
    assert controlled((), negation()) == negation()
    sw = symbol_swap(3, 0, 2)
    assert controlled((2, 1), sw) == controlled_by_hand((2, 1), lambda w: sw(w), 3, 1)


def test_family_members():
    assert family_bases("P1", 2) == [negation()]
    assert len(family_bases("P1", 3)) == 3
    assert family_bases("P2", 2) == [wire_swap(2)]
    p4 = family_bases("P4", 2)
    assert word_cycle(2, [(0, 0, 1), (0, 1, 0), (1, 0, 0)]) in p4
    assert word_cycle(2, [(0, 1, 1), (1, 1, 0), (1, 0, 1)]) in p4
    # P3 cycles (ab ac db) with a != d and b != c
    for g in family_bases("P3", 3):
        assert len(g.cycles()) == 1 and len(g.cycles()[0]) == 3


def test_controlled_instances_examples():
    assert controlled_instances("P1", 2, 1) == [negation()]
    assert fredkin() in controlled_instances("P2", 2, 3)
    p4 = controlled_instances("P4", 2, 3)
    r1 = word_cycle(2, [(0, 0, 1), (0, 1, 0), (1, 0, 0)])
    r2 = word_cycle(2, [(0, 1, 1), (1, 1, 0), (1, 0, 1)])
    # rewiring turns each rotation into its inverse as well
    assert set(g.table for g in p4) == {g.table for g in (r1, r2, r1.inverse(), r2.inverse())}
    tables = [pl.gate.table for pl in controlled_placements("P3", 2, 3)]
    assert len(tables) == len(set(tables))
