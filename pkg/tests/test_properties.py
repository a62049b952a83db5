"""Randomized properties, 100+ examples each with a fixed hypothesis seed."""

from functools import lru_cache

from hypothesis import given, seed, settings
from hypothesis import strategies as st

from revgates.algebra import WirePerm, controlled_instances, gencomp, rewire
from revgates.checks import PROPERTIES
from revgates.circuit import Circuit, GateDef, GateInstance, parse, serialize, to_perm
from revgates.core import GatePerm, compose_lr, perm_parity, weight_classes
from revgates.groups import build_chain, evaluate_word, parity_sequence

SETTINGS = settings(max_examples=120, deadline=None, derandomize=True)
SHAPES = st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])


@st.composite
def gates(draw, shape=SHAPES):
    q, n = draw(shape)
    return GatePerm(q, n, tuple(draw(st.permutations(range(q**n)))))


@st.composite
def conservative_pairs(draw):
    q, n = draw(SHAPES)

    def one():
        table = list(range(q**n))
        for block in weight_classes(q, n).blocks():
            for x, y in zip(block, draw(st.permutations(block))):
                table[x] = y
        return GatePerm(q, n, tuple(table))

    return one(), one(), WirePerm(tuple(draw(st.permutations(range(n)))))


@SETTINGS
@seed(0)
@given(conservative_pairs())
def test_parity_sequence_is_a_homomorphism(data):
    f, g, _ = data
    expected = tuple(a ^ b for a, b in zip(parity_sequence(f), parity_sequence(g)))
    assert parity_sequence(compose_lr(f, g)) == expected


@SETTINGS
@seed(1)
@given(conservative_pairs())
def test_parity_sequence_ignores_rewiring(data):
    f, _, alpha = data
    assert parity_sequence(rewire(f, alpha)) == parity_sequence(f)


@SETTINGS
@seed(2)
@given(st.data())
def test_gencomp_full_overlap_is_composition(data):
    f = data.draw(gates())
    g = GatePerm(f.q, f.n, tuple(data.draw(st.permutations(range(len(f.table))))))
    assert gencomp(f, g, f.n) == compose_lr(f, g)
    assert perm_parity(compose_lr(f, g)) == perm_parity(f) ^ perm_parity(g)


@st.composite
def circuits(draw):
    q = draw(st.sampled_from([2, 3, 12]))
    n = draw(st.integers(1, 4))
    defs = []
    for j in range(draw(st.integers(1, 3))):
        arity = draw(st.integers(1, min(n, 2 if q > 3 else 3)))
        kind = draw(st.sampled_from(["table", "controlled", "wireperm"]))
        if kind == "controlled" and arity > 1:
            ctrl = tuple(draw(st.lists(st.integers(0, q - 1), min_size=arity - 1, max_size=arity - 1)))
            base = GatePerm(q, 1, tuple(draw(st.permutations(range(q)))))
            defs.append(GateDef.make_controlled(f"c{j}", ctrl, base))
        elif kind == "wireperm":
            defs.append(GateDef(f"w{j}", q, "wireperm", images=tuple(draw(st.permutations(range(arity))))))
        else:
            defs.append(GateDef.from_perm(f"t{j}", GatePerm(q, arity, tuple(draw(st.permutations(range(q**arity)))))))
    insts = []
    for _ in range(draw(st.integers(0, 6))):
        d = draw(st.sampled_from(defs))
        wires = draw(st.permutations(range(n)))[: d.arity]
        insts.append(GateInstance(d, tuple(wires)))
    return Circuit(q, n, tuple(insts))


@SETTINGS
@seed(3)
@given(circuits())
def test_parse_serialize_round_trip(c):
    text = serialize(c)
    back = parse(text)
    assert back == c
    assert serialize(back) == text
    assert to_perm(back) == to_perm(c)


@lru_cache(maxsize=None)
def _group(family, q, n):
    gens = controlled_instances(family, q, n)
    return gens, build_chain(gens, q, n)


@SETTINGS
@seed(4)
@given(st.sampled_from([("P1", 3, 2), ("P3", 2, 3), ("P2", 2, 3), ("P4", 2, 4), ("P3", 2, 4)]),
       st.lists(st.integers(0, 10**6), max_size=25))
def test_factorize_re_simulates(config, raw_word):
    gens, chain = _group(*config)
    q, n = config[1], config[2]
    word = [i % len(gens) for i in raw_word]
    g = evaluate_word(gens, word, q, n)
    assert evaluate_word(gens, chain.factorize(g), q, n) == g


def test_seeded_suites_have_no_failures():
    for name, fn in PROPERTIES.items():
        assert fn(0, 100) == 0, name
