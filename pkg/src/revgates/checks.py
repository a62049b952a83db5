"""
Reproducibility checks run by ``revgates check-paper`` and the acceptance
tests. Each check returns a CheckResult; none of them raises on failure.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    WirePerm,
    controlled_instances,
    fredkin,
    gencomp,
    rewire,
    word_cycle,
)
from .circuit import GateDef, parse, serialize, to_perm
from .constructions import (
    ThreeCycleSpec,
    controlled_rotation_gate,
    eight_gate_controlled_3cycle,
    fredkin_universality_generators,
    one_controlled_wire_swaps,
    p3cycle_from_controlled_swaps,
    p3cycle_target,
    rotation_target,
    word_cycle_target,
)
from .core import GatePerm, all_words, compose_lr, is_conservative
from .groups import (
    TargetClass,
    _extensions,
    build_chain,
    evaluate_word,
    find_unreachable_conservative,
    generation_report,
    parity_sequence,
    parity_span,
    target_order,
)
from .search import DEFAULT_MEM_BUDGET, bfs_min, enumerate_instances, mitm_min


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        info = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{status}  {self.name}  ({self.seconds:.2f}s)  {info}"


def _timed(name: str, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported as a failure, never swallowed silently
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(name, bool(ok), detail, time.perf_counter() - t0)


# random gates


def random_perm(rng: random.Random, q: int, n: int) -> GatePerm:
    table = list(range(q**n))
    rng.shuffle(table)
    return GatePerm(q, n, tuple(table))


def random_conservative(rng: random.Random, q: int, n: int) -> GatePerm:
    from .core import weight_classes

    table = list(range(q**n))
    for block in weight_classes(q, n).blocks():
        images = list(block)
        rng.shuffle(images)
        for a, b in zip(block, images):
            table[a] = b
    return GatePerm(q, n, tuple(table))


def random_wire_perm(rng: random.Random, n: int) -> WirePerm:
    images = list(range(n))
    rng.shuffle(images)
    return WirePerm(tuple(images))


# individual checks


def eight_gate_check(seed: int = 0, trials: int = 20) -> tuple[bool, dict]:
    rng = random.Random(seed)
    words = list(all_words(2, 3))
    bad = 0
    for _ in range(trials):
        spec = ThreeCycleSpec.from_words(2, rng.sample(words, 5))
        a, b = rng.randrange(2), rng.randrange(2)
        bad += to_perm(eight_gate_controlled_3cycle(spec, a, b)) != spec.target((a, b))
    return bad == 0, {"trials": trials, "mismatches": bad}


def swap_cycle_check(seed: int = 0, trials: int = 20) -> tuple[bool, dict]:
    rng = random.Random(seed)
    cases = [c for c in itertools.product(range(2), repeat=6) if c[3] != c[4] and c[2] != c[5]]
    for _ in range(trials):
        while True:
            c = tuple(rng.randrange(3) for _ in range(6))
            if c[3] != c[4] and c[2] != c[5]:
                break
        cases.append(c + (3,))
    bad = 0
    for c in cases:
        bad += to_perm(p3cycle_from_controlled_swaps(*c)) != p3cycle_target(*c)
    return bad == 0, {"cases": len(cases), "mismatches": bad}


def rotation_depth(control: tuple[int, ...], depth: int, budget: int = DEFAULT_MEM_BUDGET,
                   workers: int = 1) -> tuple[bool, dict]:
    inst = enumerate_instances(controlled_rotation_gate(), 5)
    target = rotation_target(control)
    lower = mitm_min(target, inst, depth - 1, budget, workers)
    found = mitm_min(target, inst, depth, budget, workers)
    ok = len(inst) == 40 and not lower.found and found.found and found.depth == depth
    return ok, {
        "instances": len(inst),
        "exhausted_to": lower.depth if not lower.found else None,
        "found_depth": found.depth if found.found else None,
        "nodes": lower.nodes + found.nodes,
    }


def word_cycles_depth() -> tuple[bool, dict]:
    inst = enumerate_instances(controlled_rotation_gate(), 4)
    depths, lowers = [], []
    for i in range(2):
        t = word_cycle_target(i)
        lowers.append(not mitm_min(t, inst, 5).found)
        r = mitm_min(t, inst, 6)
        depths.append(r.depth if r.found else None)
    return all(lowers) and depths == [6, 6], {"depths": depths, "exhausted_to_5": lowers}


GRID = [
    ("P1", "full", [(2, 2), (2, 3), (3, 2), (3, 3)], []),
    ("P2", "cons", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)], []),
    ("P3", "alt", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)], []),
    ("P4", "altcons", [(2, 3), (2, 4), (2, 5), (3, 4)], [(3, 3)]),
]


def universality_grid() -> tuple[bool, dict]:
    ok = True
    rows = {}
    for family, kind, passing, failing in GRID:
        t = TargetClass(kind)
        for q, n in passing + failing:
            rep = generation_report(controlled_instances(family, q, n), t, q, n)
            expect = (q, n) in passing
            ok &= rep.passed == expect
            rows[f"{family}/{kind}/{q},{n}"] = "PASS" if rep.passed else f"FAIL {rep.order}/{rep.target}"
    ok &= target_order(TargetClass("cons"), 2, 4) == 414720
    return ok, rows


def alt_extension() -> tuple[bool, dict]:
    # a 3-cycle and a 15-cycle on codes 1..15 generate Alt(16)
    q, n = 2, 4
    g1 = GatePerm.from_cycles(q, n, [[(0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)]])
    g2 = GatePerm(q, n, tuple([0] + [1 + (i % 15) for i in range(1, 16)]))
    base = build_chain([g1, g2]).order()
    gens = [e for g in (g1, g2) for e in _extensions(g, 5)]
    order = build_chain(gens, q, 5).order()
    from math import factorial

    return base == factorial(16) // 2 and order == factorial(32) // 2, {
        "base_order_ok": base == factorial(16) // 2,
        "order": order,
    }


def full_extension() -> tuple[bool, dict]:
    from math import factorial

    q = 3
    words = list(all_words(q, 2))
    swap = GatePerm.from_cycles(q, 2, [words[:2]])
    long = GatePerm.from_cycles(q, 2, [words])
    assert build_chain([swap, long]).order() == factorial(9)
    gens = [e for g in (swap, long) for e in _extensions(g, 3)]
    odd = GatePerm.from_cycles(q, 3, [list(all_words(q, 3))[:2]])
    order = build_chain(gens + [odd], q, 3).order()
    return order == factorial(27), {"order": order}


def fredkin_obstruction() -> tuple[bool, dict]:
    span = parity_span([fredkin()], 4)
    f = find_unreachable_conservative([fredkin()], 4)
    if f is None:
        return False, {"span": len(span), "witness": None}
    chain = build_chain(_extensions(fredkin(), 4), 2, 4)
    member = chain.contains(f)
    return len(span) <= 2 and not member, {
        "span": len(span),
        "witness_parity": "".join(map(str, parity_sequence(f))),
        "member": member,
    }


def fredkin_universality() -> tuple[bool, dict]:
    gens = fredkin_universality_generators()
    detail, ok = {}, True
    for n in (4, 5):
        ext = [e for g in gens for e in _extensions(g, n)]
        rep = generation_report(ext, TargetClass("altcons"), 2, n)
        ok &= rep.passed
        detail[f"n{n}"] = rep.passed
    inst = enumerate_instances(one_controlled_wire_swaps(), 4)
    r = bfs_min(gens[0], inst, 4)
    ok &= r.found
    detail["swap_depth"] = r.depth if r.found else None
    return ok, detail


# randomized property suites


def prop_parity_homomorphism(seed: int, cases: int = 100) -> int:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        q, n = rng.choice([(2, 3), (2, 4), (3, 2), (3, 3)])
        f, g = random_conservative(rng, q, n), random_conservative(rng, q, n)
        pf, pg, pfg = parity_sequence(f), parity_sequence(g), parity_sequence(compose_lr(f, g))
        bad += pfg != tuple(a ^ b for a, b in zip(pf, pg))
    return bad


def prop_rewire_invariance(seed: int, cases: int = 100) -> int:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        q, n = rng.choice([(2, 3), (2, 4), (3, 2), (3, 3)])
        f = random_conservative(rng, q, n)
        bad += parity_sequence(rewire(f, random_wire_perm(rng, n))) != parity_sequence(f)
    return bad


def prop_gencomp(seed: int, cases: int = 100) -> int:
    """f o_n g with arity n gates equals plain composition."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        q, n = rng.choice([(2, 2), (2, 3), (3, 2)])
        f, g = random_perm(rng, q, n), random_perm(rng, q, n)
        bad += gencomp(f, g, n) != compose_lr(f, g)
        # k = 0 is parallel placement: g on the first wires, f after it
        k0 = gencomp(f, g, 0)
        x = tuple(rng.randrange(q) for _ in range(2 * n))
        bad += k0(x) != g(x[n:]) + f(x[:n])
    return bad


def prop_roundtrip(seed: int, cases: int = 100) -> int:
    from .circuit import Circuit, GateInstance
    from .core import parse_word

    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        q = rng.choice([2, 3, 11])
        n = rng.randint(2, 4)
        defs = []
        for j in range(rng.randint(1, 3)):
            arity = rng.randint(1, min(n, 2 if q > 3 else n))
            kind = rng.choice(["table", "controlled", "wireperm"])
            if kind == "table":
                defs.append(GateDef.from_perm(f"t{j}", random_perm(rng, q, arity)))
            elif kind == "controlled" and arity >= 2:
                ctrl = tuple(rng.randrange(q) for _ in range(arity - 1))
                defs.append(GateDef.make_controlled(f"c{j}", ctrl, random_perm(rng, q, 1)))
            else:
                defs.append(GateDef(f"w{j}", q, "wireperm", images=random_wire_perm(rng, arity).images))
        inst = []
        for _ in range(rng.randint(0, 6)):
            d = rng.choice(defs)
            inst.append(GateInstance(d, tuple(rng.sample(range(n), d.arity))))
        c = Circuit(q, n, tuple(inst))
        text = serialize(c)
        back = parse(text)
        bad += back != c or serialize(back) != text
    return bad


def prop_factorize(seed: int, cases: int = 100) -> int:
    rng = random.Random(seed)
    configs = [("P1", "full", 3, 2), ("P3", "alt", 2, 3), ("P2", "cons", 2, 3), ("P4", "altcons", 2, 4)]
    chains = {}
    for fam, kind, q, n in configs:
        gens = controlled_instances(fam, q, n)
        chains[(fam, kind, q, n)] = (gens, build_chain(gens, q, n))
    bad = 0
    for _ in range(cases):
        key = rng.choice(configs)
        gens, chain = chains[key]
        word = [rng.randrange(len(gens)) for _ in range(rng.randint(0, 30))]
        g = evaluate_word(gens, word, key[2], key[3])
        bad += evaluate_word(gens, chain.factorize(g), key[2], key[3]) != g
    return bad


PROPERTIES = {
    "parity homomorphism": prop_parity_homomorphism,
    "rewire invariance of parity": prop_rewire_invariance,
    "gencomp vs composition": prop_gencomp,
    "parse/serialize round trip": prop_roundtrip,
    "factorize re-simulation": prop_factorize,
}


def properties(seed: int = 0, cases: int = 100) -> tuple[bool, dict]:
    failures = {name: fn(seed, cases) for name, fn in PROPERTIES.items()}
    return all(v == 0 for v in failures.values()), {"cases": cases, **failures}


# suites


def run_suite(suite: str, seed: int = 0, workers: int = 1,
              mem_budget: int = DEFAULT_MEM_BUDGET) -> list[CheckResult]:
    if suite not in ("quick", "full"):
        raise ValueError(f"unknown suite {suite!r}; expected quick or full")
    checks: list[tuple[str, Callable[[], tuple[bool, dict]]]] = [
        ("1 eight-gate controlled 3-cycle", lambda: eight_gate_check(seed)),
        ("2 3-cycle from 2-controlled swaps", lambda: swap_cycle_check(seed)),
    ]
    if suite == "full":
        checks.append(("3a C_00[R] depth 9, none at 8",
                       lambda: rotation_depth((0, 0), 9, mem_budget, workers)))
    checks += [
        ("3b C_01[R] depth 8, none at 7", lambda: rotation_depth((0, 1), 8, mem_budget, workers)),
        ("4 word cycles depth 6, none at 5", word_cycles_depth),
        ("5 control-universality grid", universality_grid),
        ("6 alternating extension to 5 wires", alt_extension),
        ("7 full extension to 3 trits", full_extension),
        ("8 Fredkin parity obstruction", fredkin_obstruction),
        ("9 controlled-rotation universality", fredkin_universality),
        ("10 property suites", lambda: properties(seed)),
    ]
    return [_timed(name, fn) for name, fn in checks]
