"""
Command-line interface.

Gate specs accepted by --target/--base/--gens:

  swap:a,b                 symbol swap on one wire
  cycle:u,v,w              cycle of words, e.g. cycle:001,010,100
  rot3                     three-wire rotation (x1,x2,x3) -> (x2,x3,x1)
  fredkin                  binary controlled wire swap
  controlled:<word>:<spec> spec controlled by <word> on the leading wires

Exit status: 0 pass, 1 fail, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from .algebra import extend, fredkin, symbol_swap, wire_rotation, word_cycle
from .circuit import Circuit, FormatError, GateDef, load, serialize, simulate, to_perm
from .core import DegreeCapError, GatePerm, format_word, parse_word, perm_parity
from .groups import OutsideClassError, TargetClass, generation_report, parity_sequence, parity_span

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SPAN_LIST_LIMIT = 256


class UsageError(ValueError):
    pass


def parse_gate_spec(text: str, q: int) -> GateDef:
    """Turn a gate spec into a named gate definition."""
    head, _, rest = text.partition(":")
    try:
        if head == "swap":
            a, b = (int(s) for s in rest.split(","))
            return GateDef.from_perm(f"swap{a}{b}", symbol_swap(q, a, b))
        if head == "cycle":
            words = [parse_word(w, q) for w in rest.split(",")]
            if len(words) < 2 or len({len(w) for w in words}) != 1 or not words[0]:
                raise UsageError("cycle needs at least two words of one nonzero length")
            return GateDef.from_perm("cycle", word_cycle(q, words))
        if head == "rot3" and not rest:
            return GateDef.from_perm("rot3", wire_rotation(q))
        if head == "fredkin" and not rest:
            if q != 2:
                raise UsageError("fredkin is a binary gate; use --q 2")
            return GateDef.from_perm("fredkin", fredkin())
        if head == "controlled":
            word, sep, inner = rest.partition(":")
            if not sep:
                raise UsageError("expected controlled:<word>:<spec>")
            base = parse_gate_spec(inner, q)
            ctrl = parse_word(word, q)
            if base.is_controlled:
                ctrl, base_perm = ctrl + base.control, base.base
            else:
                base_perm = base.perm
            return GateDef.make_controlled(f"c_{base.name}", ctrl, base_perm)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(f"bad gate spec {text!r}: {exc}") from None
    raise UsageError(f"unknown gate spec {text!r}")


def _spec_perm(text: str, q: int, n: int | None) -> GatePerm:
    g = parse_gate_spec(text, q).perm
    if n is None or n == g.n:
        return g
    if n < g.n:
        raise UsageError(f"gate of arity {g.n} does not fit on {n} wires")
    return extend(g, n, range(g.n))


def _budget(text: str) -> int:
    units = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30}
    t = text.strip().upper().rstrip("B")
    try:
        if t and t[-1] in units:
            return int(float(t[:-1]) * units[t[-1]])
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad memory size {text!r}") from None


def _load_circuit(path: str) -> Circuit:
    try:
        return load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit_circuit(c: Circuit, out: str | None) -> str | None:
    text = serialize(c)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        return None
    return text


# subcommands; each returns (exit status, payload)


def cmd_components(args) -> tuple[int, dict]:
    from .hypergraphs import components

    part = components(args.kind, args.q, args.n)
    return EXIT_PASS, {"count": part.count, "sizes": part.sizes()}


def cmd_verify_generation(args) -> tuple[int, dict]:
    from .algebra import controlled_instances

    kind = args.target_class
    t = TargetClass(kind, k=args.k) if kind == "modk" else TargetClass(kind)
    family = "P2K" if kind == "modk" else args.family
    if kind == "modk" and args.family != "P2":
        raise UsageError("class modk is checked against family P2 (with the a^k b^k swaps)")
    gens = controlled_instances(family, args.q, args.n, args.k)
    try:
        rep = generation_report(gens, t, args.q, args.n)
    except OutsideClassError as exc:
        return EXIT_FAIL, {"status": "FAIL", "reason": "generator outside class",
                           "generator": exc.index, "witness": format_word(exc.word, args.q)}
    payload = {"status": "PASS" if rep.passed else "FAIL", "order": str(rep.order),
               "target_order": str(rep.target), "generators": len(gens)}
    return (EXIT_PASS if rep.passed else EXIT_FAIL), payload


def cmd_parity_seq(args) -> tuple[int, dict]:
    if bool(args.circuit) == bool(args.gens):
        raise UsageError("give exactly one of --circuit or --gens")
    if args.circuit:
        f = to_perm(_load_circuit(args.circuit))
        if args.n is not None and args.n != f.n:
            raise UsageError(f"circuit has {f.n} wires, --n says {args.n}")
        try:
            seq = parity_sequence(f)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return EXIT_PASS, {"sequence": "".join(map(str, seq))}
    if args.n is None:
        raise UsageError("--gens needs --n")
    gens = [parse_gate_spec(s, args.q).perm for s in args.gens]
    try:
        span = parity_span(gens, args.n, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload: dict = {"span_size": len(span)}
    if len(span) <= SPAN_LIST_LIMIT:
        payload["span"] = sorted("".join(map(str, s)) for s in span)
    return EXIT_PASS, payload


def cmd_decompose(args) -> tuple[int, dict]:
    from .search import bfs_min, enumerate_instances, mitm_min

    base = parse_gate_spec(args.base, args.q)
    if base.arity > args.n:
        raise UsageError(f"base gate of arity {base.arity} does not fit on {args.n} wires")
    target = _spec_perm(args.target, args.q, args.n)
    inst = enumerate_instances(base, args.n)
    if args.algo == "bfs":
        r = bfs_min(target, inst, args.max_depth, args.mem_budget)
    else:
        r = mitm_min(target, inst, args.max_depth, args.mem_budget, args.workers)
    payload = {"status": r.status, "depth": r.depth, "instances": len(inst), "nodes": r.nodes}
    if r.found:
        payload["circuit"] = _emit_circuit(r.circuit, args.out)
        return EXIT_PASS, payload
    return EXIT_FAIL, payload


def cmd_lift(args) -> tuple[int, dict]:
    from .constructions import lift_control

    c = _load_circuit(args.circuit)
    try:
        lifted = lift_control(c, parse_word(args.prefix, c.q))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_PASS, {"wires": lifted.n, "gates": len(lifted), "circuit": _emit_circuit(lifted, args.out)}


def cmd_synthesize(args) -> tuple[int, dict]:
    from .constructions import NotUniversalError, synthesize

    if os.path.exists(args.target):
        target = to_perm(_load_circuit(args.target))
    else:
        target = _spec_perm(args.target, args.q, args.n)
    kind = args.target_class
    if kind == "auto":
        kind = "alt" if perm_parity(target) == 0 else "full"
    try:
        c = synthesize(target, TargetClass(kind), args.basis)
    except OutsideClassError as exc:
        return EXIT_FAIL, {"status": "FAIL", "reason": f"target is not in class {kind}",
                           "witness": format_word(exc.word, target.q)}
    except NotUniversalError as exc:
        return EXIT_FAIL, {"status": "FAIL", "reason": str(exc)}
    return EXIT_PASS, {"status": "PASS", "class": kind, "gates": len(c),
                       "circuit": _emit_circuit(c, args.out)}


def cmd_simulate(args) -> tuple[int, dict]:
    c = _load_circuit(args.circuit)
    try:
        w = parse_word(args.input, c.q)
        out = simulate(c, w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_PASS, {"input": format_word(w, c.q), "output": format_word(out, c.q)}


def cmd_check_paper(args) -> tuple[int, dict]:
    from .checks import run_suite

    results = run_suite(args.suite, seed=args.seed, workers=args.workers, mem_budget=args.mem_budget)
    if not args.json:
        for r in results:
            print(r.line())
    ok = all(r.passed for r in results)
    payload = {
        "status": "PASS" if ok else "FAIL",
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    return (EXIT_PASS if ok else EXIT_FAIL), payload


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized parts (default 0)")
    common.add_argument("--workers", type=int, default=1, help="worker threads for searches")
    common.add_argument("--q", type=int, default=2, help="alphabet size (default 2)")

    p = argparse.ArgumentParser(
        prog="revgates", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("components", parents=[common], help="connected components of G1..G4")
    s.add_argument("--kind", required=True, choices=["G1", "G2", "G3", "G4"])
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("verify-generation", parents=[common],
                       help="does a controlled family generate a class at arity n")
    s.add_argument("--family", required=True, choices=["P1", "P2", "P3", "P4"])
    s.add_argument("--class", dest="target_class", required=True,
                   choices=["full", "alt", "cons", "altcons", "modk"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=None, help="modulus for class modk")
    s.set_defaults(func=cmd_verify_generation)

    s = sub.add_parser("parity-seq", parents=[common], help="parity sequence or parity span")
    s.add_argument("--circuit")
    s.add_argument("--gens", action="append", help="gate spec; repeat for several")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_parity_seq)

    s = sub.add_parser("decompose", parents=[common], help="shortest circuit over placements of a base gate")
    s.add_argument("--target", required=True)
    s.add_argument("--base", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--algo", choices=["bfs", "mitm"], default="mitm")
    s.add_argument("--max-depth", type=int, required=True)
    s.add_argument("--mem-budget", type=_budget, default="4G", help="e.g. 512M, 4G (default 4G)")
    s.add_argument("--out", help="write the circuit here instead of printing it")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("lift", parents=[common], help="prefix every control word of a circuit")
    s.add_argument("--circuit", required=True)
    s.add_argument("--prefix", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("synthesize", parents=[common], help="circuit over a controlled family")
    s.add_argument("--target", required=True, help="circuit file or gate spec")
    s.add_argument("--basis", required=True, choices=["P1", "P2", "P3", "P4"])
    s.add_argument("--class", dest="target_class", default="auto",
                   choices=["auto", "full", "alt", "cons", "altcons"])
    s.add_argument("--n", type=int, help="extend a gate spec to this many wires")
    s.add_argument("--out")
    s.set_defaults(func=cmd_synthesize)

    s = sub.add_parser("simulate", parents=[common], help="run a circuit on one input word")
    s.add_argument("--circuit", required=True)
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("check-paper", parents=[common], help="run the reproducibility checks")
    s.add_argument("--suite", choices=["quick", "full"], default="quick")
    s.add_argument("--mem-budget", type=_budget, default="4G")
    s.set_defaults(func=cmd_check_paper)
    return p


def _inputs(args) -> dict:
    skip = {"func", "json", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: Sequence[str] | None = None) -> int:
    from .search import ResourceCapError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        status, payload = args.func(args)
    except UsageError as exc:
        print(f"revgates {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCapError, DegreeCapError) as exc:
        status, payload = EXIT_CAP, {"status": "CAP", "reason": str(exc)}
    except ValueError as exc:
        print(f"revgates {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - t0
    if args.json:
        report = {"subcommand": args.command, "inputs": _inputs(args), "result": payload,
                  "exit_status": status, "seconds": round(elapsed, 3)}
        print(json.dumps(report, sort_keys=True))
    elif args.command != "check-paper" or status == EXIT_CAP:
        for key, value in payload.items():
            if key == "circuit" and value:
                print(value, end="")
            elif value is not None:
                print(f"{key}: {value}")
    return status


if __name__ == "__main__":
    sys.exit(main())
