"""Reversible gates over finite alphabets: generation, decomposition and search."""

from .core import GatePerm, ComponentPartition, word_encode, word_decode, compose_lr, perm_parity
from .algebra import WirePerm, rewire, parallel, gencomp, extend, controlled
from .groups import StabilizerChain, TargetClass, build_chain, generates, target_order
from .circuit import Circuit, GateDef, GateInstance, simulate, to_perm, parse, serialize
from .search import InstanceSet, SearchResult, enumerate_instances, bfs_min, mitm_min

__version__ = "0.1.0"

__all__ = [
    "GatePerm", "ComponentPartition", "word_encode", "word_decode", "compose_lr", "perm_parity",
    "WirePerm", "rewire", "parallel", "gencomp", "extend", "controlled",
    "StabilizerChain", "TargetClass", "build_chain", "generates", "target_order",
    "Circuit", "GateDef", "GateInstance", "simulate", "to_perm", "parse", "serialize",
    "InstanceSet", "SearchResult", "enumerate_instances", "bfs_min", "mitm_min",
]
