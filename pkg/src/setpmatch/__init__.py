"""Set parameterized matching with layered Karp-Rabin fingerprints."""
from .generate import GenSpec, generate
from .compare import compare_setstrings, layer1_fingerprints, mash
from .matcher import MatchReport, advance, find_matches, init_state, pattern_hash, window_hash_scratch
from .modhash import FieldParams, HashParams, modpow, multiset_hash, rolling_update, select_primes, seq_hash
from .offsets import (
    compute_offsets,
    construct_bijection,
    exact_compare,
    naive_prev_sets,
    prev_transform,
    start_counts,
)
from .oracle import OracleBudget, bijection_enumerate_compare, oracle_find_matches
from .setstring import Alphabet, Bijection, SetString, apply_bijection, parse_setstring, read_setstrings, serialize_setstring

__all__ = [
    "Alphabet",
    "Bijection",
    "FieldParams",
    "GenSpec",
    "HashParams",
    "MatchReport",
    "OracleBudget",
    "SetString",
    "advance",
    "apply_bijection",
    "bijection_enumerate_compare",
    "compare_setstrings",
    "compute_offsets",
    "construct_bijection",
    "exact_compare",
    "find_matches",
    "generate",
    "init_state",
    "layer1_fingerprints",
    "mash",
    "modpow",
    "multiset_hash",
    "naive_prev_sets",
    "oracle_find_matches",
    "parse_setstring",
    "pattern_hash",
    "prev_transform",
    "read_setstrings",
    "rolling_update",
    "select_primes",
    "seq_hash",
    "serialize_setstring",
    "start_counts",
    "window_hash_scratch",
]
