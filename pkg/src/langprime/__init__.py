"""Primality of finite languages given as DFAs, and the tiling reduction chain."""

from .automata import (
    Dfa,
    Nfa,
    accepts,
    concat,
    count_words,
    determinize,
    enumerate_words,
    equivalent,
    from_words,
    is_finite,
    minimize,
    product_intersect,
    run,
    union,
    visited_states,
)
from .concat_eq import ConcatEqVerdict, concat_equiv
from .decomposition import (
    DecompositionReport,
    Witness,
    candidate_states,
    check_partition_decomposition,
    check_split_relation,
    is_prime,
    left_language,
    right_language,
)
from .reductions import (
    EdgeTilingInstance,
    RelTilingInstance,
    concat_to_primality,
    edge_to_rel,
    hardness_pipeline,
    rel_to_concat,
    solve_tiling,
    verify_tiling,
)

__all__ = [
    "Dfa",
    "Nfa",
    "accepts",
    "concat",
    "count_words",
    "determinize",
    "enumerate_words",
    "equivalent",
    "from_words",
    "is_finite",
    "minimize",
    "product_intersect",
    "run",
    "union",
    "visited_states",
    "ConcatEqVerdict",
    "concat_equiv",
    "DecompositionReport",
    "Witness",
    "candidate_states",
    "check_partition_decomposition",
    "check_split_relation",
    "is_prime",
    "left_language",
    "right_language",
    "EdgeTilingInstance",
    "RelTilingInstance",
    "concat_to_primality",
    "edge_to_rel",
    "hardness_pipeline",
    "rel_to_concat",
    "solve_tiling",
    "verify_tiling",
]
