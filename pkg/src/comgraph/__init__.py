"""Commuting graphs of finite semigroups and groups: computation from
multiplication tables, explicit realizing constructions, realizability gates,
and pruned exhaustive search at small orders."""

from .commuting import CommutingGraph, commuting_graph
from .graphs import (
    Decomposition,
    SimpleGraph,
    build_graph,
    decompose,
    find_forbidden_cycle,
    graphs_isomorphic,
    structural_features,
)
from .obstructions import Verdict, centrefree_gate, group_gate, semigroup_gate
from .search import SearchOutcome, SearchSpec, corpus_scan, search_realizations
from .tables import (
    CayleyTable,
    centraliser,
    centre,
    check_associativity,
    classify_magma,
    find_equivalence,
    normaliser,
    opposite,
    quotient_by_normal_subgroup,
    unitize,
)

__all__ = [
    "CayleyTable",
    "CommutingGraph",
    "Decomposition",
    "SearchOutcome",
    "SearchSpec",
    "SimpleGraph",
    "Verdict",
    "build_graph",
    "centraliser",
    "centre",
    "centrefree_gate",
    "check_associativity",
    "classify_magma",
    "commuting_graph",
    "corpus_scan",
    "decompose",
    "find_equivalence",
    "find_forbidden_cycle",
    "graphs_isomorphic",
    "group_gate",
    "normaliser",
    "opposite",
    "quotient_by_normal_subgroup",
    "search_realizations",
    "semigroup_gate",
    "structural_features",
    "unitize",
]

__version__ = "0.1.0"
