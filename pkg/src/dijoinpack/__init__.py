"""Dicut enumeration and disjoint dijoin packing for finite digraphs."""

from .digraph import Bipartition, Capacity, Digraph, format_digraph, parse_digraph
from .dicuts import (
    Dicut,
    dicut_from_inshore,
    enumerate_dibonds,
    enumerate_dicuts,
    quotient,
    robbins_two_dijoins,
)
from .hypergraph import (
    BergeCycle,
    Colouring,
    Hypergraph,
    TwoColourFailure,
    check_balanced_exhaustive,
    dicut_hypergraph,
    pack_transversals,
    parse_hypergraph,
    two_colour,
)
from .classes import (
    DicutClass,
    DicutFlags,
    NestedRepresentation,
    classify_dicut,
    corner_closure,
    find_nested_representation,
    is_corner_closed,
    is_nested_pair,
    join,
    meet,
    min_dicut_class,
    resolve_class,
)
from .packing import (
    Packing,
    VerificationResult,
    pack_corner_closed_uniform,
    pack_min,
    pack_nested,
    verify_packing,
)
from .capacity import (
    EquivalenceReport,
    HatResult,
    TildeResult,
    capacitated_equivalence_check,
    hat_transform,
    tilde_transform,
)
from .oracle import (
    WoodallReport,
    check_woodall,
    max_disjoint_dijoins,
    max_disjoint_transversals,
)
from .fixtures import Fixture, fixture
from .catalogue import DEFAULT_SEED, exhaustive_catalogue, random_instances
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "BergeCycle",
    "Capacity",
    "Colouring",
    "DEFAULT_SEED",
    "Dicut",
    "DicutClass",
    "DicutFlags",
    "Digraph",
    "EquivalenceReport",
    "Fixture",
    "HatResult",
    "Hypergraph",
    "NestedRepresentation",
    "Packing",
    "TildeResult",
    "TwoColourFailure",
    "VerificationResult",
    "WoodallReport",
    "capacitated_equivalence_check",
    "check_balanced_exhaustive",
    "check_woodall",
    "classify_dicut",
    "corner_closure",
    "dicut_from_inshore",
    "dicut_hypergraph",
    "enumerate_dibonds",
    "enumerate_dicuts",
    "errors",
    "exhaustive_catalogue",
    "find_nested_representation",
    "fixture",
    "format_digraph",
    "hat_transform",
    "is_corner_closed",
    "is_nested_pair",
    "join",
    "max_disjoint_dijoins",
    "max_disjoint_transversals",
    "meet",
    "min_dicut_class",
    "pack_corner_closed_uniform",
    "pack_min",
    "pack_nested",
    "pack_transversals",
    "parse_digraph",
    "parse_hypergraph",
    "quotient",
    "random_instances",
    "resolve_class",
    "robbins_two_dijoins",
    "tilde_transform",
    "two_colour",
    "verify_packing",
]
