"""Packing dijoins in weighted digraphs whose underlying graph is chordal."""

from .chordal import (
    find_chordless_cycle,
    find_simplicial_vertex,
    is_chordal,
    is_perfect_elimination_order,
    maximum_cardinality_search,
)
from .dicuts import (
    Dicut,
    enumerate_dicuts,
    is_dicut,
    is_dijoin,
    min_dicut,
    min_dicut_weight,
)
from .errors import (
    ChordalityError,
    DijoinError,
    InvalidInputError,
    InvariantViolation,
    ResourceLimitError,
)
from .generators import load_fixture, random_chordal_digraph
from .graph import Arc, WeightedDigraph, condense, delete_vertex, reverse, underlying_adjacency
from .oracle import can_pack, max_packing_size
from .packing import Packing, eliminate_vertex, mapping_back, pack_dijoins, solve

__all__ = [
    "Arc",
    "ChordalityError",
    "Dicut",
    "DijoinError",
    "InvalidInputError",
    "InvariantViolation",
    "Packing",
    "ResourceLimitError",
    "WeightedDigraph",
    "can_pack",
    "condense",
    "delete_vertex",
    "eliminate_vertex",
    "enumerate_dicuts",
    "find_chordless_cycle",
    "find_simplicial_vertex",
    "is_chordal",
    "is_dicut",
    "is_dijoin",
    "is_perfect_elimination_order",
    "load_fixture",
    "mapping_back",
    "max_packing_size",
    "maximum_cardinality_search",
    "min_dicut",
    "min_dicut_weight",
    "pack_dijoins",
    "random_chordal_digraph",
    "reverse",
    "solve",
    "underlying_adjacency",
]
