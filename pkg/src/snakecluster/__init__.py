"""Laurent expansions of cluster variables of unpunctured surfaces via snake graphs."""

from .expansion import Expansion, expand, expand_via_subgraphs, exchange_check, f_polynomial, g_vector
from .oracle import Seed, find_flip_sequence, mutate, oracle_expand, transport_arcspec
from .poly import HETEROGENEOUS, LaurentPoly, multidegree, render
from .snake import SnakeGraph, build_snake
from .surface import ArcSpec, Quadrilateral, Triangulation, b_matrix, connecting_arcs, flip, validate

__all__ = [
    "ArcSpec", "Expansion", "HETEROGENEOUS", "LaurentPoly", "Quadrilateral", "Seed",
    "SnakeGraph", "Triangulation", "b_matrix", "build_snake", "connecting_arcs",
    "exchange_check", "expand", "expand_via_subgraphs", "f_polynomial", "find_flip_sequence",
    "flip", "g_vector", "multidegree", "mutate", "oracle_expand", "render",
    "transport_arcspec", "validate",
]
