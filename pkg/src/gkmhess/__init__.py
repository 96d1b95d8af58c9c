"""GKM graphs of regular semisimple Hessenberg varieties: graphs, automorphisms, cohomology."""

from .automorphisms import (
    GkmAutomorphism,
    act_on_map,
    action_matrix,
    aut_star,
    dot_action,
    enumerate_aut,
    phi_sigma,
    phi_zero,
)
from .cohomology import EquivariantClass, betti_numbers, equivariant_basis, x_classes
from .exact_core import LatticeMap, LinearForm, Polynomial, normal_form_T
from .gkm_graph import GkmGraph, fixed_subgraph, is_full_rank, is_k33, validate
from .hessenberg import HessenbergFunction, build_gkm_graph, star_condition
from .unipotent import HessSpace, PermMatrix, conjugate_elementary, cofactor_entry, find_witness

__all__ = [
    "EquivariantClass", "GkmAutomorphism", "GkmGraph", "HessSpace", "HessenbergFunction",
    "LatticeMap", "LinearForm", "PermMatrix", "Polynomial", "act_on_map", "action_matrix",
    "aut_star", "betti_numbers", "build_gkm_graph", "cofactor_entry", "conjugate_elementary",
    "dot_action", "enumerate_aut", "equivariant_basis", "find_witness", "fixed_subgraph",
    "is_full_rank", "is_k33", "normal_form_T", "phi_sigma", "phi_zero", "star_condition",
    "validate", "x_classes",
]

__version__ = "0.1.0"
