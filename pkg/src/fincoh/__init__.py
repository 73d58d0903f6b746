"""Nonabelian first cohomology of finite group actions, computed exhaustively."""
from .actions import GroupAction, PointedSetAction, build_action, h0, is_equivariant, restrict_and_project
from .cohomology import (
    Cocycle,
    CohomologySet,
    cohomologous_witness,
    connecting_map,
    enumerate_cocycles,
    h1,
    h1_group_structure,
    induced_map_h1,
    verify_exact_sequence,
)
from .groups import FiniteGroup, build_group, compute_aut, coset_space, make_subgroup

__version__ = "0.1.0"
