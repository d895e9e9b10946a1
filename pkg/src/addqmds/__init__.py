"""Additive codes over F_{q^h} that are linear over F_q, seen through subspace packings."""

from .code import AdditiveCode, code_from_packing, dually_k_bound, qmds_length_bound
from .constructions import (
    ConstructionParams,
    construct,
    construct_A,
    construct_B,
    construct_Bbar,
    construct_spread_code,
)
from .finite_field import GF, FieldTower, make_tower, tower_for
from .geometry import DualArc, dda_to_code, code_to_dda, is_dda, is_dho, search_dho, theta
from .linalg import CapExceeded, Subspace
from .packing import (
    Packing,
    beutelspacher_spread,
    desarguesian_spread,
    extend_search,
    partial_spread,
    verify_lambda_packing,
)

__version__ = "0.1.0"
