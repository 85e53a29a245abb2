"""Exact enumeration of Yoccoz tau-functions (Branner-Hubbard tableaux) of
cubic polynomials, with counts of truncated spines and topological
conjugacy classes per generic level."""

from .counting import (
    CountRecord,
    DyadicRational,
    IntegrityError,
    count_record,
    moduli_sum,
    spine_factor,
    spines,
    symmetry,
    top,
    twist_factor,
    twist_period,
)
from .enumerator import (
    LevelSummary,
    brute_force_enumerate,
    enumerate_levels,
    export_prefix_tree,
    ratios,
)
from .extension import ExtensionChoice, TailDecomposition, admissible_extensions, delta, tail_decomposition
from .grid import MarkedGrid, grid_to_tau, tau_to_grid, validate_grid
from .kernel import BACKEND
from .tau import TauFunction, first_violation, is_admissible, marked_levels, markers, ord_, parse_tau

__version__ = "0.1.0"
