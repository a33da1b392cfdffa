"""Exact minimal fillings of finite pseudometric spaces."""

from .denegativize import DenegativizeError, ModificationStep, modify, remove_negative_edges
from .filling import (
    FillingError,
    WeightedFilling,
    check_exact_paths,
    is_generalized_filling,
    is_nonneg_filling,
    total_weight,
    tour_lower_bound,
)
from .lp_core import LinearProgram, LpOutcome, Status, solve
from .metric_space import (
    PseudometricSpace,
    SpaceError,
    SpaceKind,
    classify,
    load_space,
    parse_space,
    random_space,
)
from .solver import (
    OutOfHypothesisError,
    SizeLimitError,
    SolveReport,
    mpf,
    mpf_gen,
    solve_space,
    verify_theorem,
)
from .topology import (
    TopologyError,
    TreeTopology,
    binary_trees,
    count_binary_trees,
    enumerate_binary_trees,
    planar_order,
)

__all__ = [name for name in dir() if not name.startswith("_")]
