"""Exact LHS bounds, optimal measurement sets and detection sweeps for
linear EPR-steering inequalities on two qubits."""

from .errors import CanonicalizationError, CapacityError, ValidationError
from .hemisphere import (
    HemisphereConfig,
    HemisphereSet,
    all_ones_bound,
    analytic_bound,
    build_hemisphere_set,
    exact_bound_small,
)
from .lhsbound import BoundResult, MeasurementSet, canonicalize, lhs_bound, lhs_bound_eig
from .optimizer import AnnealingConfig, OptimizationResult, anneal, optimize, random_set, refine
from .qstate import (
    DensityMatrix,
    correlation_matrix,
    make_avn,
    make_generalized_werner,
    make_mems,
    make_state,
    make_werner,
    min_eigenvalue,
    partial_transpose,
)
from .violation import (
    SweepGrid,
    ViolationResult,
    detect,
    max_quantum_value,
    quantum_value,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealingConfig",
    "BoundResult",
    "CanonicalizationError",
    "CapacityError",
    "DensityMatrix",
    "HemisphereConfig",
    "HemisphereSet",
    "MeasurementSet",
    "OptimizationResult",
    "SweepGrid",
    "ValidationError",
    "ViolationResult",
    "all_ones_bound",
    "analytic_bound",
    "anneal",
    "build_hemisphere_set",
    "canonicalize",
    "correlation_matrix",
    "detect",
    "exact_bound_small",
    "lhs_bound",
    "lhs_bound_eig",
    "make_avn",
    "make_generalized_werner",
    "make_mems",
    "make_state",
    "make_werner",
    "max_quantum_value",
    "min_eigenvalue",
    "optimize",
    "partial_transpose",
    "quantum_value",
    "random_set",
    "refine",
    "sweep",
]
