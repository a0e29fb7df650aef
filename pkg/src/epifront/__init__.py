"""Free-boundary nonlocal-dispersal epidemic model: solvers and classifier."""

from .config import InitialProfile, ModelConfig, NumericsConfig
from .classify import (
    Classification,
    CriticalMuResult,
    classify,
    critical_mu,
    vanishing_bound,
)
from .diagnostics import ScalarDiagnostics, scalar_diagnostics, solve_equilibrium
from .dynamics import (
    OrderReport,
    StateSnapshot,
    Trajectory,
    compare_runs,
    run_fixed_domain,
    run_free_boundary,
    state_ceilings,
    step_free_boundary,
)
from .grid import Grid, NonlocalOperator, apply_nonlocal, front_flux, kernel_tail_mass
from .kernels import KernelSpec
from .reactions import ReactionPair
from .spectral import (
    CriticalLengthResult,
    EigenResult,
    assemble_operator,
    critical_length,
    principal_eigen,
    tent_inequality_check,
)
from .steady import SteadyResult, gamma_map, solve_bounded_steady, solve_halfline_steady
from .validation import ValidationReport, validate_kernel, validate_reactions

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "CriticalLengthResult",
    "CriticalMuResult",
    "EigenResult",
    "Grid",
    "InitialProfile",
    "KernelSpec",
    "ModelConfig",
    "NonlocalOperator",
    "NumericsConfig",
    "OrderReport",
    "ReactionPair",
    "ScalarDiagnostics",
    "StateSnapshot",
    "SteadyResult",
    "Trajectory",
    "ValidationReport",
    "apply_nonlocal",
    "assemble_operator",
    "classify",
    "compare_runs",
    "critical_length",
    "critical_mu",
    "front_flux",
    "gamma_map",
    "kernel_tail_mass",
    "principal_eigen",
    "run_fixed_domain",
    "run_free_boundary",
    "scalar_diagnostics",
    "solve_bounded_steady",
    "solve_equilibrium",
    "solve_halfline_steady",
    "state_ceilings",
    "step_free_boundary",
    "tent_inequality_check",
    "validate_kernel",
    "validate_reactions",
    "vanishing_bound",
]
