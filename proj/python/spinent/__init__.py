"""Driven, coupled, dissipative spin qubits: dynamics and steady-state entanglement."""

from ._core import (
    AmbiguityError,
    BracketError,
    CapacityError,
    Error,
    MultiplicityError,
    NumericalError,
    ParameterError,
    StiffnessError,
    SystemParams,
    analytic_threshold,
    effective_hamiltonian,
    evolve,
    find_gamma_c,
    find_gamma_m,
    generator,
    liouvillian,
    negativity,
    partial_transpose,
    steady_state,
    sweep,
    theta_state,
    thermal_occupation,
)

__all__ = [
    "AmbiguityError",
    "BracketError",
    "CapacityError",
    "Error",
    "MultiplicityError",
    "NumericalError",
    "ParameterError",
    "StiffnessError",
    "SystemParams",
    "analytic_threshold",
    "effective_hamiltonian",
    "evolve",
    "find_gamma_c",
    "find_gamma_m",
    "generator",
    "liouvillian",
    "negativity",
    "partial_transpose",
    "steady_state",
    "sweep",
    "theta_state",
    "thermal_occupation",
]
