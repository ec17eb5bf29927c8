"""
D-gate amplitude dynamics and ancilla-assisted collapse.
"""

from .dgate import (
    DGateDynamics,
    Trajectory,
    amplitude_rhs,
    integrate_amplitude,
    integrate_amplitudes,
    implicit_solution_lhs,
    log_implicit_solution_lhs,
    solve_rate,
    rate_components,
    default_eps,
    trajectory_table,
)
from .dissipation import transfer_to_ancilla, collapse_with_ancilla

__all__ = [
    "DGateDynamics", "Trajectory", "amplitude_rhs", "integrate_amplitude",
    "integrate_amplitudes", "implicit_solution_lhs", "log_implicit_solution_lhs",
    "solve_rate", "rate_components", "default_eps", "trajectory_table",
    "transfer_to_ancilla", "collapse_with_ancilla",
]
