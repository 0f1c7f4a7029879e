"""Bound states of the radial problem with an A/r^4 core and a Coulomb tail."""

from ._core import (
    BoundState,
    ConnectionResult,
    DomainError,
    FloquetSolution,
    HeunError,
    IndexPair,
    ProblemParams,
    QuasiPolyResult,
    SolverError,
    Wavefunction,
    __version__,
    find_energy,
    find_energy_floquet,
    find_indices,
    laurent_coefficients,
    run_cli,
    sample_wavefunction,
    solve_quasipoly,
)

__all__ = [
    "BoundState",
    "ConnectionResult",
    "DomainError",
    "FloquetSolution",
    "HeunError",
    "IndexPair",
    "ProblemParams",
    "QuasiPolyResult",
    "SolverError",
    "Wavefunction",
    "__version__",
    "find_energy",
    "find_energy_floquet",
    "find_indices",
    "laurent_coefficients",
    "run_cli",
    "sample_wavefunction",
    "solve_quasipoly",
]
