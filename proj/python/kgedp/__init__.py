"""Bound states of the Klein-Gordon equation with an energy-dependent Coulomb-like
potential and a position- and energy-dependent mass."""

from ._core import (
    DEFAULT_HBAR_C,
    AbsentError,
    BoundaryReport,
    Branch,
    BranchError,
    ConvergenceError,
    CouplingMode,
    DomainError,
    EigenLine,
    EntryStatus,
    EvaluationError,
    ParticleSpec,
    PhysicalConstants,
    PoleError,
    PotentialSpec,
    SolverConfig,
    SpectrumEntry,
    SpectrumTable,
    WaveSolution,
    aim_quantized_tau,
    aim_terminates,
    constant_mass_b,
    constant_mass_identity_check,
    kummer_1f1,
    parse_mode,
    residual,
    run_cli,
    solve_spectrum,
    wave_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
