"""Kicked harmonic oscillator simulator (C++ core)."""

from ._kho import (
    GOLDEN_RATIO,
    ConfigError,
    ConfinementError,
    DecompositionError,
    DomainError,
    GridSpec,
    PreconditionError,
    ResourceError,
    SystemParams,
    classical_map_step,
    coherent_state,
    dft_centered,
    ensemble_energy_series,
    evolve_record,
    floquet_spectrum,
    floquet_step,
    frft,
    husimi,
    inverse_dft_centered,
    observables,
    run_config,
    split_step_bound,
    split_step_floquet_step,
    validate_config,
)

__all__ = [name for name in dir() if not name.startswith("_")]
