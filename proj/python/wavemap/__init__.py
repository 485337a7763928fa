"""Wave maps into the 2-sphere: free RK4 versus constrained Rattle evolution."""

from ._core import (
    SERIES_HEADER,
    ConfigError,
    Domain,
    FieldState,
    Grid2D,
    InitialData,
    IoError,
    Method,
    RunClass,
    RunConfig,
    RunRecord,
    RunStatus,
    build_grid,
    classify_run,
    convergence_order,
    critical_search,
    energy_correction_rate,
    evolve,
    fit_scaling,
    format_config,
    initial_state,
    lightcone_energies,
    max_norms,
    origin_deviation,
    parse_config,
    rescaled_profile,
    scaling_function,
    scaling_model,
    state_from_arrays,
    static_drift,
    static_solution,
    total_energy,
    write_series,
)

__all__ = [name for name in dir() if not name.startswith("_")]
