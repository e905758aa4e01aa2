"""Gated single-photon detector blanking simulator.

Thin wrapper over the C++ extension; see the project README for the model
and the command-line interface.
"""

from ._core import (  # noqa: F401
    BlankingEstimate,
    ConvergencePolicy,
    CountMode,
    DerivedCounts,
    DetectorConfig,
    EfficiencyPoint,
    OccupancyTimeline,
    RegistrationResult,
    SeedSpec,
    SensitivityResult,
    __version__,
    analytic_nb_avg,
    brute_force_np,
    compute_de,
    compute_ds,
    derive_counts,
    estimate_nb_avg,
    generate_timeline,
    greedy_np,
    greedy_np_counts,
    pulse_blank_span,
    reference,
    renewal_np_rate,
    sample_blanked_count,
    simulate_point,
    sub_seed,
    validate_config,
)
