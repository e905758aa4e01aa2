#pragma once

#include <cstdint>
#include <string_view>

#include "dbsim/config.hpp"
#include "dbsim/rng.hpp"
#include "dbsim/timeline.hpp"

namespace dbsim {

/// What a blanked-window count counts. A multi-photon bin is one light
/// pulse, so "pulses" (occupied bins) is the default; "photons" sums the
/// per-bin photon counts instead. The two differ only where photons collide
/// in one bin.
enum class CountMode { pulses, photons };

std::string_view to_string(CountMode mode);
CountMode parse_count_mode(std::string_view name);  // "pulses" | "photons"

/// Monte Carlo estimate of the average number of light pulses falling in the
/// blanked pulse slots after a registration.
struct BlankingEstimate {
  double nb_avg = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  CountMode mode = CountMode::pulses;
};

/// Stopping rule for estimate_nb_avg. Defaults give about 1e-3 resolution on
/// a quantity of magnitude 0.3.
struct ConvergencePolicy {
  std::int64_t batch_size = 10000;     ///< registrations sampled per batch
  double target_std_error = 1e-3;      ///< stop once std_error falls below
  std::int64_t max_samples = 1000000;  ///< hard cap
};

/// Count of blanked material in bins chosen+1 .. chosen+span, truncated at
/// the timeline end (no wraparound). chosen must point at an occupied bin.
std::int64_t sample_blanked_count(const OccupancyTimeline& timeline,
                                  std::int64_t chosen, std::int64_t span,
                                  CountMode mode);

/// Closed-form expectation of sample_blanked_count under uniform placement
/// with replacement, edge effects ignored. Photons mode:
/// span*(n_dist-1)/n_bin; pulses mode: span*(1-(1-1/n_bin)^(n_dist-1)).
/// Independent of the Monte Carlo path; used as its verification oracle.
double analytic_nb_avg(std::int64_t n_dist, std::int64_t n_bin,
                       std::int64_t span, CountMode mode);

/// Estimates nb_avg for an operating point. Each batch gets a fresh
/// timeline of n_0 photons over n_t*window pulse bins; registrations are
/// drawn uniformly with replacement among occupied bins and the blanked
/// window (pulse_blank_span slots) is tallied. Stops at the first batch
/// boundary where std_error <= policy.target_std_error, or at
/// policy.max_samples. Deterministic for fixed arguments.
BlankingEstimate estimate_nb_avg(const DetectorConfig& config,
                                 const SeedSpec& seed,
                                 const ConvergencePolicy& policy = {},
                                 CountMode mode = CountMode::pulses);

}  // namespace dbsim
