#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dbsim/config.hpp"
#include "dbsim/rng.hpp"
#include "dbsim/timeline.hpp"

namespace dbsim {

/// Maximum registrable occupied-bin count under the blanking constraint.
struct RegistrationResult {
  std::int64_t n_p = 0;
  /// Chosen bin indices, ascending; only filled on request.
  std::optional<std::vector<std::int64_t>> registered;
};

/// Left-to-right scan: registers every occupied bin that is more than
/// blank_span bins after the previously registered one. Linear in n_bin.
/// This earliest-first rule is optimal for the spacing constraint; the test
/// suite proves that empirically against brute_force_np.
RegistrationResult greedy_np(const OccupancyTimeline& timeline,
                             std::int64_t blank_span,
                             bool keep_registered = false);

/// Exhaustive oracle: enumerates every subset of occupied bins satisfying
/// the spacing constraint and returns the maximum cardinality. Rejects
/// timelines with more than 24 bins.
std::int64_t brute_force_np(const OccupancyTimeline& timeline,
                            std::int64_t blank_span);

/// Steady-state renewal approximation of the registration rate per bin for
/// i.i.d. bin occupancy probability p: one registration per cycle of mean
/// length blank_span + 1/p, i.e. p / (1 + p * blank_span).
double renewal_np_rate(double p, std::int64_t blank_span);

/// One sweep-output row: an operating point with its simulated registration
/// count and the detection efficiency it implies.
struct EfficiencyPoint {
  DetectorConfig config;
  double n_p_mean = 0.0;
  double n_p_std_error = 0.0;
  double de = 0.0;
  std::int64_t trials = 0;
};

/// Monte Carlo estimate of n_p for an operating point: per trial, distribute
/// n_dist photons over the n_bin gate bins and run greedy_np with the
/// blanking span of b_l gate bins (the gate-bin convention of the efficiency
/// simulation; the pulse-slot conversion belongs to the sensitivity
/// derivation only). de = n_p_mean * ds / n_0. Trials are independently
/// seeded and may run on any number of threads with identical results.
EfficiencyPoint simulate_point(const DetectorConfig& config, double ds,
                               std::int64_t trials, const SeedSpec& seed,
                               int threads = 1);

}  // namespace dbsim
