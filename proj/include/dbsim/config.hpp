#pragma once

#include <cstdint>

namespace dbsim {

/// Operating point of a gated single-photon receiver with digital blanking.
struct DetectorConfig {
  double n_t = 0.0;        ///< light-pulse arriving rate [1/s]
  double n_tr = 0.0;       ///< detector triggering (gating) rate [1/s]
  double mu = 0.0;         ///< mean photon number per pulse
  std::int64_t b_l = 0;    ///< gate bins blanked after each registration
  double window_s = 1.0;   ///< observation window [s]
};

/// Simulation counts derived from an operating point.
struct DerivedCounts {
  std::int64_t n_0 = 0;               ///< expected incident photons over the window
  std::int64_t n_bin = 0;             ///< gate bins in the window (n_tr * window)
  std::int64_t n_dist = 0;            ///< photons distributed in the registration simulation (= n_0)
  std::int64_t pulse_blank_span = 0;  ///< pulse slots unavailable after a registration
};

/// Throws std::invalid_argument naming the offending field if the config is
/// unusable: non-positive rates, mu or window, negative b_l, or bin counts
/// (n_t*window, n_tr*window) that are not positive whole numbers.
void validate(const DetectorConfig& config);

/// Number of pulse slots unavailable after a registration. Blanking is
/// specified in gate bins; when gating is faster than the pulse train
/// (n_t <= n_tr) a pulse slot is lost if any of its gates falls inside the
/// blanked gate window, hence ceil(b_l * n_t / n_tr). When n_t > n_tr the
/// bins are gate bins already and b_l is returned unchanged.
std::int64_t pulse_blank_span(std::int64_t b_l, double n_t, double n_tr);

/// Deterministic arithmetic from operating point to simulation counts.
/// n_0 saturates at the gating rate: min(n_t, n_tr) * mu * window, rounded
/// to nearest.
DerivedCounts derive_counts(const DetectorConfig& config);

}  // namespace dbsim
