#include "dbsim/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dbsim {

namespace {

bool is_positive_whole(double x, std::int64_t& out) {
  const auto nearest = std::llround(x);
  if (nearest < 1) return false;
  const double tol = 1e-6 + 1e-12 * std::fabs(x);
  if (std::fabs(x - static_cast<double>(nearest)) > tol) return false;
  out = nearest;
  return true;
}

}  // namespace

void validate(const DetectorConfig& config) {
  if (!(config.n_t > 0.0))
    throw std::invalid_argument("n_t: light-pulse rate must be positive");
  if (!(config.n_tr > 0.0))
    throw std::invalid_argument("n_tr: triggering rate must be positive");
  if (!(config.mu > 0.0))
    throw std::invalid_argument("mu: mean photon number must be positive");
  if (config.b_l < 0)
    throw std::invalid_argument("b_l: blanking depth must be non-negative");
  if (!(config.window_s > 0.0))
    throw std::invalid_argument("window_s: observation window must be positive");

  std::int64_t bins = 0;
  if (!is_positive_whole(config.n_t * config.window_s, bins))
    throw std::invalid_argument(
        "n_t: n_t * window_s must be a positive whole bin count, got " +
        std::to_string(config.n_t * config.window_s));
  if (!is_positive_whole(config.n_tr * config.window_s, bins))
    throw std::invalid_argument(
        "n_tr: n_tr * window_s must be a positive whole bin count, got " +
        std::to_string(config.n_tr * config.window_s));
}

std::int64_t pulse_blank_span(std::int64_t b_l, double n_t, double n_tr) {
  if (b_l < 0) throw std::invalid_argument("b_l: blanking depth must be non-negative");
  if (!(n_t > 0.0) || !(n_tr > 0.0))
    throw std::invalid_argument("pulse_blank_span: rates must be positive");
  if (n_t > n_tr) return b_l;

  const double ratio = static_cast<double>(b_l) * n_t / n_tr;
  const auto nearest = std::llround(ratio);
  // Guard against 3.0000000001-style noise before taking the ceiling.
  if (std::fabs(ratio - static_cast<double>(nearest)) <= 1e-9 * (1.0 + std::fabs(ratio)))
    return nearest;
  return static_cast<std::int64_t>(std::ceil(ratio));
}

DerivedCounts derive_counts(const DetectorConfig& config) {
  validate(config);
  DerivedCounts counts;
  counts.n_0 = std::llround(std::min(config.n_t, config.n_tr) * config.mu * config.window_s);
  counts.n_bin = std::llround(config.n_tr * config.window_s);
  counts.n_dist = counts.n_0;
  counts.pulse_blank_span = pulse_blank_span(config.b_l, config.n_t, config.n_tr);
  return counts;
}

}  // namespace dbsim
