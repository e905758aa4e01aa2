#include "dbsim/blanking.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dbsim {

std::string_view to_string(CountMode mode) {
  return mode == CountMode::pulses ? "pulses" : "photons";
}

CountMode parse_count_mode(std::string_view name) {
  if (name == "pulses") return CountMode::pulses;
  if (name == "photons") return CountMode::photons;
  throw std::invalid_argument("mode: expected \"pulses\" or \"photons\", got \"" +
                              std::string(name) + "\"");
}

std::int64_t sample_blanked_count(const OccupancyTimeline& timeline,
                                  std::int64_t chosen, std::int64_t span,
                                  CountMode mode) {
  if (span < 0) throw std::invalid_argument("span must be non-negative");
  if (chosen < 0 || chosen >= timeline.n_bin())
    throw std::invalid_argument("chosen bin index out of range");
  if (timeline.counts[static_cast<std::size_t>(chosen)] == 0)
    throw std::invalid_argument("chosen bin is unoccupied");

  const std::int64_t last = std::min(chosen + span, timeline.n_bin() - 1);
  std::int64_t total = 0;
  for (std::int64_t i = chosen + 1; i <= last; ++i) {
    const auto c = timeline.counts[static_cast<std::size_t>(i)];
    total += (mode == CountMode::pulses) ? (c > 0) : c;
  }
  return total;
}

double analytic_nb_avg(std::int64_t n_dist, std::int64_t n_bin,
                       std::int64_t span, CountMode mode) {
  if (n_dist < 1) throw std::invalid_argument("n_dist must be at least 1");
  if (n_bin < 1) throw std::invalid_argument("n_bin must be at least 1");
  if (span < 0) throw std::invalid_argument("span must be non-negative");

  const double others = static_cast<double>(n_dist - 1);
  const double bins = static_cast<double>(n_bin);
  if (mode == CountMode::photons) return static_cast<double>(span) * others / bins;
  return static_cast<double>(span) * (1.0 - std::pow(1.0 - 1.0 / bins, others));
}

BlankingEstimate estimate_nb_avg(const DetectorConfig& config,
                                 const SeedSpec& seed,
                                 const ConvergencePolicy& policy,
                                 CountMode mode) {
  if (policy.batch_size < 1 || policy.max_samples < 1 || !(policy.target_std_error > 0.0))
    throw std::invalid_argument("convergence policy fields must be positive");

  const DerivedCounts derived = derive_counts(config);
  // The sensitivity derivation distributes photons over pulse bins
  // (n_t * window), not gate bins, and blanks pulse slots.
  const std::int64_t pulse_bins = std::llround(config.n_t * config.window_s);
  const std::int64_t span = derived.pulse_blank_span;
  if (derived.n_0 < 1)
    throw std::runtime_error("empty timeline: operating point places no photons");

  const std::uint64_t root = sub_seed(seed);
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  std::int64_t samples = 0;
  double std_error = 0.0;

  for (std::int64_t batch = 0; samples < policy.max_samples; ++batch) {
    // Fresh timeline per batch keeps intra-timeline correlation out of the
    // error estimate; placement and registration picks use separate streams.
    const OccupancyTimeline timeline = generate_timeline(
        pulse_bins, derived.n_0,
        SeedSpec{root, static_cast<std::uint64_t>(2 * batch)});
    const std::vector<std::int64_t> occupied = occupied_indices(timeline);
    Xoshiro256StarStar picker(
        sub_seed(root, static_cast<std::uint64_t>(2 * batch + 1)));

    const std::int64_t take =
        std::min(policy.batch_size, policy.max_samples - samples);
    for (std::int64_t i = 0; i < take; ++i) {
      const std::int64_t chosen =
          occupied[uniform_below(picker, occupied.size())];
      const std::int64_t count = sample_blanked_count(timeline, chosen, span, mode);
      sum += count;
      sum_sq += count * count;
    }
    samples += take;

    if (samples >= 2) {
      const double n = static_cast<double>(samples);
      const double mean = static_cast<double>(sum) / n;
      const double var =
          (static_cast<double>(sum_sq) - n * mean * mean) / (n - 1.0);
      std_error = std::sqrt(std::max(var, 0.0) / n);
    }
    if (std_error <= policy.target_std_error) break;
  }

  BlankingEstimate estimate;
  estimate.nb_avg = static_cast<double>(sum) / static_cast<double>(samples);
  estimate.std_error = std_error;
  estimate.samples = samples;
  estimate.mode = mode;
  return estimate;
}

}  // namespace dbsim
