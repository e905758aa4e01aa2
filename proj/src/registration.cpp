#include "dbsim/registration.hpp"

#include <cmath>
#include <stdexcept>

#include "dbsim/parallel.hpp"
#include "dbsim/sensitivity.hpp"

namespace dbsim {

RegistrationResult greedy_np(const OccupancyTimeline& timeline,
                             std::int64_t blank_span, bool keep_registered) {
  if (blank_span < 0)
    throw std::invalid_argument("blank_span must be non-negative");

  RegistrationResult result;
  if (keep_registered) result.registered.emplace();
  std::int64_t next_allowed = 0;
  for (std::int64_t i = 0; i < timeline.n_bin(); ++i) {
    if (timeline.counts[static_cast<std::size_t>(i)] == 0 || i < next_allowed)
      continue;
    ++result.n_p;
    if (result.registered) result.registered->push_back(i);
    next_allowed = i + blank_span + 1;
  }
  return result;
}

std::int64_t brute_force_np(const OccupancyTimeline& timeline,
                            std::int64_t blank_span) {
  if (blank_span < 0)
    throw std::invalid_argument("blank_span must be non-negative");
  if (timeline.n_bin() > 24)
    throw std::invalid_argument(
        "instance too large: brute_force_np enumerates subsets and is capped "
        "at 24 bins");

  const std::vector<std::int64_t> occupied = occupied_indices(timeline);
  const std::size_t k = occupied.size();
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::int64_t count = 0;
    std::int64_t last = -(blank_span + 1);
    bool valid = true;
    for (std::size_t b = 0; b < k && valid; ++b) {
      if (!(mask & (std::uint64_t{1} << b))) continue;
      if (occupied[b] - last <= blank_span) valid = false;
      last = occupied[b];
      ++count;
    }
    if (valid && count > best) best = count;
  }
  return best;
}

double renewal_np_rate(double p, std::int64_t blank_span) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (p > 1.0) throw std::invalid_argument("p is a probability, must be <= 1");
  if (blank_span < 0)
    throw std::invalid_argument("blank_span must be non-negative");
  return p / (1.0 + p * static_cast<double>(blank_span));
}

EfficiencyPoint simulate_point(const DetectorConfig& config, double ds,
                               std::int64_t trials, const SeedSpec& seed,
                               int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const DerivedCounts derived = derive_counts(config);

  const std::uint64_t root = sub_seed(seed);
  std::vector<std::int64_t> np_per_trial(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, threads, [&](std::int64_t t) {
    const OccupancyTimeline timeline = generate_timeline(
        derived.n_bin, derived.n_dist,
        SeedSpec{root, static_cast<std::uint64_t>(t)});
    np_per_trial[static_cast<std::size_t>(t)] =
        greedy_np(timeline, config.b_l).n_p;
  });

  // Reduction in fixed trial order keeps the result thread-count invariant.
  double sum = 0.0;
  for (const auto np : np_per_trial) sum += static_cast<double>(np);
  const double mean = sum / static_cast<double>(trials);
  double std_error = 0.0;
  if (trials >= 2) {
    double ss = 0.0;
    for (const auto np : np_per_trial) {
      const double d = static_cast<double>(np) - mean;
      ss += d * d;
    }
    std_error = std::sqrt(ss / static_cast<double>(trials - 1) /
                          static_cast<double>(trials));
  }

  EfficiencyPoint point;
  point.config = config;
  point.n_p_mean = mean;
  point.n_p_std_error = std_error;
  if (ds < 0.0 || ds > 1.0) throw std::invalid_argument("ds must lie in [0, 1]");
  // No incident photons means n_p = 0 and de = 0; compute_de itself rejects
  // n_0 = 0, so short-circuit that degenerate point here.
  point.de = derived.n_0 > 0
                 ? compute_de(mean, ds, static_cast<double>(derived.n_0))
                 : 0.0;
  point.trials = trials;
  if (point.de > ds * (1.0 + 1e-12))
    throw std::logic_error("efficiency exceeded sensitivity: n_p > n_0");
  return point;
}

}  // namespace dbsim
