#include "dbsim/timeline.hpp"

#include <ostream>
#include <stdexcept>

namespace dbsim {

OccupancyTimeline generate_timeline(std::int64_t n_bin, std::int64_t n_photons,
                                    const SeedSpec& seed) {
  if (n_bin < 1)
    throw std::invalid_argument("generate_timeline: n_bin must be at least 1");
  if (n_photons < 0)
    throw std::invalid_argument("generate_timeline: n_photons must be non-negative");

  OccupancyTimeline timeline;
  timeline.counts.assign(static_cast<std::size_t>(n_bin), 0);
  timeline.n_photons = n_photons;

  Xoshiro256StarStar rng(sub_seed(seed));
  const auto bound = static_cast<std::uint64_t>(n_bin);
  for (std::int64_t i = 0; i < n_photons; ++i)
    ++timeline.counts[uniform_below(rng, bound)];
  return timeline;
}

std::vector<std::int64_t> occupied_indices(const OccupancyTimeline& timeline) {
  std::vector<std::int64_t> indices;
  for (std::size_t i = 0; i < timeline.counts.size(); ++i)
    if (timeline.counts[i] > 0) indices.push_back(static_cast<std::int64_t>(i));
  return indices;
}

std::int64_t occupied_bin_count(const OccupancyTimeline& timeline) {
  std::int64_t n = 0;
  for (const auto c : timeline.counts) n += (c > 0);
  return n;
}

void write_occupied_dump(const OccupancyTimeline& timeline, std::ostream& out) {
  for (std::size_t i = 0; i < timeline.counts.size(); ++i)
    if (timeline.counts[i] > 0) out << i << ',' << timeline.counts[i] << '\n';
}

}  // namespace dbsim
