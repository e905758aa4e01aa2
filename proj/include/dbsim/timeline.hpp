#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dbsim/rng.hpp"

namespace dbsim {

/// Photon occupancy over a window of equal time-bins. Stored as per-bin
/// photon counts so both photon-level and pulse-level statistics are
/// available; a bin with two or more photons is still one occupied pulse bin.
struct OccupancyTimeline {
  std::vector<std::uint32_t> counts;  ///< counts[i] = photons landed in bin i
  std::int64_t n_photons = 0;         ///< total photons placed (= sum of counts)

  std::int64_t n_bin() const { return static_cast<std::int64_t>(counts.size()); }
};

/// Places n_photons photons independently and uniformly over n_bin bins,
/// with replacement. Pure function of its arguments: identical inputs give
/// bit-identical timelines on every platform.
OccupancyTimeline generate_timeline(std::int64_t n_bin, std::int64_t n_photons,
                                    const SeedSpec& seed);

/// Strictly increasing indices of bins holding at least one photon.
std::vector<std::int64_t> occupied_indices(const OccupancyTimeline& timeline);

/// Number of occupied bins, without materializing the index list.
std::int64_t occupied_bin_count(const OccupancyTimeline& timeline);

/// Debug dump: one line per occupied bin, "index,count", ascending index.
void write_occupied_dump(const OccupancyTimeline& timeline, std::ostream& out);

}  // namespace dbsim
