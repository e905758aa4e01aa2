#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "dbsim/blanking.hpp"
#include "dbsim/reference.hpp"

using namespace dbsim;

namespace {

OccupancyTimeline make_timeline(std::vector<std::uint32_t> counts) {
  OccupancyTimeline timeline;
  timeline.n_photons = 0;
  for (const auto c : counts) timeline.n_photons += c;
  timeline.counts = std::move(counts);
  return timeline;
}

}  // namespace

TEST_CASE("count mode names") {
  CHECK(parse_count_mode("pulses") == CountMode::pulses);
  CHECK(parse_count_mode("photons") == CountMode::photons);
  CHECK(to_string(CountMode::photons) == "photons");
  CHECK_THROWS_AS(parse_count_mode("bogus"), std::invalid_argument);
}

TEST_CASE("sample_blanked_count") {
  const auto timeline = make_timeline({1, 1, 0, 1, 0});
  CHECK(sample_blanked_count(timeline, 0, 3, CountMode::pulses) == 2);
  CHECK(sample_blanked_count(timeline, 0, 0, CountMode::pulses) == 0);
  CHECK(sample_blanked_count(timeline, 0, 0, CountMode::photons) == 0);

  // One occupied bin holding two photons: modes diverge.
  const auto collided = make_timeline({1, 2, 0});
  CHECK(sample_blanked_count(collided, 0, 2, CountMode::photons) == 2);
  CHECK(sample_blanked_count(collided, 0, 2, CountMode::pulses) == 1);

  // Window truncates at the end of the timeline.
  CHECK(sample_blanked_count(timeline, 3, 10, CountMode::pulses) == 0);

  CHECK_THROWS_AS(sample_blanked_count(timeline, 2, 3, CountMode::pulses),
                  std::invalid_argument);  // unoccupied chosen bin
  CHECK_THROWS_AS(sample_blanked_count(timeline, -1, 3, CountMode::pulses),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_blanked_count(timeline, 0, -1, CountMode::pulses),
                  std::invalid_argument);
}

TEST_CASE("analytic_nb_avg closed forms") {
  // photons mode: span * (n_dist - 1) / n_bin = 3 * 24999 / 250000
  CHECK(analytic_nb_avg(25000, 250000, 3, CountMode::photons) ==
        doctest::Approx(0.299988).epsilon(1e-9));
  // pulses mode: span * (1 - (1 - 1/n_bin)^(n_dist-1))
  CHECK(analytic_nb_avg(25000, 250000, 3, CountMode::pulses) ==
        doctest::Approx(0.2854774307059599).epsilon(1e-9));
  // a lone photon has nothing to blank
  CHECK(analytic_nb_avg(1, 100, 3, CountMode::pulses) == 0.0);
  CHECK(analytic_nb_avg(1, 100, 3, CountMode::photons) == 0.0);
  CHECK_THROWS_AS(analytic_nb_avg(0, 100, 3, CountMode::pulses),
                  std::invalid_argument);
}

TEST_CASE("estimate_nb_avg converges to the analytic oracle") {
  const DetectorConfig config = reference::characterization_config();
  for (const auto mode : {CountMode::pulses, CountMode::photons}) {
    const auto estimate = estimate_nb_avg(config, SeedSpec{11, 0}, {}, mode);
    const double analytic = analytic_nb_avg(25000, 250000, 3, mode);
    CAPTURE(static_cast<int>(mode));
    CHECK(estimate.std_error <= 1e-3);
    CHECK(estimate.samples >= 1);
    CHECK(std::fabs(estimate.nb_avg - analytic) <= 3.0 * estimate.std_error);
    CHECK(estimate.nb_avg >= 0.0);
    CHECK(estimate.nb_avg <= 3.0);  // pulse blank span at this point
  }
}

TEST_CASE("estimate_nb_avg is deterministic") {
  const DetectorConfig config{25e3, 50e3, 0.1, 6, 1.0};
  const auto a = estimate_nb_avg(config, SeedSpec{4, 9});
  const auto b = estimate_nb_avg(config, SeedSpec{4, 9});
  CHECK(a.nb_avg == b.nb_avg);
  CHECK(a.std_error == b.std_error);
  CHECK(a.samples == b.samples);
}

TEST_CASE("a single placed photon is never blanked") {
  // n_0 = 1000 * 1e-3 = 1
  const DetectorConfig config{1000, 1000, 1e-3, 6, 1.0};
  const auto estimate = estimate_nb_avg(config, SeedSpec{3, 0});
  CHECK(estimate.nb_avg == 0.0);
}

TEST_CASE("an operating point with no photons is rejected") {
  const DetectorConfig config{1000, 1000, 1e-9, 6, 1.0};
  CHECK_THROWS_WITH_AS(estimate_nb_avg(config, SeedSpec{3, 0}),
                       doctest::Contains("empty timeline"), std::runtime_error);
}

TEST_CASE("nb_avg grows with blanking depth and photon load") {
  // Ordering must hold with non-overlapping 3-sigma intervals, not just on
  // the point estimates; the true gaps are two orders of magnitude above
  // the stopping tolerance.
  const ConvergencePolicy policy{10000, 1e-3, 400000};
  double prev_upper = -1.0;
  for (const std::int64_t b_l : {1LL, 2LL, 4LL}) {
    const DetectorConfig config{10e3, 10e3, 0.1, b_l, 1.0};
    const auto estimate = estimate_nb_avg(config, SeedSpec{8, 0}, policy);
    CHECK(estimate.nb_avg - 3.0 * estimate.std_error > prev_upper);
    prev_upper = estimate.nb_avg + 3.0 * estimate.std_error;
  }

  prev_upper = -1.0;
  for (const double mu : {0.05, 0.1, 0.2}) {
    const DetectorConfig config{10e3, 10e3, mu, 3, 1.0};
    const auto estimate = estimate_nb_avg(config, SeedSpec{8, 1}, policy);
    CHECK(estimate.nb_avg - 3.0 * estimate.std_error > prev_upper);
    prev_upper = estimate.nb_avg + 3.0 * estimate.std_error;
  }
}

TEST_CASE("estimate matches the oracle at high occupancy as well") {
  // 90000 photons over 100000 bins: collisions are common and the pulses /
  // photons split is large.
  const DetectorConfig config{100e3, 100e3, 0.9, 2, 1.0};
  for (const auto mode : {CountMode::pulses, CountMode::photons}) {
    const auto estimate = estimate_nb_avg(config, SeedSpec{13, 0}, {}, mode);
    const double analytic = analytic_nb_avg(90000, 100000, 2, mode);
    CHECK(std::fabs(estimate.nb_avg - analytic) <= 3.0 * estimate.std_error);
  }
}
