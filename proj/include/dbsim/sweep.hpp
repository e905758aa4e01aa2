#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dbsim/blanking.hpp"
#include "dbsim/reference.hpp"
#include "dbsim/registration.hpp"

namespace dbsim {

inline constexpr std::uint64_t kDefaultMasterSeed = 1;

/// Stream index reserved for the sensitivity-derivation pipeline, far above
/// any per-point stream index a sweep could use.
inline constexpr std::uint64_t kSensitivityStream = 0xD5ull << 32;

/// File I/O failure; what() names the offending path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// How the sensitivity constant applied to a sweep is chosen: a literal
/// value, the published constant, or a fresh run of the blanking pipeline.
struct DsChoice {
  enum class Kind { value, published, simulated };
  Kind kind = Kind::published;
  double value = reference::kPublishedDs;  // meaningful when kind == value
};

/// Accepts a number, "paper" (published constant) or "simulated".
DsChoice parse_ds_choice(std::string_view text);

/// A sweep: the cross product of n_t_values and n_tr_values at fixed
/// mu / b_l / window, one EfficiencyPoint per pair.
struct SweepSpec {
  double mu = reference::kDefaultMu;
  std::int64_t b_l = reference::kDefaultBlankLength;
  double window_s = 1.0;
  std::vector<double> n_t_values;
  std::vector<double> n_tr_values;
  DsChoice ds;
  std::int64_t trials = 20;
  std::uint64_t master_seed = kDefaultMasterSeed;
  int threads = 1;
  std::string out_csv;  ///< empty = do not write
  std::string out_svg;  ///< empty = do not write
};

/// Loads a flat JSON object of sweep settings (schema in the README) on top
/// of the given defaults. Unknown keys and type mismatches are rejected with
/// the field path.
SweepSpec parse_config_file(const std::string& path, SweepSpec base = {});

/// Throws std::invalid_argument naming the offending field / pair.
void validate(const SweepSpec& spec);

/// The sensitivity constant to apply, running the blanking pipeline at the
/// characterization point when spec.ds asks for "simulated".
double resolve_ds(const SweepSpec& spec);

/// One point per (n_t, n_tr) pair, ordered by n_tr then n_t ascending,
/// deterministic for a fixed master seed regardless of thread count.
std::vector<EfficiencyPoint> run_sweep(const SweepSpec& spec);

void emit_csv(std::span<const EfficiencyPoint> points,
              std::uint64_t master_seed, std::ostream& out);
void emit_csv_file(std::span<const EfficiencyPoint> points,
                   std::uint64_t master_seed, const std::string& path);

/// Line chart of detection efficiency vs n_t (log x), one polyline per
/// distinct n_tr value.
void emit_svg(std::span<const EfficiencyPoint> points, std::ostream& out);
void emit_svg_file(std::span<const EfficiencyPoint> points,
                   const std::string& path);

/// One reproduced efficiency row next to its published counterpart.
struct Table1Row {
  EfficiencyPoint point;
  DerivedCounts derived;
  reference::PublishedEfficiencyRow published;
  double n_p_rel_dev = 0.0;  ///< (simulated - published) / published
  double de_rel_dev = 0.0;
};

struct Table1Report {
  std::vector<Table1Row> rows;
  double ds = reference::kPublishedDs;
  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;
};

/// Reruns the published efficiency table's seven operating points with the
/// published sensitivity constant, in published row order.
Table1Report reproduce_table1(std::int64_t trials = 20,
                              std::uint64_t master_seed = kDefaultMasterSeed,
                              int threads = 1);

std::string format_table1(const Table1Report& report);
void emit_table1_csv(const Table1Report& report, std::ostream& out);
void emit_table1_csv_file(const Table1Report& report, const std::string& path);

/// "250 kHz", "2.5 MHz", "100 MHz" style rate formatting.
std::string format_rate(double hz);

}  // namespace dbsim
