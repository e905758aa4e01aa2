// dbsim: gated single-photon detector blanking simulator.
//
// Subcommands: nb-avg, derive-ds, point, sweep, table1, timeline.
// Exit codes: 0 success, 1 validation error, 2 runtime/simulation error,
// 3 I/O error.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbsim/blanking.hpp"
#include "dbsim/reference.hpp"
#include "dbsim/sensitivity.hpp"
#include "dbsim/sweep.hpp"

namespace {

using namespace dbsim;

// Seed precedence: --seed flag > config-file "seed" > DBSIM_SEED > built-in.
std::uint64_t default_seed_from_env() {
  const char* env = std::getenv("DBSIM_SEED");
  if (env == nullptr || *env == '\0') return kDefaultMasterSeed;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw std::invalid_argument(
        std::string("DBSIM_SEED: not an unsigned integer: \"") + env + "\"");
  return value;
}

struct PointFlags {
  double n_t = reference::characterization_config().n_t;
  double n_tr = reference::characterization_config().n_tr;
  double mu = reference::kDefaultMu;
  std::int64_t b_l = reference::kDefaultBlankLength;
  double window_s = 1.0;

  DetectorConfig config() const { return {n_t, n_tr, mu, b_l, window_s}; }
};

void add_point_flags(CLI::App* cmd, PointFlags& flags, bool require_rates) {
  auto* n_t = cmd->add_option("--n-t", flags.n_t, "light-pulse arriving rate [Hz]");
  auto* n_tr = cmd->add_option("--n-tr", flags.n_tr, "detector triggering rate [Hz]");
  if (require_rates) {
    n_t->required();
    n_tr->required();
  }
  cmd->add_option("--mu", flags.mu, "mean photon number per pulse");
  cmd->add_option("--b-l", flags.b_l, "blanked gate bins per registration");
  cmd->add_option("--window", flags.window_s, "observation window [s]");
}

void print_estimate(const BlankingEstimate& estimate, std::int64_t pulse_bins,
                    std::int64_t span, const DerivedCounts& derived) {
  std::printf("pulse bins:        %lld\n", static_cast<long long>(pulse_bins));
  std::printf("photons placed:    %lld\n", static_cast<long long>(derived.n_0));
  std::printf("pulse blank span:  %lld\n", static_cast<long long>(span));
  std::printf("nb_avg:            %.6f +/- %.6f (%s mode, %lld samples)\n",
              estimate.nb_avg, estimate.std_error,
              std::string(to_string(estimate.mode)).c_str(),
              static_cast<long long>(estimate.samples));
  std::printf("analytic nb_avg:   %.6f\n",
              analytic_nb_avg(derived.n_0, pulse_bins, span, estimate.mode));
  std::printf("published nb_avg:  %.3f\n", reference::kPublishedNbAvg);
}

int run(int argc, char** argv) {
  const std::uint64_t env_seed = default_seed_from_env();

  CLI::App app{"gated single-photon detector blanking simulator"};
  app.require_subcommand(1);

  // ---- nb-avg ----------------------------------------------------------
  auto* nb_cmd = app.add_subcommand(
      "nb-avg", "estimate the average blanked-pulse count per registration");
  PointFlags nb_flags;
  add_point_flags(nb_cmd, nb_flags, false);
  std::string nb_mode = "pulses";
  ConvergencePolicy nb_policy;
  std::uint64_t nb_seed = env_seed;
  nb_cmd->add_option("--mode", nb_mode, "counting mode: pulses|photons");
  nb_cmd->add_option("--batch-size", nb_policy.batch_size, "registrations per batch");
  nb_cmd->add_option("--target-se", nb_policy.target_std_error, "stop at this std error");
  nb_cmd->add_option("--max-samples", nb_policy.max_samples, "hard sample cap");
  nb_cmd->add_option("--seed", nb_seed, "master seed");
  nb_cmd->callback([&] {
    const DetectorConfig config = nb_flags.config();
    const DerivedCounts derived = derive_counts(config);
    const auto mode = parse_count_mode(nb_mode);
    const auto estimate =
        estimate_nb_avg(config, SeedSpec{nb_seed, 0}, nb_policy, mode);
    const auto pulse_bins = std::llround(config.n_t * config.window_s);
    print_estimate(estimate, pulse_bins, derived.pulse_blank_span, derived);
  });

  // ---- derive-ds -------------------------------------------------------
  auto* ds_cmd = app.add_subcommand(
      "derive-ds", "derive the detection sensitivity from n_g and nb_avg");
  PointFlags ds_flags;
  add_point_flags(ds_cmd, ds_flags, false);
  double ds_n_g = reference::kManufacturerNg;
  double nb_override = -1.0;
  std::string ds_mode = "pulses";
  std::uint64_t ds_seed = env_seed;
  ds_cmd->add_option("--n-g", ds_n_g, "registered pulses per window");
  auto* nb_opt = ds_cmd->add_option("--nb-avg", nb_override,
                                    "use this nb_avg instead of simulating");
  ds_cmd->add_option("--mode", ds_mode, "counting mode: pulses|photons");
  ds_cmd->add_option("--seed", ds_seed, "master seed");
  ds_cmd->callback([&] {
    const DetectorConfig config = ds_flags.config();
    const DerivedCounts derived = derive_counts(config);
    const auto n_0 = static_cast<double>(derived.n_0);

    double nb_avg = nb_override;
    if (nb_opt->count() == 0) {
      const auto mode = parse_count_mode(ds_mode);
      const auto estimate = estimate_nb_avg(config, SeedSpec{ds_seed, 0}, {}, mode);
      const auto pulse_bins = std::llround(config.n_t * config.window_s);
      print_estimate(estimate, pulse_bins, derived.pulse_blank_span, derived);
      nb_avg = estimate.nb_avg;
    } else {
      std::printf("nb_avg:            %.6f (override)\n", nb_avg);
    }

    const SensitivityResult result = compute_ds({ds_n_g, n_0, nb_avg});
    std::printf("n_g:               %.1f\n", ds_n_g);
    std::printf("n_0:               %.1f\n", n_0);
    std::printf("n_b = n_g*nb_avg:  %.3f\n", result.n_b);
    std::printf("n_a:               %.3f\n", result.n_a);
    std::printf("ds:                %.6f\n", result.ds);
    if (nb_opt->count() == 0) {
      const SensitivityResult published =
          compute_ds({ds_n_g, n_0, reference::kPublishedNbAvg});
      std::printf("ds with published nb_avg %.3f: %.6f (published ds %.3f)\n",
                  reference::kPublishedNbAvg, published.ds,
                  reference::kPublishedDs);
    }
  });

  // ---- point -----------------------------------------------------------
  auto* point_cmd = app.add_subcommand(
      "point", "simulate one operating point and report n_p and DE");
  PointFlags point_flags;
  add_point_flags(point_cmd, point_flags, true);
  std::string point_ds = "paper";
  std::int64_t point_trials = 20;
  std::uint64_t point_seed = env_seed;
  int point_threads = 1;
  std::string point_out;
  point_cmd->add_option("--ds", point_ds, "sensitivity: number, \"paper\", or \"simulated\"");
  point_cmd->add_option("--trials", point_trials, "Monte Carlo trials");
  point_cmd->add_option("--seed", point_seed, "master seed");
  point_cmd->add_option("--threads", point_threads, "worker threads (0 = all cores)");
  point_cmd->add_option("--out", point_out, "write the point as CSV here");
  point_cmd->callback([&] {
    SweepSpec spec;
    spec.mu = point_flags.mu;
    spec.b_l = point_flags.b_l;
    spec.window_s = point_flags.window_s;
    spec.n_t_values = {point_flags.n_t};
    spec.n_tr_values = {point_flags.n_tr};
    spec.ds = parse_ds_choice(point_ds);
    spec.trials = point_trials;
    spec.master_seed = point_seed;
    spec.threads = point_threads;
    const auto points = run_sweep(spec);
    const auto& p = points.front();
    const DerivedCounts derived = derive_counts(p.config);
    std::printf("n_0=%lld n_bin=%lld n_dist=%lld pulse_blank_span=%lld\n",
                static_cast<long long>(derived.n_0),
                static_cast<long long>(derived.n_bin),
                static_cast<long long>(derived.n_dist),
                static_cast<long long>(derived.pulse_blank_span));
    std::printf("n_p = %.1f +/- %.1f (%lld trials)\n", p.n_p_mean,
                p.n_p_std_error, static_cast<long long>(p.trials));
    std::printf("ds  = %.6f\n", resolve_ds(spec));
    std::printf("de  = %.6f\n", p.de);
    if (!point_out.empty()) emit_csv_file(points, point_seed, point_out);
  });

  // ---- sweep -----------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "simulate a grid of operating points and emit CSV/SVG");
  std::string sweep_config_path;
  std::vector<double> sweep_n_t;
  std::vector<double> sweep_n_tr;
  double sweep_mu = reference::kDefaultMu;
  std::int64_t sweep_b_l = reference::kDefaultBlankLength;
  double sweep_window = 1.0;
  std::string sweep_ds = "paper";
  std::int64_t sweep_trials = 20;
  std::uint64_t sweep_seed = env_seed;
  int sweep_threads = 1;
  std::string sweep_out;
  std::string sweep_svg;
  sweep_cmd->add_option("--config", sweep_config_path, "JSON config file");
  auto* o_nt = sweep_cmd->add_option("--n-t", sweep_n_t, "light-pulse rates [Hz]");
  auto* o_ntr = sweep_cmd->add_option("--n-tr", sweep_n_tr, "triggering rates [Hz]");
  auto* o_mu = sweep_cmd->add_option("--mu", sweep_mu, "mean photon number per pulse");
  auto* o_bl = sweep_cmd->add_option("--b-l", sweep_b_l, "blanked gate bins");
  auto* o_win = sweep_cmd->add_option("--window", sweep_window, "observation window [s]");
  auto* o_ds = sweep_cmd->add_option("--ds", sweep_ds, "sensitivity: number, \"paper\", or \"simulated\"");
  auto* o_trials = sweep_cmd->add_option("--trials", sweep_trials, "Monte Carlo trials per point");
  auto* o_seed = sweep_cmd->add_option("--seed", sweep_seed, "master seed");
  auto* o_threads = sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0 = all cores)");
  auto* o_out = sweep_cmd->add_option("--out", sweep_out, "CSV output path");
  auto* o_svg = sweep_cmd->add_option("--svg", sweep_svg, "SVG chart output path");
  sweep_cmd->callback([&] {
    SweepSpec base;
    base.master_seed = env_seed;
    SweepSpec spec = sweep_config_path.empty()
                         ? base
                         : parse_config_file(sweep_config_path, base);
    // Flags override file values.
    if (o_nt->count()) spec.n_t_values = sweep_n_t;
    if (o_ntr->count()) spec.n_tr_values = sweep_n_tr;
    if (o_mu->count()) spec.mu = sweep_mu;
    if (o_bl->count()) spec.b_l = sweep_b_l;
    if (o_win->count()) spec.window_s = sweep_window;
    if (o_ds->count()) spec.ds = parse_ds_choice(sweep_ds);
    if (o_trials->count()) spec.trials = sweep_trials;
    if (o_seed->count()) spec.master_seed = sweep_seed;
    if (o_threads->count()) spec.threads = sweep_threads;
    if (o_out->count()) spec.out_csv = sweep_out;
    if (o_svg->count()) spec.out_svg = sweep_svg;

    const auto points = run_sweep(spec);
    for (const auto& p : points)
      std::printf("n_t=%-12g n_tr=%-12g n_p=%12.1f +/- %-8.1f de=%.6f\n",
                  p.config.n_t, p.config.n_tr, p.n_p_mean, p.n_p_std_error,
                  p.de);
    if (!spec.out_csv.empty())
      emit_csv_file(points, spec.master_seed, spec.out_csv);
    if (!spec.out_svg.empty()) emit_svg_file(points, spec.out_svg);
  });

  // ---- table1 ----------------------------------------------------------
  auto* table_cmd = app.add_subcommand(
      "table1", "reproduce the published efficiency table and print deviations");
  std::int64_t table_trials = 20;
  std::uint64_t table_seed = env_seed;
  int table_threads = 1;
  std::string table_out;
  std::string table_svg;
  table_cmd->add_option("--trials", table_trials, "Monte Carlo trials per row");
  table_cmd->add_option("--seed", table_seed, "master seed");
  table_cmd->add_option("--threads", table_threads, "worker threads (0 = all cores)");
  table_cmd->add_option("--out", table_out, "CSV output path");
  table_cmd->add_option("--svg", table_svg, "SVG chart output path");
  table_cmd->callback([&] {
    const Table1Report report =
        reproduce_table1(table_trials, table_seed, table_threads);
    std::fputs(format_table1(report).c_str(), stdout);
    if (!table_out.empty()) emit_table1_csv_file(report, table_out);
    if (!table_svg.empty()) {
      std::vector<EfficiencyPoint> points;
      for (const auto& row : report.rows) points.push_back(row.point);
      emit_svg_file(points, table_svg);
    }
  });

  // ---- timeline --------------------------------------------------------
  auto* tl_cmd = app.add_subcommand(
      "timeline", "dump a generated occupancy timeline (index,count per line)");
  std::int64_t tl_bins = 0;
  std::int64_t tl_photons = 0;
  std::uint64_t tl_seed = env_seed;
  std::uint64_t tl_stream = 0;
  std::string tl_out;
  tl_cmd->add_option("--n-bin", tl_bins, "number of time-bins")->required();
  tl_cmd->add_option("--n-photons", tl_photons, "photons to place")->required();
  tl_cmd->add_option("--seed", tl_seed, "master seed");
  tl_cmd->add_option("--stream", tl_stream, "stream index");
  tl_cmd->add_option("--out", tl_out, "output path (default stdout)");
  tl_cmd->callback([&] {
    const auto timeline =
        generate_timeline(tl_bins, tl_photons, SeedSpec{tl_seed, tl_stream});
    if (tl_out.empty()) {
      write_occupied_dump(timeline, std::cout);
    } else {
      std::ofstream out(tl_out, std::ios::binary);
      if (!out) throw IoError("cannot open for writing: " + tl_out);
      write_occupied_dump(timeline, out);
      out.flush();
      if (!out) throw IoError("write failed: " + tl_out);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dbsim::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
