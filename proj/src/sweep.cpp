#include "dbsim/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dbsim/sensitivity.hpp"
#include "dbsim/svg.hpp"

namespace dbsim {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

DsChoice parse_ds_choice(std::string_view text) {
  if (text == "paper") return {DsChoice::Kind::published, reference::kPublishedDs};
  if (text == "simulated") return {DsChoice::Kind::simulated, 0.0};
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument(
        "ds: expected a number, \"paper\", or \"simulated\", got \"" +
        std::string(text) + "\"");
  return {DsChoice::Kind::value, value};
}

SweepSpec parse_config_file(const std::string& path, SweepSpec base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config " + path + ": top level must be an object");

  SweepSpec spec = std::move(base);
  const auto rate_list = [&](const nlohmann::json& node, const char* key) {
    if (!node.is_array())
      throw std::invalid_argument("config " + std::string(key) +
                                  ": expected an array of rates");
    std::vector<double> values;
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (!node[i].is_number())
        throw std::invalid_argument("config " + std::string(key) + "[" +
                                    std::to_string(i) + "]: expected a number");
      values.push_back(node[i].get<double>());
    }
    return values;
  };
  const auto number = [&](const nlohmann::json& node, const char* key) {
    if (!node.is_number())
      throw std::invalid_argument("config " + std::string(key) +
                                  ": expected a number");
    return node.get<double>();
  };
  const auto integer = [&](const nlohmann::json& node, const char* key) {
    if (!node.is_number_integer())
      throw std::invalid_argument("config " + std::string(key) +
                                  ": expected an integer");
    return node.get<std::int64_t>();
  };

  for (const auto& [key, value] : doc.items()) {
    if (key == "n_t_values") spec.n_t_values = rate_list(value, "n_t_values");
    else if (key == "n_tr_values") spec.n_tr_values = rate_list(value, "n_tr_values");
    else if (key == "mu") spec.mu = number(value, "mu");
    else if (key == "b_l") spec.b_l = integer(value, "b_l");
    else if (key == "window_s") spec.window_s = number(value, "window_s");
    else if (key == "trials") spec.trials = integer(value, "trials");
    else if (key == "threads") spec.threads = static_cast<int>(integer(value, "threads"));
    else if (key == "seed") {
      if (!value.is_number_unsigned())
        throw std::invalid_argument("config seed: expected a non-negative integer");
      spec.master_seed = value.get<std::uint64_t>();
    } else if (key == "ds") {
      if (value.is_number())
        spec.ds = DsChoice{DsChoice::Kind::value, value.get<double>()};
      else if (value.is_string())
        spec.ds = parse_ds_choice(value.get<std::string>());
      else
        throw std::invalid_argument("config ds: expected a number or string");
    } else if (key == "out") {
      if (!value.is_string())
        throw std::invalid_argument("config out: expected a string path");
      spec.out_csv = value.get<std::string>();
    } else if (key == "svg") {
      if (!value.is_string())
        throw std::invalid_argument("config svg: expected a string path");
      spec.out_svg = value.get<std::string>();
    } else {
      throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
  }
  return spec;
}

void validate(const SweepSpec& spec) {
  if (spec.n_t_values.empty())
    throw std::invalid_argument("n_t_values: must not be empty");
  if (spec.n_tr_values.empty())
    throw std::invalid_argument("n_tr_values: must not be empty");
  for (std::size_t i = 0; i < spec.n_t_values.size(); ++i)
    if (!(spec.n_t_values[i] > 0.0))
      throw std::invalid_argument("n_t_values[" + std::to_string(i) +
                                  "]: rate must be positive");
  for (std::size_t i = 0; i < spec.n_tr_values.size(); ++i)
    if (!(spec.n_tr_values[i] > 0.0))
      throw std::invalid_argument("n_tr_values[" + std::to_string(i) +
                                  "]: rate must be positive");
  if (spec.trials < 1) throw std::invalid_argument("trials: must be at least 1");
  if (spec.ds.kind == DsChoice::Kind::value &&
      (spec.ds.value < 0.0 || spec.ds.value > 1.0))
    throw std::invalid_argument("ds: must lie in [0, 1]");

  for (const double n_tr : spec.n_tr_values) {
    for (const double n_t : spec.n_t_values) {
      const DetectorConfig config{n_t, n_tr, spec.mu, spec.b_l, spec.window_s};
      try {
        dbsim::validate(config);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("pair (n_t=" + fmt("%g", n_t) +
                                    ", n_tr=" + fmt("%g", n_tr) +
                                    "): " + e.what());
      }
    }
  }
}

double resolve_ds(const SweepSpec& spec) {
  switch (spec.ds.kind) {
    case DsChoice::Kind::value:
      return spec.ds.value;
    case DsChoice::Kind::published:
      return reference::kPublishedDs;
    case DsChoice::Kind::simulated: {
      const DetectorConfig config = reference::characterization_config();
      const BlankingEstimate estimate = estimate_nb_avg(
          config, SeedSpec{spec.master_seed, kSensitivityStream});
      const auto n_0 = static_cast<double>(derive_counts(config).n_0);
      return compute_ds({reference::kManufacturerNg, n_0, estimate.nb_avg}).ds;
    }
  }
  throw std::logic_error("unhandled ds choice");
}

std::vector<EfficiencyPoint> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const double ds = resolve_ds(spec);

  auto n_t_values = spec.n_t_values;
  auto n_tr_values = spec.n_tr_values;
  std::sort(n_t_values.begin(), n_t_values.end());
  n_t_values.erase(std::unique(n_t_values.begin(), n_t_values.end()),
                   n_t_values.end());
  std::sort(n_tr_values.begin(), n_tr_values.end());
  n_tr_values.erase(std::unique(n_tr_values.begin(), n_tr_values.end()),
                    n_tr_values.end());

  std::vector<EfficiencyPoint> points;
  std::uint64_t stream = 0;
  for (const double n_tr : n_tr_values) {
    for (const double n_t : n_t_values) {
      const DetectorConfig config{n_t, n_tr, spec.mu, spec.b_l, spec.window_s};
      try {
        points.push_back(simulate_point(config, ds, spec.trials,
                                        SeedSpec{spec.master_seed, stream},
                                        spec.threads));
      } catch (const std::exception& e) {
        throw std::runtime_error("pair (n_t=" + fmt("%g", n_t) +
                                 ", n_tr=" + fmt("%g", n_tr) +
                                 "): " + e.what());
      }
      ++stream;
    }
  }
  return points;
}

void emit_csv(std::span<const EfficiencyPoint> points,
              std::uint64_t master_seed, std::ostream& out) {
  out << "n_t,n_tr,mu,b_l,n_0,n_bin,n_dist,n_p_mean,n_p_stderr,de,trials,seed\n";
  char buf[256];
  for (const auto& p : points) {
    const DerivedCounts derived = derive_counts(p.config);
    std::snprintf(buf, sizeof buf,
                  "%lld,%lld,%g,%lld,%lld,%lld,%lld,%.4f,%.6g,%.6f,%lld,%llu\n",
                  static_cast<long long>(std::llround(p.config.n_t)),
                  static_cast<long long>(std::llround(p.config.n_tr)),
                  p.config.mu, static_cast<long long>(p.config.b_l),
                  static_cast<long long>(derived.n_0),
                  static_cast<long long>(derived.n_bin),
                  static_cast<long long>(derived.n_dist), p.n_p_mean,
                  p.n_p_std_error, p.de, static_cast<long long>(p.trials),
                  static_cast<unsigned long long>(master_seed));
    out << buf;
  }
}

void emit_csv_file(std::span<const EfficiencyPoint> points,
                   std::uint64_t master_seed, const std::string& path) {
  auto out = open_for_write(path);
  emit_csv(points, master_seed, out);
  finish_write(out, path);
}

void emit_svg(std::span<const EfficiencyPoint> points, std::ostream& out) {
  if (points.empty()) throw std::invalid_argument("no points to plot");
  std::map<double, ChartSeries> groups;
  for (const auto& p : points) {
    auto& series = groups[p.config.n_tr];
    if (series.label.empty())
      series.label = "N_TR = " + format_rate(p.config.n_tr);
    series.points.emplace_back(p.config.n_t, p.de);
  }
  std::vector<ChartSeries> series;
  series.reserve(groups.size());
  for (auto& [n_tr, s] : groups) series.push_back(std::move(s));
  write_log_line_chart(series, "light-pulse rate N_T (Hz, log scale)",
                       "detection efficiency DE", out);
}

void emit_svg_file(std::span<const EfficiencyPoint> points,
                   const std::string& path) {
  auto out = open_for_write(path);
  emit_svg(points, out);
  finish_write(out, path);
}

Table1Report reproduce_table1(std::int64_t trials, std::uint64_t master_seed,
                              int threads) {
  Table1Report report;
  report.ds = reference::kPublishedDs;
  report.trials = trials;
  report.master_seed = master_seed;

  std::uint64_t stream = 0;
  for (const auto& published : reference::published_efficiency_rows()) {
    Table1Row row;
    row.published = published;
    const DetectorConfig config{published.n_t, published.n_tr,
                                reference::kDefaultMu,
                                reference::kDefaultBlankLength, 1.0};
    row.derived = derive_counts(config);
    row.point = simulate_point(config, report.ds, trials,
                               SeedSpec{master_seed, stream}, threads);
    row.n_p_rel_dev = (row.point.n_p_mean - published.n_p) / published.n_p;
    row.de_rel_dev = (row.point.de - published.de) / published.de;
    report.rows.push_back(row);
    ++stream;
  }
  return report;
}

std::string format_table1(const Table1Report& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "reproduced efficiency table: ds=%.3f, trials=%lld, seed=%llu\n",
                report.ds, static_cast<long long>(report.trials),
                static_cast<unsigned long long>(report.master_seed));
  out << buf;
  std::snprintf(buf, sizeof buf, "%-11s %-9s %9s %9s %9s %11s %9s %8s %8s %7s %8s\n",
                "n_t", "n_tr", "n_0", "n_bin", "n_dist", "n_p_sim", "n_p_ref",
                "dev", "de_sim", "de_ref", "dev");
  out << buf;
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf,
                  "%-11s %-9s %9lld %9lld %9lld %11.1f %9.0f %+7.2f%% %8.4f %7.3f %+7.2f%%\n",
                  format_rate(row.point.config.n_t).c_str(),
                  format_rate(row.point.config.n_tr).c_str(),
                  static_cast<long long>(row.derived.n_0),
                  static_cast<long long>(row.derived.n_bin),
                  static_cast<long long>(row.derived.n_dist),
                  row.point.n_p_mean, row.published.n_p,
                  100.0 * row.n_p_rel_dev, row.point.de, row.published.de,
                  100.0 * row.de_rel_dev);
    out << buf;
  }
  return out.str();
}

void emit_table1_csv(const Table1Report& report, std::ostream& out) {
  out << "n_t,n_tr,n_0,n_bin,n_dist,n_p_sim,de_sim,n_p_ref,de_ref,"
         "n_p_rel_dev,de_rel_dev\n";
  char buf[256];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf,
                  "%lld,%lld,%lld,%lld,%lld,%.4f,%.6f,%.0f,%.3f,%.6f,%.6f\n",
                  static_cast<long long>(std::llround(row.point.config.n_t)),
                  static_cast<long long>(std::llround(row.point.config.n_tr)),
                  static_cast<long long>(row.derived.n_0),
                  static_cast<long long>(row.derived.n_bin),
                  static_cast<long long>(row.derived.n_dist),
                  row.point.n_p_mean, row.point.de, row.published.n_p,
                  row.published.de, row.n_p_rel_dev, row.de_rel_dev);
    out << buf;
  }
}

void emit_table1_csv_file(const Table1Report& report, const std::string& path) {
  auto out = open_for_write(path);
  emit_table1_csv(report, out);
  finish_write(out, path);
}

std::string format_rate(double hz) {
  char buf[64];
  if (hz >= 1e6) std::snprintf(buf, sizeof buf, "%g MHz", hz / 1e6);
  else if (hz >= 1e3) std::snprintf(buf, sizeof buf, "%g kHz", hz / 1e3);
  else std::snprintf(buf, sizeof buf, "%g Hz", hz);
  return buf;
}

}  // namespace dbsim
