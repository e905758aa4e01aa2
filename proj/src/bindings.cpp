#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dbsim/blanking.hpp"
#include "dbsim/config.hpp"
#include "dbsim/reference.hpp"
#include "dbsim/registration.hpp"
#include "dbsim/rng.hpp"
#include "dbsim/sensitivity.hpp"
#include "dbsim/sweep.hpp"
#include "dbsim/timeline.hpp"

namespace py = pybind11;
using namespace dbsim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gated single-photon detector blanking simulator (C++ core)";

  py::class_<DetectorConfig>(m, "DetectorConfig")
      .def(py::init([](double n_t, double n_tr, double mu, std::int64_t b_l,
                       double window_s) {
             return DetectorConfig{n_t, n_tr, mu, b_l, window_s};
           }),
           py::arg("n_t"), py::arg("n_tr"),
           py::arg("mu") = reference::kDefaultMu,
           py::arg("b_l") = reference::kDefaultBlankLength,
           py::arg("window_s") = 1.0)
      .def_readwrite("n_t", &DetectorConfig::n_t)
      .def_readwrite("n_tr", &DetectorConfig::n_tr)
      .def_readwrite("mu", &DetectorConfig::mu)
      .def_readwrite("b_l", &DetectorConfig::b_l)
      .def_readwrite("window_s", &DetectorConfig::window_s)
      .def("__repr__", [](const DetectorConfig& c) {
        std::ostringstream out;
        out << "DetectorConfig(n_t=" << c.n_t << ", n_tr=" << c.n_tr
            << ", mu=" << c.mu << ", b_l=" << c.b_l
            << ", window_s=" << c.window_s << ")";
        return out.str();
      });

  py::class_<DerivedCounts>(m, "DerivedCounts")
      .def_readonly("n_0", &DerivedCounts::n_0)
      .def_readonly("n_bin", &DerivedCounts::n_bin)
      .def_readonly("n_dist", &DerivedCounts::n_dist)
      .def_readonly("pulse_blank_span", &DerivedCounts::pulse_blank_span);

  py::class_<SeedSpec>(m, "SeedSpec")
      .def(py::init([](std::uint64_t master_seed, std::uint64_t stream_index) {
             return SeedSpec{master_seed, stream_index};
           }),
           py::arg("master_seed") = 0, py::arg("stream_index") = 0)
      .def_readwrite("master_seed", &SeedSpec::master_seed)
      .def_readwrite("stream_index", &SeedSpec::stream_index);

  py::class_<OccupancyTimeline>(m, "OccupancyTimeline")
      .def_property_readonly("n_bin", &OccupancyTimeline::n_bin)
      .def_readonly("n_photons", &OccupancyTimeline::n_photons)
      .def("count_at",
           [](const OccupancyTimeline& t, std::int64_t i) {
             if (i < 0 || i >= t.n_bin())
               throw py::index_error("bin index out of range");
             return t.counts[static_cast<std::size_t>(i)];
           },
           py::arg("index"))
      .def("counts",
           [](const OccupancyTimeline& t) { return t.counts; },
           "per-bin photon counts as a list")
      .def("occupied_indices",
           [](const OccupancyTimeline& t) { return occupied_indices(t); })
      .def("occupied_bin_count",
           [](const OccupancyTimeline& t) { return occupied_bin_count(t); });

  py::enum_<CountMode>(m, "CountMode")
      .value("pulses", CountMode::pulses)
      .value("photons", CountMode::photons);

  py::class_<BlankingEstimate>(m, "BlankingEstimate")
      .def_readonly("nb_avg", &BlankingEstimate::nb_avg)
      .def_readonly("std_error", &BlankingEstimate::std_error)
      .def_readonly("samples", &BlankingEstimate::samples)
      .def_readonly("mode", &BlankingEstimate::mode);

  py::class_<ConvergencePolicy>(m, "ConvergencePolicy")
      .def(py::init([](std::int64_t batch_size, double target_std_error,
                       std::int64_t max_samples) {
             return ConvergencePolicy{batch_size, target_std_error, max_samples};
           }),
           py::arg("batch_size") = ConvergencePolicy{}.batch_size,
           py::arg("target_std_error") = ConvergencePolicy{}.target_std_error,
           py::arg("max_samples") = ConvergencePolicy{}.max_samples)
      .def_readwrite("batch_size", &ConvergencePolicy::batch_size)
      .def_readwrite("target_std_error", &ConvergencePolicy::target_std_error)
      .def_readwrite("max_samples", &ConvergencePolicy::max_samples);

  py::class_<SensitivityResult>(m, "SensitivityResult")
      .def_readonly("ds", &SensitivityResult::ds)
      .def_readonly("n_b", &SensitivityResult::n_b)
      .def_readonly("n_a", &SensitivityResult::n_a);

  py::class_<RegistrationResult>(m, "RegistrationResult")
      .def_readonly("n_p", &RegistrationResult::n_p)
      .def_readonly("registered", &RegistrationResult::registered);

  py::class_<EfficiencyPoint>(m, "EfficiencyPoint")
      .def_readonly("config", &EfficiencyPoint::config)
      .def_readonly("n_p_mean", &EfficiencyPoint::n_p_mean)
      .def_readonly("n_p_std_error", &EfficiencyPoint::n_p_std_error)
      .def_readonly("de", &EfficiencyPoint::de)
      .def_readonly("trials", &EfficiencyPoint::trials);

  m.def("validate_config",
        [](const DetectorConfig& c) { validate(c); },
        py::arg("config"), "raises ValueError if the operating point is unusable");
  m.def("derive_counts", &derive_counts, py::arg("config"));
  m.def("pulse_blank_span", &pulse_blank_span, py::arg("b_l"), py::arg("n_t"),
        py::arg("n_tr"));
  m.def("sub_seed",
        py::overload_cast<std::uint64_t, std::uint64_t>(&sub_seed),
        py::arg("master_seed"), py::arg("stream_index"));
  m.def("generate_timeline", &generate_timeline, py::arg("n_bin"),
        py::arg("n_photons"), py::arg("seed"));
  m.def("sample_blanked_count", &sample_blanked_count, py::arg("timeline"),
        py::arg("chosen"), py::arg("span"), py::arg("mode"));
  m.def("analytic_nb_avg", &analytic_nb_avg, py::arg("n_dist"),
        py::arg("n_bin"), py::arg("span"),
        py::arg("mode") = CountMode::pulses);
  m.def("estimate_nb_avg", &estimate_nb_avg, py::arg("config"),
        py::arg("seed"), py::arg("policy") = ConvergencePolicy{},
        py::arg("mode") = CountMode::pulses,
        py::call_guard<py::gil_scoped_release>());
  m.def("compute_ds",
        [](double n_g, double n_0, double nb_avg) {
          return compute_ds({n_g, n_0, nb_avg});
        },
        py::arg("n_g"), py::arg("n_0"), py::arg("nb_avg"));
  m.def("compute_de", &compute_de, py::arg("n_p"), py::arg("ds"),
        py::arg("n_0"));
  m.def("greedy_np", &greedy_np, py::arg("timeline"), py::arg("blank_span"),
        py::arg("keep_registered") = false);
  m.def("greedy_np_counts",
        [](const std::vector<std::uint32_t>& counts, std::int64_t blank_span) {
          OccupancyTimeline t;
          t.counts = counts;
          for (const auto c : counts) t.n_photons += c;
          return greedy_np(t, blank_span, true);
        },
        py::arg("counts"), py::arg("blank_span"),
        "greedy_np over an explicit per-bin count list");
  m.def("brute_force_np", &brute_force_np, py::arg("timeline"),
        py::arg("blank_span"));
  m.def("renewal_np_rate", &renewal_np_rate, py::arg("p"),
        py::arg("blank_span"));
  m.def("simulate_point", &simulate_point, py::arg("config"), py::arg("ds"),
        py::arg("trials"), py::arg("seed"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  auto ref = m.def_submodule("reference", "published reference values");
  ref.attr("MANUFACTURER_N_G") = reference::kManufacturerNg;
  ref.attr("PUBLISHED_NB_AVG") = reference::kPublishedNbAvg;
  ref.attr("PUBLISHED_DS") = reference::kPublishedDs;
  ref.attr("DEFAULT_MU") = reference::kDefaultMu;
  ref.attr("DEFAULT_BLANK_LENGTH") = reference::kDefaultBlankLength;
  ref.def("characterization_config", &reference::characterization_config);
  ref.def("published_efficiency_rows", [] {
    py::list rows;
    for (const auto& row : reference::published_efficiency_rows())
      rows.append(py::make_tuple(row.n_t, row.n_tr, row.n_p, row.de));
    return rows;
  });

  m.attr("__version__") = "0.1.0";
}
