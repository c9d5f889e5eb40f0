#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tunnelph/errors.hpp"
#include "tunnelph/fixtures.hpp"
#include "tunnelph/pipeline.hpp"

namespace py = pybind11;
using namespace tunnelph;

namespace {

PointCloud make_cloud(const std::vector<std::tuple<std::string, double, double>>& rows) {
  std::vector<BlockPoint> pts;
  pts.reserve(rows.size());
  for (const auto& [id, x, y] : rows) pts.push_back({id, x, y});
  return PointCloud(std::move(pts));
}

Barcode make_barcode(const std::vector<std::tuple<int, double, double>>& pairs, double max_filtration) {
  std::vector<PersistencePair> out;
  for (const auto& [d, b, e] : pairs) out.push_back({d, b, e});
  return Barcode(std::move(out), max_filtration);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Persistence barcodes, barcode features, LS-SVM and blast loads for tunnel damage tracking";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  (void)input_error;

  m.attr("DEFAULT_MAX_FILTRATION") = kDefaultMaxFiltration;
  m.attr("DEFAULT_WARNING_THRESHOLD") = kDefaultWarningThreshold;

  py::class_<PersistencePair>(m, "PersistencePair")
      .def_readonly("dim", &PersistencePair::dim)
      .def_readonly("birth", &PersistencePair::birth)
      .def_readonly("death", &PersistencePair::death)
      .def_property_readonly("length", &PersistencePair::length)
      .def_property_readonly("censored", &PersistencePair::censored)
      .def("__iter__", [](const PersistencePair& p) {
        return py::iter(py::make_tuple(p.dim, p.birth, p.death));
      })
      .def("__repr__", [](const PersistencePair& p) {
        return "PersistencePair(" + std::to_string(p.dim) + ", " + format_double(p.birth) + ", " +
               format_double(p.death) + ")";
      });

  py::class_<Barcode>(m, "Barcode")
      .def(py::init(&make_barcode), py::arg("pairs"), py::arg("max_filtration") = kDefaultMaxFiltration)
      .def_property_readonly("pairs", [](const Barcode& b) {
        return std::vector<PersistencePair>(b.pairs().begin(), b.pairs().end());
      })
      .def_property_readonly("max_filtration", &Barcode::max_filtration)
      .def("bars", &Barcode::bars, py::arg("dim"))
      .def("__len__", [](const Barcode& b) { return b.pairs().size(); })
      .def("__eq__", [](const Barcode& a, const Barcode& b) { return a == b; });

  m.def(
      "persistence",
      [](const std::vector<std::tuple<std::string, double, double>>& points, double max_filtration,
         bool keep_zero_persistence) {
        const auto f = build_vr_filtration(compute_distance_matrix(make_cloud(points)), max_filtration);
        return compute_persistence(f, {keep_zero_persistence});
      },
      py::arg("points"), py::arg("max_filtration") = kDefaultMaxFiltration,
      py::arg("keep_zero_persistence") = false,
      "Vietoris-Rips H0/H1 barcode of labeled points [(block_id, x, y), ...].");

  m.def(
      "betti_numbers",
      [](const Barcode& b, double scale) {
        const auto r = betti_numbers(b, scale);
        return py::make_tuple(r.b0, r.b1);
      },
      py::arg("barcode"), py::arg("scale"));
  m.def(
      "persistent_betti",
      [](const Barcode& b, double scale, double p) {
        const auto r = persistent_betti(b, scale, p);
        return py::make_tuple(r.b0, r.b1);
      },
      py::arg("barcode"), py::arg("scale"), py::arg("p"));

  m.def(
      "extract_features",
      [](const Barcode& b, double max_filtration, double long_bar_threshold) {
        const auto f = extract_features(b, max_filtration, {long_bar_threshold});
        return std::vector<double>(f.values.begin(), f.values.end());
      },
      py::arg("barcode"), py::arg("max_filtration") = kDefaultMaxFiltration,
      py::arg("long_bar_threshold") = kDefaultLongBarThreshold, "Features f1..f14 as a list.");
  m.def(
      "feature_category", [](std::size_t i) { return std::string(to_string(feature_category(i))); },
      py::arg("index"));

  py::class_<LssvmModel>(m, "LssvmModel")
      .def_property_readonly("task", [](const LssvmModel& mdl) { return std::string(to_string(mdl.task)); })
      .def_readonly("gamma", &LssvmModel::gamma)
      .def_readonly("alphas", &LssvmModel::alphas)
      .def_readonly("bias", &LssvmModel::bias)
      .def_readonly("condition_estimate", &LssvmModel::condition_estimate)
      .def("predict", [](const LssvmModel& mdl, const std::vector<double>& x) { return predict(mdl, x); })
      .def("to_json", &model_to_json)
      .def_static("from_json", &model_from_json);

  auto kernel = [](const std::string& kind, double sigma) {
    return kernel_kind_from_string(kind) == KernelKind::Linear ? KernelSpec::linear() : KernelSpec::rbf(sigma);
  };
  m.def(
      "train_regressor",
      [kernel](const std::vector<std::vector<double>>& x, const std::vector<double>& y, double gamma,
               const std::string& kind, double sigma, bool standardize) {
        TrainOptions o;
        o.standardize = standardize;
        return train_regressor({x, y}, gamma, kernel(kind, sigma), o);
      },
      py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("kernel") = "rbf", py::arg("sigma") = 1.0,
      py::arg("standardize") = false);
  m.def(
      "train_classifier",
      [kernel](const std::vector<std::vector<double>>& x, const std::vector<double>& y, double gamma,
               const std::string& kind, double sigma, bool standardize) {
        TrainOptions o;
        o.standardize = standardize;
        return train_classifier({x, y}, gamma, kernel(kind, sigma), o);
      },
      py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("kernel") = "rbf", py::arg("sigma") = 1.0,
      py::arg("standardize") = false);
  m.def(
      "kkt_residual",
      [](const LssvmModel& mdl, const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
        return kkt_residual(mdl, {x, y});
      },
      py::arg("model"), py::arg("x"), py::arg("y"));

  m.def(
      "paper_load",
      [] {
        const auto l = paper_preset();
        return py::dict(py::arg("hole_peak") = l.hole_peak, py::arg("uniform_peak") = l.uniform_peak,
                        py::arg("spacing_ratio") = l.spacing_ratio);
      },
      "Peak values of the calibrated preset load, in Pa.");
  m.def(
      "load_profile",
      [](double peak, long step_us) {
        LoadProfile p;
        p.peak_pressure = peak;
        std::vector<std::pair<double, double>> out;
        for (const auto& s : sample_profile(p, step_us)) out.emplace_back(s.time, s.pressure);
        return out;
      },
      py::arg("peak_pressure"), py::arg("step_us") = 500, "Triangular time history as [(t, P), ...].");

  m.def("fixture_series", [](int feature) {
    const auto& s = fixtures().table6.feature(feature);
    return std::vector<double>(s.predicted.begin(), s.predicted.end());
  });

  m.def(
      "evaluate_warning",
      [](const std::vector<double>& f8, double threshold, double ratio) {
        std::vector<int> events(f8.size());
        for (std::size_t i = 0; i < events.size(); ++i) events[i] = static_cast<int>(i);
        const auto r = evaluate_warning(events, f8, {threshold, ratio});
        return py::dict(py::arg("triggered") = r.triggered, py::arg("trigger_event") = r.trigger_event,
                        py::arg("criterion") = std::string(to_string(r.criterion)),
                        py::arg("at_threshold_event") = r.at_threshold_event,
                        py::arg("rapid_change_event") = r.rapid_change_event);
      },
      py::arg("f8"), py::arg("threshold") = kDefaultWarningThreshold, py::arg("rapid_ratio") = kDefaultRapidRatio);

  m.def(
      "run_all",
      [](const std::filesystem::path& out_dir, std::uint64_t seed, const std::string& mode) {
        RunAllConfig cfg;
        cfg.scenario.seed = seed;
        if (mode == "fixture") cfg.mode = RunMode::Fixture;
        else if (mode != "synthetic") throw InputError("mode must be 'synthetic' or 'fixture'");
        const auto r = cmd_run_all(cfg, out_dir);
        std::vector<std::string> files;
        for (const auto& f : r.files) files.push_back(f.generic_string());
        return files;
      },
      py::arg("out_dir"), py::arg("seed") = ScenarioConfig{}.seed, py::arg("mode") = "synthetic",
      "Writes the full report bundle and returns the relative paths written.");
}
