#include "tunnelph/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "tunnelph/errors.hpp"
#include "tunnelph/fixtures.hpp"

namespace tunnelph {

namespace fs = std::filesystem;
using nlohmann::json;

// ---- persistence ------------------------------------------------------------

PhResult compute_sequence_persistence(const SnapshotSequence& seq, double max_filtration,
                                      unsigned threads) {
  if (seq.size() == 0) throw InputError("snapshot sequence is empty");
  const std::size_t n = seq.size();
  PhResult out;
  out.events = seq.events;
  out.barcodes.resize(n);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const auto dm = compute_distance_matrix(seq.clouds[i]);
        out.barcodes[i] = compute_persistence(build_vr_filtration(dm, max_filtration));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const InputError& e) {
      throw InputError("event " + std::to_string(seq.events[i]) + ": " + e.what());
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto fv = extract_features(out.barcodes[i], max_filtration);
    out.summary.push_back({seq.events[i], betti_numbers(out.barcodes[i], 0.0).b0, fv[8], fv[14]});
  }
  return out;
}

void write_ph_outputs(const PhResult& ph, const fs::path& out_dir) {
  for (std::size_t i = 0; i < ph.barcodes.size(); ++i) {
    write_barcode(ph.barcodes[i], out_dir / "barcodes" / event_file_name(ph.events[i]));
  }
  std::ostringstream s;
  s << "event,beta0_at_0,f8,f14\n";
  for (const auto& r : ph.summary) {
    s << r.event << ',' << r.beta0_at_zero << ',' << format_double(r.f8) << ',' << format_double(r.f14)
      << '\n';
  }
  write_text(out_dir / "ph_summary.csv", s.str());
}

PhResult cmd_compute_ph(const fs::path& manifest, double max_filtration, const fs::path& out_dir,
                        unsigned threads) {
  const auto seq = load_sequence(manifest);
  auto ph = compute_sequence_persistence(seq, max_filtration, threads);
  write_ph_outputs(ph, out_dir);
  return ph;
}

// ---- features ---------------------------------------------------------------

FeatureTable feature_table(const std::vector<int>& events, std::span<const Barcode> barcodes,
                           double max_filtration) {
  FeatureTable t;
  t.events = events;
  t.rows = feature_series(barcodes, max_filtration);
  return t;
}

FeaturesResult cmd_features(const fs::path& barcode_dir, double max_filtration, const fs::path& out_file) {
  if (!fs::is_directory(barcode_dir)) {
    throw InputError("barcode directory '" + barcode_dir.string() + "' does not exist");
  }
  static const std::regex pattern(R"(event_(\d+)\.csv)");
  std::map<int, fs::path> found;
  for (const auto& entry : fs::directory_iterator(barcode_dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, m, pattern)) {
      found.emplace(std::stoi(m[1].str()), entry.path());
    }
  }
  if (found.empty()) throw InputError("no event_NNN.csv barcode files in '" + barcode_dir.string() + "'");

  FeaturesResult result;
  std::vector<int> events;
  std::vector<Barcode> barcodes;
  const int last = found.rbegin()->first;
  for (int e = 0; e <= last; ++e) {
    auto it = found.find(e);
    if (it == found.end()) {
      throw InputError("missing barcode file '" + (barcode_dir / event_file_name(e)).string() + "'");
    }
    barcodes.push_back(read_barcode(it->second));
    events.push_back(e);
    if (barcodes.back().max_filtration() != max_filtration) {
      result.warnings.push_back("event " + std::to_string(e) + ": barcode computed with max filtration " +
                                format_double(barcodes.back().max_filtration()) + ", extracting with " +
                                format_double(max_filtration));
    }
  }
  result.table = feature_table(events, barcodes, max_filtration);
  if (!out_file.empty()) write_features(result.table, out_file);
  return result;
}

// ---- LS-SVM experiment ------------------------------------------------------

const FeatureExperiment& ExperimentReport::feature(std::size_t index) const {
  for (const auto& f : features) {
    if (f.feature == index) return f;
  }
  throw InputError("report has no feature " + std::to_string(index));
}

FeatureExperiment run_feature_experiment(const std::vector<int>& events, const std::vector<double>& values,
                                         std::size_t feature, const ExperimentConfig& cfg) {
  if (events.size() != values.size()) throw InputError("events and values differ in length");
  TrainingSet train;
  std::vector<std::size_t> test;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i] <= cfg.split) {
      train.inputs.push_back({static_cast<double>(events[i])});
      train.targets.push_back(values[i]);
    } else {
      test.push_back(i);
    }
  }
  if (train.size() < 3) {
    throw InputError("split " + std::to_string(cfg.split) + " leaves " + std::to_string(train.size()) +
                     " training events; need at least 3");
  }
  if (test.empty()) {
    throw InputError("split " + std::to_string(cfg.split) + " leaves no test events");
  }

  TrainOptions opts;
  opts.standardize = true;
  const auto search = loo_grid_search(train, cfg.sigmas, cfg.gammas, opts);
  const auto model = train_regressor(train, search.gamma, KernelSpec::rbf(search.sigma), opts);

  FeatureExperiment fe;
  fe.feature = feature;
  fe.sigma = search.sigma;
  fe.gamma = search.gamma;
  fe.loo_mse = search.loo_mse;
  for (std::size_t i : test) {
    const double x = static_cast<double>(events[i]);
    const double y = predict(model, std::span<const double>(&x, 1));
    const double j = values[i];
    const double err = j != 0.0 ? std::abs(y - j) / std::abs(j) : (y == j ? 0.0 : kInfinity);
    fe.predictions.push_back(y);
    fe.truth.push_back(j);
    fe.relative_errors.push_back(err);
    fe.max_relative_error = std::max(fe.max_relative_error, err);
  }
  return fe;
}

namespace {

void fill_split(ExperimentReport& r, const std::vector<int>& events, int split) {
  r.split = split;
  for (int e : events) (e <= split ? r.train_events : r.test_events).push_back(e);
}

}  // namespace

ExperimentReport cmd_train_predict(const FeatureTable& table, const std::vector<std::size_t>& features,
                                   const ExperimentConfig& cfg) {
  if (features.empty()) throw InputError("no features selected");
  ExperimentReport r;
  r.source = "features";
  fill_split(r, table.events, cfg.split);
  for (std::size_t f : features) {
    r.features.push_back(run_feature_experiment(table.events, table.column(f), f, cfg));
  }
  return r;
}

ExperimentReport train_predict_fixture(const std::vector<std::size_t>& features, const ExperimentConfig& cfg) {
  if (features.empty()) throw InputError("no features selected");
  std::vector<int> events(kFixtureEvents);
  for (std::size_t i = 0; i < kFixtureEvents; ++i) events[i] = static_cast<int>(i);
  ExperimentReport r;
  r.source = "fixture:table6";
  fill_split(r, events, cfg.split);
  for (std::size_t f : features) {
    const auto& series = fixtures().table6.feature(static_cast<int>(f));
    r.features.push_back(run_feature_experiment(events, series.observed(), f, cfg));
  }
  return r;
}

std::string to_json(const ExperimentReport& r) {
  json doc;
  doc["source"] = r.source;
  doc["split"] = r.split;
  doc["train_events"] = r.train_events;
  doc["test_events"] = r.test_events;
  doc["relative_error"] = "|Y' - J| / |J|";
  doc["features"] = json::array();
  for (const auto& f : r.features) {
    doc["features"].push_back({{"feature", f.feature},
                               {"sigma", f.sigma},
                               {"gamma", f.gamma},
                               {"loo_mse", f.loo_mse},
                               {"predictions", f.predictions},
                               {"truth", f.truth},
                               {"relative_errors", f.relative_errors},
                               {"max_relative_error", f.max_relative_error}});
  }
  return doc.dump(2) + "\n";
}

// ---- early warning ----------------------------------------------------------

std::string_view to_string(WarningCriterion c) {
  switch (c) {
    case WarningCriterion::None:
      return "none";
    case WarningCriterion::Threshold:
      return "threshold";
    case WarningCriterion::RapidChange:
      return "rapid-change";
  }
  return "none";
}

WarningReport evaluate_warning(const std::vector<int>& events, const std::vector<double>& f8_series,
                               const WarningConfig& cfg) {
  if (f8_series.size() < 2) throw InputError("warning needs a series of at least 2 values");
  if (events.size() != f8_series.size()) throw InputError("events and series differ in length");
  if (!std::isfinite(cfg.threshold)) throw InputError("threshold must be finite");
  if (!(cfg.rapid_change_ratio > 0.0)) throw InputError("rapid-change ratio must be positive");

  WarningReport r;
  r.events = events;
  r.f8_series = f8_series;
  r.threshold = cfg.threshold;
  r.rapid_change_ratio = cfg.rapid_change_ratio;

  std::size_t threshold_at = f8_series.size();
  for (std::size_t i = 0; i < f8_series.size(); ++i) {
    if (f8_series[i] < cfg.threshold) {
      threshold_at = i;
      r.threshold_event = events[i];
      break;
    }
    if (f8_series[i] == cfg.threshold && !r.at_threshold_event) r.at_threshold_event = events[i];
  }

  std::size_t rapid_at = f8_series.size();
  std::vector<double> drops;
  for (std::size_t i = 1; i < f8_series.size(); ++i) {
    const double drop = f8_series[i - 1] - f8_series[i];
    if (!drops.empty()) {
      std::vector<double> sorted = drops;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t k = sorted.size();
      const double median = k % 2 ? sorted[k / 2] : (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0;
      // a flat history gives no scale to compare against
      if (median > 0.0 && drop > cfg.rapid_change_ratio * median) {
        rapid_at = i;
        r.rapid_change_event = events[i];
        break;
      }
    }
    drops.push_back(drop);
  }

  if (threshold_at <= rapid_at && r.threshold_event) {
    r.triggered = true;
    r.trigger_event = r.threshold_event;
    r.criterion = WarningCriterion::Threshold;
  } else if (r.rapid_change_event) {
    r.triggered = true;
    r.trigger_event = r.rapid_change_event;
    r.criterion = WarningCriterion::RapidChange;
  }
  return r;
}

std::string to_json(const WarningReport& r) {
  auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  json doc;
  doc["triggered"] = r.triggered;
  doc["trigger_event"] = opt(r.trigger_event);
  doc["criterion"] = std::string(to_string(r.criterion));
  doc["threshold"] = r.threshold;
  doc["rapid_change_ratio"] = r.rapid_change_ratio;
  doc["threshold_event"] = opt(r.threshold_event);
  doc["at_threshold_event"] = opt(r.at_threshold_event);
  doc["rapid_change_event"] = opt(r.rapid_change_event);
  doc["events"] = r.events;
  doc["f8_series"] = r.f8_series;
  return doc.dump(2) + "\n";
}

// ---- blast load -------------------------------------------------------------

BlastConfig blast_config_from_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    if (doc.contains("blast")) doc = doc["blast"];
    BlastConfig c;
    c.hole_radius = doc.at("hole_radius").get<double>();
    c.hole_spacing = doc.at("hole_spacing").get<double>();
    c.charge_density = doc.at("charge_density").get<double>();
    c.detonation_velocity = doc.at("detonation_velocity").get<double>();
    c.uncoupling = doc.at("uncoupling").get<double>();
    c.enlargement = doc.at("enlargement").get<double>();
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ParseError("<blast config>", 0, e.what());
  }
}

LoadCalcResult cmd_loadcalc(const std::optional<BlastConfig>& cfg, const fs::path& out_dir) {
  LoadCalcResult r;
  r.load = cfg ? compute_blast_load(*cfg) : paper_preset();
  r.profile = preset_profile(r.load);
  r.samples = sample_profile(r.profile);
  if (!out_dir.empty()) {
    std::ostringstream csv;
    csv << "t_s,pressure_pa\n";
    for (const auto& s : r.samples) csv << format_double(s.time) << ',' << format_double(s.pressure) << '\n';
    write_text(out_dir / "load_profile.csv", csv.str());
    json summary{{"source", cfg ? "config" : "preset:paper"},
                 {"hole_peak_pa", r.load.hole_peak},
                 {"spacing_ratio", r.load.spacing_ratio},
                 {"uniform_peak_pa", r.load.uniform_peak},
                 {"rise_time_s", r.profile.rise_time},
                 {"total_time_s", r.profile.total_time}};
    write_text(out_dir / "load_summary.json", summary.dump(2) + "\n");
  }
  return r;
}

// ---- end to end -------------------------------------------------------------

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("stage '") + name + "': " + e.what());
  } catch (const InputError& e) {
    throw InputError(std::string("stage '") + name + "': " + e.what());
  }
}

std::string series_csv(const char* column, const std::vector<int>& events, const std::vector<double>& values) {
  std::ostringstream s;
  s << "event," << column << '\n';
  for (std::size_t i = 0; i < events.size(); ++i) s << events[i] << ',' << format_double(values[i]) << '\n';
  return s.str();
}

}  // namespace

RunAllResult cmd_run_all(const RunAllConfig& cfg, const fs::path& out_dir) {
  RunAllResult result;
  auto emit = [&](const fs::path& rel, const std::string& text) {
    write_text(out_dir / rel, text);
    result.files.push_back(rel);
  };

  std::vector<int> events;
  std::vector<double> f8;
  std::vector<double> f14;

  if (cfg.mode == RunMode::Fixture) {
    result.experiment = stage("train-predict", [&] { return train_predict_fixture(cfg.features, cfg.experiment); });
    const auto& t6 = fixtures().table6;
    for (std::size_t i = 0; i < kFixtureEvents; ++i) events.push_back(static_cast<int>(i));
    f8.assign(t6.feature(8).predicted.begin(), t6.feature(8).predicted.end());
    f14.assign(t6.feature(14).predicted.begin(), t6.feature(14).predicted.end());
  } else {
    fs::path manifest = cfg.manifest;
    if (cfg.mode == RunMode::Synthetic) {
      manifest = stage("synth", [&] {
        const auto clouds = generate_sequence(cfg.scenario);
        return write_sequence(clouds, out_dir / "scenario");
      });
      result.files.push_back(fs::path("scenario") / "manifest.json");
    }
    const auto seq = stage("load", [&] { return load_sequence(manifest); });
    result.ph = stage("compute-ph", [&] {
      auto ph = compute_sequence_persistence(seq, cfg.max_filtration, cfg.threads);
      write_ph_outputs(ph, out_dir);
      return ph;
    });
    result.files.push_back("ph_summary.csv");
    result.features = stage("features", [&] {
      auto table = feature_table(result.ph->events, result.ph->barcodes, cfg.max_filtration);
      write_features(table, out_dir / "features.csv");
      return table;
    });
    result.files.push_back("features.csv");
    result.experiment = stage("train-predict", [&] { return cmd_train_predict(*result.features, cfg.features, cfg.experiment); });
    events = result.features->events;
    f8 = result.features->column(8);
    f14 = result.features->column(14);

    std::ostringstream intervals;
    intervals << "event,dim,birth,death\n";
    for (std::size_t i = 0; i < result.ph->barcodes.size(); ++i) {
      for (const auto& p : result.ph->barcodes[i].pairs()) {
        intervals << result.ph->events[i] << ',' << p.dim << ',' << format_double(p.birth) << ','
                  << format_double(p.death) << '\n';
      }
    }
    emit(fs::path("plots") / "barcode_intervals.csv", intervals.str());
  }

  emit("experiment_report.json", to_json(result.experiment));
  result.warning = stage("warn", [&] { return evaluate_warning(events, f8, cfg.warning); });
  emit("warning_report.json", to_json(result.warning));
  emit(fs::path("plots") / "f8_series.csv", series_csv("f8", events, f8));
  emit(fs::path("plots") / "hole_count.csv", series_csv("f14", events, f14));
  return result;
}

}  // namespace tunnelph
