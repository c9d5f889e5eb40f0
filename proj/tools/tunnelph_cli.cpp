// tunnelph: persistence barcodes of blasted-tunnel block clouds, LS-SVM feature
// prediction and an early-warning check on the longest H1 bar.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tunnelph/errors.hpp"
#include "tunnelph/fixtures.hpp"
#include "tunnelph/pipeline.hpp"

namespace fs = std::filesystem;
using namespace tunnelph;

namespace {

enum Exit { kOk = 0, kInputError = 1, kNumericalError = 2, kWarningGate = 3 };

std::vector<double> parse_series(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string tok;
  while (std::getline(s, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty value in --series");
    out.push_back(parse_double(std::string_view(tok).substr(b, e - b + 1)));
  }
  return out;
}

void check_fixture_name(const std::string& name) {
  if (name != "table6") throw InputError("unknown fixture '" + name + "' (available: table6)");
}

void print_experiment(const ExperimentReport& r) {
  std::printf("split: train events 0-%d, test events", r.split);
  for (int e : r.test_events) std::printf(" %d", e);
  std::printf("\n");
  for (const auto& f : r.features) {
    std::printf("f%zu  sigma=%g gamma=%g loo_mse=%.6g  max_rel_err=%.4f%%\n", f.feature, f.sigma, f.gamma,
                f.loo_mse, 100.0 * f.max_relative_error);
    for (std::size_t i = 0; i < f.predictions.size(); ++i) {
      std::printf("    event %d  Y'=%.6g  J=%.6g  W'=%.4f%%\n", r.test_events[i], f.predictions[i], f.truth[i],
                  100.0 * f.relative_errors[i]);
    }
  }
}

void print_warning(const WarningReport& r) {
  if (r.triggered) {
    std::printf("warning: triggered at event %d (%s)\n", *r.trigger_event, std::string(to_string(r.criterion)).c_str());
  } else {
    std::printf("warning: not triggered\n");
  }
  if (r.at_threshold_event) std::printf("advisory: event %d sits exactly at the threshold\n", *r.at_threshold_event);
  if (r.rapid_change_event) std::printf("rapid-change criterion alone: event %d\n", *r.rapid_change_event);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tunnelph - tunnel damage tracking from persistence barcodes"};
  app.require_subcommand(1);

  std::string manifest, out_dir = "out", barcode_dir, features_file, series, fixture, config_file, preset;
  double max_filtration = kDefaultMaxFiltration;
  std::vector<std::size_t> feature_ids;
  ExperimentConfig exp;
  WarningConfig warn_cfg;
  ScenarioConfig scenario;
  unsigned threads = 0;
  bool gate = false;

  auto* ph = app.add_subcommand("compute-ph", "Barcodes for every snapshot of a sequence");
  ph->add_option("--manifest", manifest, "Sequence manifest (JSON)")->required();
  ph->add_option("--max-filtration", max_filtration, "Filtration cap F")->capture_default_str();
  ph->add_option("--out-dir", out_dir)->capture_default_str();
  ph->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();

  std::string features_out = "features.csv";
  auto* feat = app.add_subcommand("features", "Feature table from a barcode directory");
  feat->add_option("--barcode-dir", barcode_dir)->required();
  feat->add_option("--max-filtration", max_filtration)->capture_default_str();
  feat->add_option("--out", features_out, "Output CSV")->capture_default_str();

  auto* tp = app.add_subcommand("train-predict", "LS-SVM train on early events, predict the rest");
  auto* tp_src = tp->add_option("--features", features_file, "Feature table CSV");
  tp->add_option("--fixture", fixture, "Bundled prediction table (table6)")->excludes(tp_src);
  tp->add_option("--feature", feature_ids, "Feature indices 1-14 (default 2 8 13 14)");
  tp->add_option("--split", exp.split, "Last training event")->capture_default_str();
  tp->add_option("--out-dir", out_dir)->capture_default_str();

  auto* wn = app.add_subcommand("warn", "Early-warning check on the longest H1 bar series");
  auto* wn_f = wn->add_option("--features", features_file, "Feature table CSV (uses f8)");
  auto* wn_s = wn->add_option("--series", series, "Comma separated f8 values, events 0..n")->excludes(wn_f);
  wn->add_option("--fixture", fixture, "Bundled prediction table (table6)")->excludes(wn_f)->excludes(wn_s);
  wn->add_option("--threshold", warn_cfg.threshold)->capture_default_str();
  wn->add_option("--rapid-ratio", warn_cfg.rapid_change_ratio)->capture_default_str();
  wn->add_flag("--gate", gate, "Exit with status 3 when triggered");
  std::string warn_out;
  wn->add_option("--out-dir", warn_out, "Also write warning_report.json here");

  auto* lc = app.add_subcommand("loadcalc", "Blast load peak values and time history");
  auto* lc_p = lc->add_option("--preset", preset, "Calibrated preset (paper)");
  lc->add_option("--config", config_file, "Blast config JSON")->excludes(lc_p);
  lc->add_option("--out-dir", out_dir)->capture_default_str();

  auto add_scenario = [&](CLI::App* sc) {
    sc->add_option("--seed", scenario.seed)->capture_default_str();
    sc->add_option("--blocks", scenario.n_blocks)->capture_default_str();
    sc->add_option("--events", scenario.n_events)->capture_default_str();
    sc->add_option("--collapse-rate", scenario.collapse_rate)->capture_default_str();
    sc->add_option("--jitter", scenario.jitter)->capture_default_str();
  };
  auto* syn = app.add_subcommand("synth", "Seeded synthetic snapshot sequence");
  add_scenario(syn);
  syn->add_option("--out-dir", out_dir)->capture_default_str();

  auto* ra = app.add_subcommand("run-all", "Full bundle: barcodes, features, experiment, warning, plot data");
  add_scenario(ra);
  auto* ra_m = ra->add_option("--manifest", manifest, "Use this sequence instead of a synthetic one");
  ra->add_option("--fixture", fixture, "Skip persistence and use the bundled table (table6)")->excludes(ra_m);
  ra->add_option("--max-filtration", max_filtration)->capture_default_str();
  ra->add_option("--feature", feature_ids, "Features to predict (default 2 8 13 14)");
  ra->add_option("--split", exp.split)->capture_default_str();
  ra->add_option("--threshold", warn_cfg.threshold)->capture_default_str();
  ra->add_option("--rapid-ratio", warn_cfg.rapid_change_ratio)->capture_default_str();
  ra->add_option("--threads", threads)->capture_default_str();
  ra->add_option("--out-dir", out_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }
  if (feature_ids.empty()) feature_ids = {2, 8, 13, 14};

  try {
    if (ph->parsed()) {
      const auto r = cmd_compute_ph(manifest, max_filtration, out_dir, threads);
      std::printf("event  beta0(0)  f8  f14\n");
      for (const auto& row : r.summary) {
        std::printf("%5d  %8zu  %s  %s\n", row.event, row.beta0_at_zero, format_double(row.f8).c_str(),
                    format_double(row.f14).c_str());
      }
      std::printf("wrote %zu barcodes to %s\n", r.barcodes.size(), (fs::path(out_dir) / "barcodes").c_str());
    } else if (feat->parsed()) {
      const auto r = cmd_features(barcode_dir, max_filtration, features_out);
      for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::printf("wrote %zu rows to %s\n", r.table.rows.size(), features_out.c_str());
    } else if (tp->parsed()) {
      ExperimentReport r;
      if (!fixture.empty()) {
        check_fixture_name(fixture);
        r = train_predict_fixture(feature_ids, exp);
      } else if (!features_file.empty()) {
        r = cmd_train_predict(read_features(features_file), feature_ids, exp);
      } else {
        throw InputError("train-predict needs --features or --fixture");
      }
      write_text(fs::path(out_dir) / "experiment_report.json", to_json(r));
      print_experiment(r);
    } else if (wn->parsed()) {
      std::vector<double> f8;
      if (!fixture.empty()) {
        check_fixture_name(fixture);
        const auto& y = fixtures().table6.feature(8).predicted;
        f8.assign(y.begin(), y.end());
      } else if (!features_file.empty()) {
        f8 = read_features(features_file).column(8);
      } else if (!series.empty()) {
        f8 = parse_series(series);
      } else {
        throw InputError("warn needs --features, --series or --fixture");
      }
      std::vector<int> events(f8.size());
      for (std::size_t i = 0; i < events.size(); ++i) events[i] = static_cast<int>(i);
      const auto r = evaluate_warning(events, f8, warn_cfg);
      if (!warn_out.empty()) write_text(fs::path(warn_out) / "warning_report.json", to_json(r));
      print_warning(r);
      if (gate && r.triggered) return kWarningGate;
    } else if (lc->parsed()) {
      std::optional<BlastConfig> cfg;
      if (!config_file.empty()) {
        cfg = blast_config_from_json(read_text(config_file));
      } else if (!preset.empty() && preset != "paper") {
        throw InputError("unknown preset '" + preset + "' (available: paper)");
      }
      const auto r = cmd_loadcalc(cfg, out_dir);
      std::printf("P_m    = %s Pa\n2R/L   = %s\nP_peak = %s Pa at t = %s s\n", format_double(r.load.hole_peak).c_str(),
                  format_double(r.load.spacing_ratio).c_str(), format_double(r.load.uniform_peak).c_str(),
                  format_double(r.profile.rise_time).c_str());
      std::printf("wrote %zu samples to %s\n", r.samples.size(), (fs::path(out_dir) / "load_profile.csv").c_str());
    } else if (syn->parsed()) {
      const auto path = write_sequence(generate_sequence(scenario), out_dir);
      std::printf("wrote %s\n", path.c_str());
    } else if (ra->parsed()) {
      RunAllConfig cfg;
      cfg.scenario = scenario;
      cfg.max_filtration = max_filtration;
      cfg.experiment = exp;
      cfg.warning = warn_cfg;
      cfg.features = feature_ids;
      cfg.threads = threads;
      if (!fixture.empty()) {
        check_fixture_name(fixture);
        cfg.mode = RunMode::Fixture;
      } else if (!manifest.empty()) {
        cfg.mode = RunMode::Manifest;
        cfg.manifest = manifest;
      }
      const auto r = cmd_run_all(cfg, out_dir);
      print_experiment(r.experiment);
      print_warning(r.warning);
      for (const auto& f : r.files) std::printf("wrote %s\n", (fs::path(out_dir) / f).c_str());
    }
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumericalError;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  }
  return kOk;
}
