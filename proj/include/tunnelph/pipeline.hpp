#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tunnelph/blast_load.hpp"
#include "tunnelph/features.hpp"
#include "tunnelph/io.hpp"
#include "tunnelph/lssvm.hpp"
#include "tunnelph/scenario.hpp"
#include "tunnelph/topology.hpp"

namespace tunnelph {

// ---- persistence over a snapshot sequence ----------------------------------

struct PhSummaryRow {
  int event = 0;
  std::size_t beta0_at_zero = 0;
  double f8 = 0.0;
  double f14 = 0.0;
};

struct PhResult {
  std::vector<int> events;
  std::vector<Barcode> barcodes;
  std::vector<PhSummaryRow> summary;
};

/// Barcodes of every snapshot. Snapshots are independent and processed on up to
/// `threads` workers (0 = hardware concurrency); output order follows the events.
PhResult compute_sequence_persistence(const SnapshotSequence& seq, double max_filtration,
                                      unsigned threads = 0);

/// Writes `barcodes/event_NNN.csv` and `ph_summary.csv` under out_dir.
PhResult cmd_compute_ph(const std::filesystem::path& manifest, double max_filtration,
                        const std::filesystem::path& out_dir, unsigned threads = 0);
void write_ph_outputs(const PhResult& ph, const std::filesystem::path& out_dir);

// ---- features ---------------------------------------------------------------

struct FeaturesResult {
  FeatureTable table;
  std::vector<std::string> warnings;
};

/// Extracts features from `event_NNN.csv` barcodes, which must cover events 0..N.
/// A barcode computed with a different max filtration produces a warning.
FeaturesResult cmd_features(const std::filesystem::path& barcode_dir, double max_filtration,
                            const std::filesystem::path& out_file);

FeatureTable feature_table(const std::vector<int>& events, std::span<const Barcode> barcodes,
                           double max_filtration);

// ---- LS-SVM experiment ------------------------------------------------------

struct ExperimentConfig {
  int split = 15;  // last training event; later events are held out
  std::vector<double> sigmas = kDefaultSigmaGrid;
  std::vector<double> gammas = kDefaultGammaGrid;
};

struct FeatureExperiment {
  std::size_t feature = 0;
  double sigma = 0.0;
  double gamma = 0.0;
  double loo_mse = 0.0;
  std::vector<double> predictions;      // Y'
  std::vector<double> truth;            // J
  std::vector<double> relative_errors;  // |Y' - J| / |J|
  double max_relative_error = 0.0;
};

struct ExperimentReport {
  std::string source;
  int split = 15;
  std::vector<int> train_events;
  std::vector<int> test_events;
  std::vector<FeatureExperiment> features;

  const FeatureExperiment& feature(std::size_t index) const;
};

/// Regresses one feature series on the standardized event index with an RBF LS-SVM,
/// hyperparameters by leave-one-out over the grids, and predicts the held-out events.
FeatureExperiment run_feature_experiment(const std::vector<int>& events, const std::vector<double>& values,
                                         std::size_t feature, const ExperimentConfig& cfg);

ExperimentReport cmd_train_predict(const FeatureTable& table, const std::vector<std::size_t>& features,
                                   const ExperimentConfig& cfg);
/// Same protocol on the bundled prediction table (features 2, 8, 13, 14 only).
ExperimentReport train_predict_fixture(const std::vector<std::size_t>& features, const ExperimentConfig& cfg);

std::string to_json(const ExperimentReport& r);

// ---- early warning ----------------------------------------------------------

inline constexpr double kDefaultWarningThreshold = 21.68;
inline constexpr double kDefaultRapidRatio = 10.0;

enum class WarningCriterion { None, Threshold, RapidChange };
std::string_view to_string(WarningCriterion c);

struct WarningConfig {
  double threshold = kDefaultWarningThreshold;
  double rapid_change_ratio = kDefaultRapidRatio;
};

struct WarningReport {
  bool triggered = false;
  std::optional<int> trigger_event;
  WarningCriterion criterion = WarningCriterion::None;
  std::optional<int> threshold_event;     // first value strictly below the threshold
  std::optional<int> at_threshold_event;  // first value exactly at the threshold, if earlier
  std::optional<int> rapid_change_event;  // first drop above ratio x median of earlier drops
  std::vector<int> events;
  std::vector<double> f8_series;
  double threshold = kDefaultWarningThreshold;
  double rapid_change_ratio = kDefaultRapidRatio;
};

WarningReport evaluate_warning(const std::vector<int>& events, const std::vector<double>& f8_series,
                               const WarningConfig& cfg = {});
std::string to_json(const WarningReport& r);

// ---- blast load -------------------------------------------------------------

struct LoadCalcResult {
  BlastLoad load;
  LoadProfile profile;
  std::vector<LoadSample> samples;
};

/// Preset when `cfg` is empty. Writes `load_profile.csv` and `load_summary.json` when
/// out_dir is non-empty.
LoadCalcResult cmd_loadcalc(const std::optional<BlastConfig>& cfg, const std::filesystem::path& out_dir);
BlastConfig blast_config_from_json(std::string_view text);

// ---- end to end -------------------------------------------------------------

enum class RunMode { Synthetic, Manifest, Fixture };

struct RunAllConfig {
  RunMode mode = RunMode::Synthetic;
  ScenarioConfig scenario;
  std::filesystem::path manifest;
  double max_filtration = kDefaultMaxFiltration;
  ExperimentConfig experiment;
  WarningConfig warning;
  std::vector<std::size_t> features = {2, 8, 13, 14};
  unsigned threads = 0;
};

struct RunAllResult {
  std::optional<PhResult> ph;
  std::optional<FeatureTable> features;
  ExperimentReport experiment;
  WarningReport warning;
  std::vector<std::filesystem::path> files;
};

/// Writes the full bundle under out_dir. Errors are rethrown prefixed with the stage.
RunAllResult cmd_run_all(const RunAllConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace tunnelph
