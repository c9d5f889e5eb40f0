#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelph/features.hpp"
#include "tunnelph/lssvm.hpp"
#include "tunnelph/topology.hpp"

namespace tunnelph {

/// Shortest decimal that round-trips to the same double; "inf" / "-inf" for infinities.
std::string format_double(double v);
/// Inverse of format_double. Throws InputError on anything else.
double parse_double(std::string_view token);

// Snapshot files: CSV with header `block_id,x,y`, coordinates in meters.
PointCloud parse_snapshot(std::istream& in, const std::string& source = "<snapshot>");
PointCloud load_snapshot(const std::filesystem::path& path);
void write_snapshot(const PointCloud& pc, std::ostream& out);
void write_snapshot(const PointCloud& pc, const std::filesystem::path& path);

struct SnapshotSequence {
  std::string site;
  std::string units = "m";
  std::vector<int> events;
  std::vector<std::filesystem::path> paths;
  std::vector<PointCloud> clouds;

  std::size_t size() const noexcept { return clouds.size(); }
};

/// Reads a JSON manifest `{"site", "units", "events": [{"event", "path"}, ...]}`.
/// Relative snapshot paths resolve against the manifest's directory. Events must run
/// 0, 1, 2, ... without gaps and every snapshot must carry the same block ids.
SnapshotSequence load_sequence(const std::filesystem::path& manifest_path);

/// Writes `event_NNN.csv` snapshots under `dir/snapshots` and `dir/manifest.json`.
/// Returns the manifest path.
std::filesystem::path write_sequence(const std::vector<PointCloud>& clouds,
                                     const std::filesystem::path& dir,
                                     const std::string& site = "synthetic");

/// Throws ConsistencyError naming the first event whose block ids differ from event 0.
void check_block_consistency(const std::vector<PointCloud>& clouds, const std::vector<int>& events);

// Barcode files: `# max_filtration=F` comment, header `dim,birth,death`, `inf` for open bars.
Barcode parse_barcode(std::istream& in, const std::string& source = "<barcode>");
Barcode read_barcode(const std::filesystem::path& path);
void write_barcode(const Barcode& b, std::ostream& out);
void write_barcode(const Barcode& b, const std::filesystem::path& path);

/// Canonical file name for an event, e.g. `event_007.csv`.
std::string event_file_name(int event);

// Feature files: header `event,f1,...,f14`.
struct FeatureTable {
  std::vector<int> events;
  std::vector<FeatureVector> rows;

  /// Column of feature `index` (1..14) in row order.
  std::vector<double> column(std::size_t index) const;
};

FeatureTable parse_features(std::istream& in, const std::string& source = "<features>");
FeatureTable read_features(const std::filesystem::path& path);
void write_features(const FeatureTable& table, std::ostream& out);
void write_features(const FeatureTable& table, const std::filesystem::path& path);

// Model files: JSON with task, kernel, gamma, standardization, alphas, bias, inputs, targets.
std::string model_to_json(const LssvmModel& model);
LssvmModel model_from_json(std::string_view text);
void write_model(const LssvmModel& model, const std::filesystem::path& path);
LssvmModel read_model(const std::filesystem::path& path);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace tunnelph
