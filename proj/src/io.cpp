#include "tunnelph/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tunnelph/errors.hpp"

namespace tunnelph {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
  // only the literal tokens; from_chars would also take "infinity", "INF", "nan"
  if (token == "inf" || token == "+inf") return kInfinity;
  if (token == "-inf") return -kInfinity;
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (token.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw InputError("not a number: '" + std::string(token) + "'");
  }
  return v;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Iterates non-blank lines, skipping `#` comments, keeping 1-based line numbers.
class LineReader {
public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next() {
    while (std::getline(in_, raw_)) {
      ++number_;
      const std::string_view t = trim(raw_);
      if (t.empty()) continue;
      if (t.front() == '#') {
        comments_.emplace_back(trim(t.substr(1)));
        continue;
      }
      line_ = t;
      return true;
    }
    return false;
  }

  std::string_view line() const { return line_; }
  std::size_t number() const { return number_; }
  const std::string& source() const { return source_; }
  const std::vector<std::string>& comments() const { return comments_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, number_, what); }

  double number_at(std::string_view token, const char* column) const {
    try {
      return parse_double(token);
    } catch (const InputError&) {
      fail(std::string("column '") + column + "': not a number: '" + std::string(token) + "'");
    }
  }

private:
  std::istream& in_;
  std::string source_;
  std::string raw_;
  std::string_view line_;
  std::size_t number_ = 0;
  std::vector<std::string> comments_;
};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

PointCloud parse_snapshot(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  if (!reader.next()) throw ParseError(source, 1, "missing header 'block_id,x,y'");
  if (split_csv(reader.line()) != std::vector<std::string_view>{"block_id", "x", "y"}) {
    reader.fail("expected header 'block_id,x,y'");
  }
  std::vector<BlockPoint> points;
  std::set<std::string, std::less<>> seen;
  while (reader.next()) {
    const auto cells = split_csv(reader.line());
    if (cells.size() != 3) reader.fail("expected 3 columns, found " + std::to_string(cells.size()));
    if (cells[0].empty()) reader.fail("empty block_id");
    if (!seen.emplace(cells[0]).second) reader.fail("duplicate block_id '" + std::string(cells[0]) + "'");
    BlockPoint p{std::string(cells[0]), reader.number_at(cells[1], "x"), reader.number_at(cells[2], "y")};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) reader.fail("non-finite coordinate");
    points.push_back(std::move(p));
  }
  if (points.empty()) throw InputError(source + ": snapshot has no data rows");
  return PointCloud(std::move(points));
}

PointCloud load_snapshot(const fs::path& path) {
  auto in = open_input(path);
  return parse_snapshot(in, path.string());
}

void write_snapshot(const PointCloud& pc, std::ostream& out) {
  out << "block_id,x,y\n";
  for (const auto& p : pc.points()) {
    out << p.block_id << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

void write_snapshot(const PointCloud& pc, const fs::path& path) {
  auto out = open_output(path);
  write_snapshot(pc, out);
}

void check_block_consistency(const std::vector<PointCloud>& clouds, const std::vector<int>& events) {
  if (clouds.empty()) return;
  auto ids = [](const PointCloud& pc) {
    std::set<std::string> s;
    for (const auto& p : pc.points()) s.insert(p.block_id);
    return s;
  };
  const auto reference = ids(clouds.front());
  for (std::size_t i = 1; i < clouds.size(); ++i) {
    const auto current = ids(clouds[i]);
    if (current == reference) continue;
    std::ostringstream msg;
    msg << "event " << events.at(i) << ": block set differs from event " << events.front() << " ("
        << current.size() << " blocks vs " << reference.size() << ")";
    for (const auto& id : reference) {
      if (!current.count(id)) {
        msg << "; missing '" << id << "'";
        break;
      }
    }
    for (const auto& id : current) {
      if (!reference.count(id)) {
        msg << "; unexpected '" << id << "'";
        break;
      }
    }
    throw ConsistencyError(msg.str());
  }
}

SnapshotSequence load_sequence(const fs::path& manifest_path) {
  json doc;
  try {
    doc = json::parse(read_text(manifest_path));
  } catch (const json::exception& e) {
    throw ParseError(manifest_path.string(), 0, std::string("invalid manifest JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("events") || !doc["events"].is_array()) {
    throw ParseError(manifest_path.string(), 0, "manifest needs an 'events' array");
  }
  SnapshotSequence seq;
  seq.site = doc.value("site", std::string());
  seq.units = doc.value("units", std::string("m"));
  if (doc["events"].empty()) throw InputError(manifest_path.string() + ": manifest lists no events");

  const fs::path base = manifest_path.parent_path();
  int expected = 0;
  for (const auto& entry : doc["events"]) {
    if (!entry.is_object() || !entry.contains("event") || !entry.contains("path") ||
        !entry["event"].is_number_integer() || !entry["path"].is_string()) {
      throw ParseError(manifest_path.string(), 0, "each event needs integer 'event' and string 'path'");
    }
    const int event = entry["event"].get<int>();
    if (event != expected) {
      throw InputError(manifest_path.string() + ": event indices must run 0,1,2,... without gaps; " +
                       (event > expected ? "missing event " + std::to_string(expected)
                                         : "event " + std::to_string(event) + " out of order"));
    }
    fs::path p = entry["path"].get<std::string>();
    if (p.is_relative()) p = base / p;
    seq.events.push_back(event);
    seq.paths.push_back(p);
    seq.clouds.push_back(load_snapshot(p));
    ++expected;
  }
  check_block_consistency(seq.clouds, seq.events);
  return seq;
}

std::string event_file_name(int event) {
  std::ostringstream name;
  name << "event_" << std::setw(3) << std::setfill('0') << event << ".csv";
  return name.str();
}

fs::path write_sequence(const std::vector<PointCloud>& clouds, const fs::path& dir,
                        const std::string& site) {
  json doc;
  doc["site"] = site;
  doc["units"] = "m";
  doc["events"] = json::array();
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    const auto rel = fs::path("snapshots") / event_file_name(static_cast<int>(i));
    write_snapshot(clouds[i], dir / rel);
    doc["events"].push_back({{"event", static_cast<int>(i)}, {"path", rel.generic_string()}});
  }
  const fs::path manifest = dir / "manifest.json";
  write_text(manifest, doc.dump(2) + "\n");
  return manifest;
}

Barcode parse_barcode(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  if (!reader.next()) throw ParseError(source, 1, "missing header 'dim,birth,death'");
  if (split_csv(reader.line()) != std::vector<std::string_view>{"dim", "birth", "death"}) {
    reader.fail("expected header 'dim,birth,death'");
  }
  double max_filtration = kDefaultMaxFiltration;
  for (const auto& c : reader.comments()) {
    constexpr std::string_view key = "max_filtration=";
    if (c.rfind(key, 0) == 0) max_filtration = parse_double(trim(std::string_view(c).substr(key.size())));
  }
  std::vector<PersistencePair> pairs;
  while (reader.next()) {
    const auto cells = split_csv(reader.line());
    if (cells.size() != 3) reader.fail("expected 3 columns, found " + std::to_string(cells.size()));
    PersistencePair p;
    if (cells[0] == "0") p.dim = 0;
    else if (cells[0] == "1") p.dim = 1;
    else reader.fail("dim must be 0 or 1, found '" + std::string(cells[0]) + "'");
    p.birth = reader.number_at(cells[1], "birth");
    p.death = reader.number_at(cells[2], "death");
    if (!std::isfinite(p.birth) || p.birth < 0.0) reader.fail("birth must be finite and non-negative");
    if (p.death < p.birth) reader.fail("death < birth");
    pairs.push_back(p);
  }
  try {
    return Barcode(std::move(pairs), max_filtration);
  } catch (const InputError& e) {
    throw ParseError(source, 0, e.what());
  }
}

Barcode read_barcode(const fs::path& path) {
  auto in = open_input(path);
  return parse_barcode(in, path.string());
}

void write_barcode(const Barcode& b, std::ostream& out) {
  out << "# max_filtration=" << format_double(b.max_filtration()) << '\n';
  out << "dim,birth,death\n";
  for (const auto& p : b.pairs()) {
    out << p.dim << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
  }
}

void write_barcode(const Barcode& b, const fs::path& path) {
  auto out = open_output(path);
  write_barcode(b, out);
}

std::vector<double> FeatureTable::column(std::size_t index) const {
  if (index < 1 || index > kFeatureCount) {
    throw InputError("feature index " + std::to_string(index) + " is outside 1..14");
  }
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[index]);
  return out;
}

namespace {

std::vector<std::string> feature_header() {
  std::vector<std::string> h{"event"};
  for (std::size_t i = 1; i <= kFeatureCount; ++i) h.push_back("f" + std::to_string(i));
  return h;
}

}  // namespace

FeatureTable parse_features(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  const auto header = feature_header();
  if (!reader.next()) throw ParseError(source, 1, "missing header 'event,f1,...,f14'");
  const auto cells = split_csv(reader.line());
  if (!std::equal(cells.begin(), cells.end(), header.begin(), header.end())) {
    reader.fail("expected header 'event,f1,...,f14'");
  }
  FeatureTable table;
  while (reader.next()) {
    const auto row = split_csv(reader.line());
    if (row.size() != header.size()) {
      reader.fail("expected " + std::to_string(header.size()) + " columns, found " + std::to_string(row.size()));
    }
    int event = 0;
    const auto res = std::from_chars(row[0].data(), row[0].data() + row[0].size(), event);
    if (res.ec != std::errc() || res.ptr != row[0].data() + row[0].size() || event < 0) {
      reader.fail("event must be a non-negative integer");
    }
    if (!table.events.empty() && event <= table.events.back()) reader.fail("events must increase");
    FeatureVector fv;
    for (std::size_t i = 1; i <= kFeatureCount; ++i) {
      fv[i] = reader.number_at(row[i], header[i].c_str());
      if (!std::isfinite(fv[i])) reader.fail("feature values must be finite");
    }
    table.events.push_back(event);
    table.rows.push_back(fv);
  }
  if (table.rows.empty()) throw InputError(source + ": features file has no data rows");
  return table;
}

FeatureTable read_features(const fs::path& path) {
  auto in = open_input(path);
  return parse_features(in, path.string());
}

void write_features(const FeatureTable& table, std::ostream& out) {
  const auto header = feature_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << table.events.at(r);
    for (std::size_t i = 1; i <= kFeatureCount; ++i) out << ',' << format_double(table.rows[r][i]);
    out << '\n';
  }
}

void write_features(const FeatureTable& table, const fs::path& path) {
  auto out = open_output(path);
  write_features(table, out);
}

std::string model_to_json(const LssvmModel& model) {
  json doc;
  doc["task"] = std::string(to_string(model.task));
  doc["kernel"] = {{"kind", std::string(to_string(model.kernel.kind))}, {"sigma", model.kernel.sigma}};
  doc["gamma"] = model.gamma;
  doc["standardization"] = {{"mean", model.scaling.mean}, {"scale", model.scaling.scale}};
  doc["alphas"] = model.alphas;
  doc["bias"] = model.bias;
  doc["inputs"] = model.inputs;
  doc["targets"] = model.targets;
  doc["condition_estimate"] = model.condition_estimate;
  return doc.dump(2) + "\n";
}

LssvmModel model_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    LssvmModel m;
    m.task = task_from_string(doc.at("task").get<std::string>());
    m.kernel.kind = kernel_kind_from_string(doc.at("kernel").at("kind").get<std::string>());
    m.kernel.sigma = doc.at("kernel").at("sigma").get<double>();
    m.gamma = doc.at("gamma").get<double>();
    m.scaling.mean = doc.at("standardization").at("mean").get<std::vector<double>>();
    m.scaling.scale = doc.at("standardization").at("scale").get<std::vector<double>>();
    m.alphas = doc.at("alphas").get<std::vector<double>>();
    m.bias = doc.at("bias").get<double>();
    m.inputs = doc.at("inputs").get<std::vector<std::vector<double>>>();
    m.targets = doc.at("targets").get<std::vector<double>>();
    m.condition_estimate = doc.value("condition_estimate", 1.0);
    if (m.alphas.size() != m.inputs.size() || m.targets.size() != m.inputs.size()) {
      throw InputError("model arrays differ in length");
    }
    m.kernel.validate();
    return m;
  } catch (const json::exception& e) {
    throw ParseError("<model>", 0, std::string("invalid model JSON: ") + e.what());
  }
}

void write_model(const LssvmModel& model, const fs::path& path) { write_text(path, model_to_json(model)); }

LssvmModel read_model(const fs::path& path) { return model_from_json(read_text(path)); }

void write_text(const fs::path& path, std::string_view text) {
  auto out = open_output(path);
  out << text;
}

std::string read_text(const fs::path& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tunnelph
