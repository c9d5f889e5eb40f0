#include "tunnelph/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <iomanip>

#include "tunnelph/errors.hpp"

namespace tunnelph {

void ScenarioConfig::validate() const {
  if (n_blocks < 4) throw InputError("scenario needs at least 4 blocks");
  if (!(ring_radius > 0.0) || !std::isfinite(ring_radius)) throw InputError("ring_radius must be positive");
  if (!(collapse_rate >= 0.0) || !std::isfinite(collapse_rate)) {
    throw InputError("collapse_rate must be non-negative");
  }
  if (!(jitter >= 0.0) || !std::isfinite(jitter)) throw InputError("jitter must be non-negative");
}

namespace {

// mt19937_64 output is fully specified by the standard; the distributions are not.
class UnitSampler {
public:
  explicit UnitSampler(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)

private:
  std::mt19937_64 engine_;
};

std::string block_name(std::size_t i) {
  std::ostringstream s;
  s << 'B' << std::setw(2) << std::setfill('0') << i + 1;
  return s.str();
}

}  // namespace

std::vector<PointCloud> generate_sequence(const ScenarioConfig& cfg) {
  cfg.validate();
  UnitSampler rng(cfg.seed);
  const std::size_t n = cfg.n_blocks;

  std::vector<BlockPoint> base(n);
  std::vector<double> crown_weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double jx = (2.0 * rng.next() - 1.0) * cfg.jitter;
    const double jy = (2.0 * rng.next() - 1.0) * cfg.jitter;
    base[i] = {block_name(i), cfg.ring_radius * std::cos(theta) + jx,
               cfg.ring_radius * std::sin(theta) + jy};
    crown_weight[i] = std::max(0.0, std::sin(theta));
  }

  std::vector<PointCloud> out;
  out.reserve(cfg.n_events + 1);
  out.emplace_back(base);
  std::vector<double> settlement(n, 0.0);
  for (std::size_t event = 1; event <= cfg.n_events; ++event) {
    std::vector<BlockPoint> points = base;
    for (std::size_t i = 0; i < n; ++i) {
      const double noise = rng.next() * cfg.jitter;  // drawn for every block to keep streams aligned
      if (crown_weight[i] > 0.0) settlement[i] += crown_weight[i] * cfg.collapse_rate + noise;
      points[i].y -= settlement[i];
    }
    out.emplace_back(std::move(points));
  }
  return out;
}

}  // namespace tunnelph
