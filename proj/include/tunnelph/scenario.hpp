#pragma once

#include <cstdint>
#include <vector>

#include "tunnelph/topology.hpp"

namespace tunnelph {

/// Geometric stand-in for a blast-damage simulation: blocks on a ring around the
/// tunnel whose upper arc sinks a little further with every event.
struct ScenarioConfig {
  std::size_t n_blocks = 42;
  std::size_t n_events = 20;     // blast events; the sequence has n_events + 1 snapshots
  std::uint64_t seed = 20240;
  double ring_radius = 13.0;     // m
  double collapse_rate = 0.3;    // m per event at the crown
  double jitter = 0.05;          // m, bound on per-block noise

  void validate() const;
};

/// Snapshot 0 is the undisturbed ring. Displacements only ever grow, so each
/// upper-arc block's cumulative settlement is non-decreasing in the event index.
std::vector<PointCloud> generate_sequence(const ScenarioConfig& cfg);

}  // namespace tunnelph
