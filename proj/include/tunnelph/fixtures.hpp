#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace tunnelph {

inline constexpr std::size_t kFixtureEvents = 21;

/// Tunnel displacement (m) after each blast event, event 0 = excavation only.
struct FixtureTable5 {
  struct Row {
    int explosions = 0;
    double max_displacement = 0.0;
    double upper_collapse_displacement = 0.0;
  };
  std::vector<Row> rows;
};

/// One feature column of the published prediction table. `predicted` is the SVM
/// output Y for every event; `computed` (J) and `error_percent` (W) are present
/// only where published.
struct FixtureSeries {
  int feature = 0;
  std::array<double, kFixtureEvents> predicted{};
  std::array<std::optional<double>, kFixtureEvents> computed{};
  std::array<std::optional<double>, kFixtureEvents> error_percent{};

  /// Observed series used for training/testing: Y where J is absent, J otherwise.
  std::vector<double> observed() const;
};

struct FixtureTable6 {
  std::vector<FixtureSeries> series;  // features 2, 8, 13, 14

  const FixtureSeries& feature(int index) const;
};

struct Fixtures {
  FixtureTable5 table5;
  FixtureTable6 table6;
  /// Narrative values that disagree slightly with the tables, kept for reference.
  std::vector<std::string_view> annotations;
};

const Fixtures& fixtures();

}  // namespace tunnelph
