#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "tunnelph/topology.hpp"

namespace tunnelph {

inline constexpr std::size_t kFeatureCount = 14;
inline constexpr double kDefaultLongBarThreshold = 1.5;

/// The 14 barcode features, indexed 1..14.
///
///  1  sum of H0 bar lengths (infinite deaths clamped to F)
///  2  sum of H1 bar lengths (clamped)
///  3  second longest H0 bar
///  4  third longest H0 bar
///  5  sum of H0 bar lengths with death < F
///  6  mean of the bars summed in 5
///  7  birth of the longest H1 bar
///  8  length of the longest H1 bar
///  9  smallest birth among H1 bars longer than the long-bar threshold
/// 10  mean midpoint of those long H1 bars
/// 11  sum of (F - birth) over H1 bars with death >= F
/// 12  mean of the terms summed in 11
/// 13  number of H0 bars
/// 14  number of H1 bars
struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  double max_filtration = kDefaultMaxFiltration;

  double operator[](std::size_t index) const { return values.at(index - 1); }
  double& operator[](std::size_t index) { return values.at(index - 1); }

  bool operator==(const FeatureVector&) const = default;
};

struct FeatureOptions {
  /// Absolute bar length used by features 9 and 10.
  double long_bar_threshold = kDefaultLongBarThreshold;
};

FeatureVector extract_features(const Barcode& b, double max_filtration, FeatureOptions opts = {});

std::vector<FeatureVector> feature_series(std::span<const Barcode> barcodes, double max_filtration,
                                          FeatureOptions opts = {});

enum class FeatureCategory {
  InteractionStrengthAndDistribution,
  Physical,
  Geometric,
};

/// Category of feature index 1..14. Throws InputError otherwise.
FeatureCategory feature_category(std::size_t index);
std::string_view to_string(FeatureCategory c);
/// Member indices of a category, ascending.
std::vector<std::size_t> category_members(FeatureCategory c);

}  // namespace tunnelph
