#include "tunnelph/features.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tunnelph/errors.hpp"

namespace tunnelph {

namespace {

double mean_or_zero(double sum, std::size_t count) {
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

FeatureVector extract_features(const Barcode& b, double max_filtration, FeatureOptions opts) {
  if (!(max_filtration > 0.0) || !std::isfinite(max_filtration)) {
    throw InputError("max_filtration must be positive and finite");
  }
  const double cap = max_filtration;
  auto clamped_length = [cap](const PersistencePair& p) { return std::min(p.death, cap) - p.birth; };

  FeatureVector fv;
  fv.max_filtration = cap;

  std::vector<double> h0_lengths;
  double h0_finite_sum = 0.0;
  std::size_t h0_finite_count = 0;
  std::size_t h0_count = 0;

  double h1_sum = 0.0;
  std::size_t h1_count = 0;
  const PersistencePair* longest = nullptr;
  double longest_length = 0.0;
  double long_min_birth = kInfinity;
  double long_mid_sum = 0.0;
  std::size_t long_count = 0;
  double beyond_sum = 0.0;
  std::size_t beyond_count = 0;

  for (const auto& p : b.pairs()) {
    const double len = clamped_length(p);
    if (p.dim == 0) {
      ++h0_count;
      h0_lengths.push_back(len);
      if (p.death < cap) {
        h0_finite_sum += len;
        ++h0_finite_count;
      }
    } else if (p.dim == 1) {
      ++h1_count;
      h1_sum += len;
      // ties go to the earliest birth
      if (longest == nullptr || len > longest_length ||
          (len == longest_length && p.birth < longest->birth)) {
        longest = &p;
        longest_length = len;
      }
      if (len > opts.long_bar_threshold) {
        long_min_birth = std::min(long_min_birth, p.birth);
        long_mid_sum += (p.birth + std::min(p.death, cap)) / 2.0;
        ++long_count;
      }
      if (p.death >= cap) {
        beyond_sum += cap - p.birth;
        ++beyond_count;
      }
    }
  }

  std::sort(h0_lengths.begin(), h0_lengths.end(), std::greater<>());
  for (double len : h0_lengths) fv[1] += len;
  fv[2] = h1_sum;
  fv[3] = h0_lengths.size() > 1 ? h0_lengths[1] : 0.0;
  fv[4] = h0_lengths.size() > 2 ? h0_lengths[2] : 0.0;
  fv[5] = h0_finite_sum;
  fv[6] = mean_or_zero(h0_finite_sum, h0_finite_count);
  fv[7] = longest ? longest->birth : 0.0;
  fv[8] = longest ? longest_length : 0.0;
  fv[9] = long_count ? long_min_birth : 0.0;
  fv[10] = mean_or_zero(long_mid_sum, long_count);
  fv[11] = beyond_sum;
  fv[12] = mean_or_zero(beyond_sum, beyond_count);
  fv[13] = static_cast<double>(h0_count);
  fv[14] = static_cast<double>(h1_count);
  return fv;
}

std::vector<FeatureVector> feature_series(std::span<const Barcode> barcodes, double max_filtration,
                                          FeatureOptions opts) {
  if (barcodes.empty()) throw InputError("feature series needs at least one barcode");
  std::vector<FeatureVector> out;
  out.reserve(barcodes.size());
  for (const auto& b : barcodes) out.push_back(extract_features(b, max_filtration, opts));
  return out;
}

FeatureCategory feature_category(std::size_t index) {
  if (index < 1 || index > kFeatureCount) {
    throw InputError("feature index " + std::to_string(index) + " is outside 1..14");
  }
  if (index <= 2 || index >= 13) return FeatureCategory::InteractionStrengthAndDistribution;
  if (index <= 6) return FeatureCategory::Physical;
  return FeatureCategory::Geometric;
}

std::string_view to_string(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::InteractionStrengthAndDistribution:
      return "interaction-strength-and-distribution";
    case FeatureCategory::Physical:
      return "physical";
    case FeatureCategory::Geometric:
      return "geometric";
  }
  return "unknown";
}

std::vector<std::size_t> category_members(FeatureCategory c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= kFeatureCount; ++i) {
    if (feature_category(i) == c) out.push_back(i);
  }
  return out;
}

}  // namespace tunnelph
