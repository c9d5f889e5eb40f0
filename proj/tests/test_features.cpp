#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tunnelph/errors.hpp"
#include "tunnelph/features.hpp"

using namespace tunnelph;

namespace {

Barcode hand_case() {
  return Barcode({{0, 0, kInfinity}, {0, 0, 3}, {0, 0, 2}, {1, 2, 4}, {1, 1, 1.8}}, 10.0);
}

Barcode random_barcode(std::mt19937_64& rng, double F) {
  std::uniform_real_distribution<double> u(0.0, F);
  std::uniform_int_distribution<int> count(0, 8);
  std::vector<PersistencePair> pairs{{0, 0.0, kInfinity}};
  for (int i = count(rng); i > 0; --i) pairs.push_back({0, 0.0, u(rng)});
  for (int i = count(rng); i > 0; --i) {
    const double b = u(rng);
    const double d = u(rng) < 0.2 * F ? kInfinity : b + u(rng) * (F - b) / F;
    pairs.push_back({1, b, d});
  }
  return Barcode(pairs, F);
}

}  // namespace

TEST(Features, HandComputedCase) {
  const auto f = extract_features(hand_case(), 10.0);
  const std::array<double, 14> expect{15, 2.8, 3, 2, 5, 2.5, 2, 2, 2, 3, 0, 0, 3, 2};
  for (std::size_t i = 1; i <= kFeatureCount; ++i) EXPECT_DOUBLE_EQ(f[i], expect[i - 1]) << "f" << i;
}

TEST(Features, SingleComponent) {
  const auto f = extract_features(Barcode({{0, 0, kInfinity}}, 12.0), 12.0);
  EXPECT_EQ(f[1], 12.0);
  EXPECT_EQ(f[13], 1.0);
  for (std::size_t i : {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14}) EXPECT_EQ(f[i], 0.0) << "f" << i;
}

TEST(Features, ShortH1BarsGiveNoLongBarFeatures) {
  const auto f = extract_features(Barcode({{0, 0, kInfinity}, {1, 3, 4}, {1, 5, 6.5}}, 10.0), 10.0);
  EXPECT_EQ(f[9], 0.0);
  EXPECT_EQ(f[10], 0.0);
  EXPECT_EQ(f[14], 2.0);
}

TEST(Features, CensoredH1Bars) {
  const auto f = extract_features(Barcode({{0, 0, kInfinity}, {1, 4, kInfinity}, {1, 7, kInfinity}}, 10.0), 10.0);
  EXPECT_EQ(f[2], 9.0);
  EXPECT_EQ(f[8], 6.0);
  EXPECT_EQ(f[7], 4.0);
  EXPECT_EQ(f[11], 9.0);
  EXPECT_EQ(f[12], 4.5);
}

TEST(Features, LongestBarTieGoesToEarliestBirth) {
  const auto f = extract_features(Barcode({{1, 5, 7}, {1, 2, 4}, {1, 3, 5}}, 10.0), 10.0);
  EXPECT_EQ(f[7], 2.0);
  EXPECT_EQ(f[8], 2.0);
}

TEST(Features, InvariantsOnRandomBarcodes) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto b = random_barcode(rng, 20.0);
    const auto f = extract_features(b, 20.0);
    for (double v : f.values) EXPECT_TRUE(std::isfinite(v));
    EXPECT_LE(f[5], f[1]);
    EXPECT_GE(f[3], f[4]);
    EXPECT_GE(f[4], 0.0);
    EXPECT_EQ(f[13], static_cast<double>(b.bars(0).size()));
    EXPECT_EQ(f[14], static_cast<double>(b.bars(1).size()));
    double longest = 0.0;
    for (const auto& p : b.bars(1)) longest = std::max(longest, std::min(p.death, 20.0) - p.birth);
    EXPECT_EQ(f[8], longest);
  }
}

TEST(Features, PermutationInvariant) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 50; ++i) {
    const auto b = random_barcode(rng, 15.0);
    auto pairs = std::vector<PersistencePair>(b.pairs().begin(), b.pairs().end());
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const auto a = extract_features(b, 15.0);
    const auto s = extract_features(Barcode(pairs, 15.0), 15.0);
    for (std::size_t k = 1; k <= kFeatureCount; ++k) EXPECT_NEAR(a[k], s[k], 1e-12) << "f" << k;
  }
}

TEST(Features, ScaleEquivariance) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double F = 20.0;
    const auto b = random_barcode(rng, F);
    const double s = scale(rng);
    std::vector<PersistencePair> scaled;
    for (const auto& p : b.pairs()) scaled.push_back({p.dim, p.birth * s, p.death * s});
    const auto a = extract_features(b, F);
    const auto c = extract_features(Barcode(scaled, F * s), F * s);
    for (std::size_t k = 1; k <= 12; ++k) {
      if (k == 9 || k == 10) continue;  // absolute long-bar threshold
      EXPECT_NEAR(c[k], s * a[k], 1e-9 * (1.0 + std::abs(s * a[k]))) << "f" << k;
    }
    EXPECT_EQ(c[13], a[13]);
    EXPECT_EQ(c[14], a[14]);
  }
}

TEST(Features, SeriesPreservesOrder) {
  const std::vector<Barcode> bs(3, hand_case());
  const auto rows = feature_series(bs, 10.0);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], rows[2]);
  EXPECT_THROW(feature_series(std::vector<Barcode>{}, 10.0), InputError);
  const std::vector<Barcode> no_h1(4, Barcode({{0, 0, kInfinity}}, 10.0));
  for (const auto& r : feature_series(no_h1, 10.0)) EXPECT_EQ(r[8], 0.0);
}

TEST(FeatureCategory, MatchesPartition) {
  EXPECT_EQ(feature_category(1), FeatureCategory::InteractionStrengthAndDistribution);
  EXPECT_EQ(feature_category(4), FeatureCategory::Physical);
  EXPECT_EQ(feature_category(8), FeatureCategory::Geometric);
  EXPECT_THROW(feature_category(0), InputError);
  EXPECT_THROW(feature_category(15), InputError);
  EXPECT_EQ(category_members(FeatureCategory::InteractionStrengthAndDistribution),
            (std::vector<std::size_t>{1, 2, 13, 14}));
  EXPECT_EQ(category_members(FeatureCategory::Physical), (std::vector<std::size_t>{3, 4, 5, 6}));
  EXPECT_EQ(category_members(FeatureCategory::Geometric), (std::vector<std::size_t>{7, 8, 9, 10, 11, 12}));
  std::vector<int> seen(15, 0);
  for (auto c : {FeatureCategory::InteractionStrengthAndDistribution, FeatureCategory::Physical,
                 FeatureCategory::Geometric})
    for (auto i : category_members(c)) ++seen[i];
  for (std::size_t i = 1; i <= 14; ++i) EXPECT_EQ(seen[i], 1);
}
