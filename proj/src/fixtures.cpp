#include "tunnelph/fixtures.hpp"

#include "tunnelph/errors.hpp"

namespace tunnelph {

std::vector<double> FixtureSeries::observed() const {
  std::vector<double> out(kFixtureEvents);
  for (std::size_t i = 0; i < kFixtureEvents; ++i) out[i] = computed[i].value_or(predicted[i]);
  return out;
}

const FixtureSeries& FixtureTable6::feature(int index) const {
  for (const auto& s : series) {
    if (s.feature == index) return s;
  }
  throw InputError("prediction fixture has no feature " + std::to_string(index) +
                   " (available: 2, 8, 13, 14)");
}

namespace {

FixtureSeries make_series(int feature, const std::array<double, kFixtureEvents>& y,
                          const std::array<double, 5>& j, const std::array<double, 5>& w) {
  FixtureSeries s;
  s.feature = feature;
  s.predicted = y;
  for (std::size_t k = 0; k < 5; ++k) {
    s.computed[16 + k] = j[k];
    if (w[k] >= 0.0) s.error_percent[16 + k] = w[k];
  }
  return s;
}

Fixtures build() {
  Fixtures f;
  f.table5.rows = {
      {0, 0.232, 0.208},  {1, 0.264, 0.212},  {2, 0.282, 0.249},  {3, 0.331, 0.253},
      {4, 0.389, 0.272},  {5, 0.788, 0.488},  {6, 0.924, 0.580},  {7, 1.04, 0.674},
      {8, 1.149, 0.804},  {9, 1.257, 0.908},  {10, 1.40, 1.12},   {11, 1.671, 1.292},
      {12, 1.997, 1.389}, {13, 2.14, 1.67},   {14, 2.45, 1.843},  {15, 2.688, 2.08},
      {16, 3.028, 2.121}, {17, 3.44, 2.457},  {18, 3.81, 2.65},   {19, 4.264, 2.97},
      {20, 4.758, 3.331},
  };

  constexpr double kNoError = -1.0;
  f.table6.series.push_back(make_series(
      2,
      {16.1, 16, 15.89, 15.8, 15.5, 15.4, 15.36, 15.31, 15.3, 14.56, 14.24,
       13.23, 12.85, 12.64, 12.5, 12.04, 11.6, 11.54, 11.23, 10.62, 10.2},
      {11.8, 11.7, 11.65, 11.42, 11.1}, {1.72, 1.38, 3.74, 7.53, 8.82}));
  f.table6.series.push_back(make_series(
      8,
      {21.82, 21.76, 21.75, 21.70, 21.68, 21.44, 21.12, 20.58, 19.65, 19.12, 18.64,
       18.18, 17.78, 17.56, 17.31, 16.88, 16.42, 16.31, 16.26, 16.15, 16.01},
      {16.54, 16.44, 16.40, 16.39, 16.37}, {0.73, 0.79, 0.86, 1.48, 2.25}));
  std::array<double, kFixtureEvents> blocks{};
  blocks.fill(42.0);
  f.table6.series.push_back(make_series(13, blocks, {42, 42, 42, 42, 42},
                                        {kNoError, kNoError, kNoError, kNoError, kNoError}));
  f.table6.series.push_back(make_series(
      14, {8, 11, 12, 13, 13, 14, 15, 16, 12, 13, 13, 14, 10, 14, 14, 14, 14, 11, 12, 13, 14},
      {13, 15, 13, 13, 15}, {7.14, 36.36, 8.3, 100, 6.67}));

  f.annotations = {
      "longest H1 bar: 21.82 at excavation, 21.78 after the first blast",
      "longest H1 bar drop vs excavation after blasts 4/8/12/16/20: 0.14, 2.17, 3.84, 5.4, 5.7",
      "drop after blast 5 is about 10x the drop after blast 1; change point value 21.68",
      "H1 bar count: 8 at excavation, rising to 11, then varying between 10 and 16",
      "published error column for feature 14 reads 100% at event 19 although Y = J = 13",
  };
  return f;
}

}  // namespace

const Fixtures& fixtures() {
  static const Fixtures instance = build();
  return instance;
}

}  // namespace tunnelph
