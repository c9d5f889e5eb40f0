#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tunnelph/blast_load.hpp"
#include "tunnelph/errors.hpp"

using namespace tunnelph;

namespace {

BlastConfig sample_config() {
  BlastConfig c;
  c.hole_radius = 0.021;
  c.hole_spacing = 0.5;
  c.charge_density = 1000.0;
  c.detonation_velocity = 3600.0;
  c.uncoupling = 1.2;
  c.enlargement = 8.0;
  return c;
}

BlastConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BlastConfig c;
  c.hole_radius = 0.01 + 0.05 * u(rng);
  c.hole_spacing = 0.2 + 1.5 * u(rng);
  c.charge_density = 800.0 + 600.0 * u(rng);
  c.detonation_velocity = 2000.0 + 4000.0 * u(rng);
  c.uncoupling = 1.0 + 1.5 * u(rng);
  c.enlargement = 2.0 + 10.0 * u(rng);
  return c;
}

}  // namespace

TEST(BlastLoad, PeakPressureFormula) {
  const auto c = sample_config();
  EXPECT_DOUBLE_EQ(peak_pressure(c), 1000.0 * 3600.0 * 3600.0 * std::pow(1.2, -6) * 8.0 / 8.0);
  auto doubled = c;
  doubled.uncoupling *= 2.0;
  EXPECT_NEAR(peak_pressure(c) / peak_pressure(doubled), 64.0, 1e-9);
}

TEST(BlastLoad, Validation) {
  auto c = sample_config();
  c.enlargement = 0.0;
  EXPECT_THROW(peak_pressure(c), InputError);
  c = sample_config();
  c.uncoupling = 0.9;
  EXPECT_THROW(peak_pressure(c), InputError);
  c = sample_config();
  c.hole_spacing = -1.0;
  EXPECT_THROW(peak_pressure(c), InputError);
}

TEST(BlastLoad, EquivalentUniformPeak) {
  auto c = sample_config();
  c.hole_radius = c.hole_spacing / 2.0;
  EXPECT_DOUBLE_EQ(equivalent_uniform_peak(c, 7.0e8), 7.0e8);
  c = sample_config();
  EXPECT_NEAR(equivalent_uniform_peak(c, 2.0e9), 2.0 * equivalent_uniform_peak(c, 1.0e9), 1e-3);
  auto r2 = c;
  r2.hole_radius *= 3.0;
  EXPECT_NEAR(equivalent_uniform_peak(r2, 1.0e9) / equivalent_uniform_peak(c, 1.0e9), 3.0, 1e-12);
}

TEST(BlastLoad, DirectFormEqualsComposedForm) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_config(rng);
    const double composed = equivalent_uniform_peak(c, peak_pressure(c));
    const double direct = uniform_load_direct(c);
    EXPECT_LE(std::abs(direct - composed) / composed, 1e-12);
  }
}

TEST(BlastLoad, Preset) {
  const auto p = paper_preset();
  EXPECT_EQ(p.hole_peak, 1.5e9);
  EXPECT_NEAR(p.uniform_peak, 1.38e8, 1e-6 * 1.38e8);
  const auto prof = preset_profile(p);
  EXPECT_EQ(load_at(prof, 0.005), p.uniform_peak);
}

TEST(LoadProfile, TriangularShape) {
  LoadProfile p;
  p.peak_pressure = 100.0;
  EXPECT_EQ(load_at(p, 0.0), 0.0);
  EXPECT_EQ(load_at(p, 0.005), 100.0);
  EXPECT_EQ(load_at(p, 0.035), 0.0);
  EXPECT_DOUBLE_EQ(load_at(p, 0.0025), 50.0);
  EXPECT_EQ(load_at(p, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(load_shape(p, 0.02), 0.5);
  EXPECT_THROW(load_at(p, -1e-6), InputError);
  LoadProfile bad;
  bad.peak_pressure = 1.0;
  bad.rise_time = 0.04;
  EXPECT_THROW(load_at(bad, 0.0), InputError);
}

TEST(LoadProfile, ContinuousNonNegativeSingleMaximum) {
  LoadProfile p;
  p.peak_pressure = 1.0;
  double prev = load_at(p, 0.0);
  bool descending = false;
  for (int us = 1; us <= 40000; ++us) {
    const double v = load_at(p, us * 1e-6);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(std::abs(v - prev), 1e-6 / 0.005 + 1e-12);
    if (v < prev) descending = true;
    if (descending) EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(LoadProfile, SamplingGrid) {
  const auto samples = sample_profile(preset_profile(paper_preset()));
  ASSERT_EQ(samples.size(), 71u);
  EXPECT_EQ(samples.front().time, 0.0);
  EXPECT_EQ(samples.back().time, 0.035);
  EXPECT_EQ(samples[10].time, 0.005);
  EXPECT_EQ(samples[10].pressure, paper_preset().uniform_peak);
  EXPECT_THROW(sample_profile(preset_profile(paper_preset()), 0), InputError);
}
