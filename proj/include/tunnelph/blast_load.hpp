#pragma once

#include <vector>

namespace tunnelph {

/// Blast-hole parameters. Lengths in m, density in kg/m^3, velocity in m/s.
struct BlastConfig {
  double hole_radius = 0.0;
  double hole_spacing = 0.0;
  double charge_density = 0.0;
  double detonation_velocity = 0.0;
  double uncoupling = 1.0;   // kappa_c >= 1
  double enlargement = 0.0;  // eta

  void validate() const;
};

/// Hole-wall peak pressure P_m = rho_c D^2 kappa_c^-6 eta / 8, in Pa.
double peak_pressure(const BlastConfig& cfg);

/// Equivalent uniform surface load P = (2R / L) P_m.
double equivalent_uniform_peak(const BlastConfig& cfg, double hole_peak);

/// Single-formula uniform load (R / 4L) rho_c D^2 kappa_c^-6 eta f, with f in [0, 1].
double uniform_load_direct(const BlastConfig& cfg, double shape_factor = 1.0);

enum class LoadShape { Triangular };

/// Pressure time history. Times in s, pressure in Pa.
struct LoadProfile {
  double rise_time = 0.005;
  double total_time = 0.035;
  double peak_pressure = 0.0;
  LoadShape shape = LoadShape::Triangular;

  void validate() const;
};

/// Normalised shape f(t): 0 -> 1 over the rise, 1 -> 0 over the decay, 0 afterwards.
double load_shape(const LoadProfile& profile, double t);

/// P(t) = peak * f(t). Throws InputError for negative t.
double load_at(const LoadProfile& profile, double t);

/// Peak values of a load case, bypassing the unpublished material constants when preset.
struct BlastLoad {
  double hole_peak = 0.0;     // P_m
  double uniform_peak = 0.0;  // P applied at the model surface
  double spacing_ratio = 0.0; // 2R / L
};

BlastLoad compute_blast_load(const BlastConfig& cfg);

/// P_m = 1.5e9 Pa and 2R/L = 0.092, giving a surface peak of 1.38e8 Pa.
BlastLoad paper_preset();

/// Rise and duration of the preset load: 5 ms rise, 35 ms total.
LoadProfile preset_profile(const BlastLoad& load);

struct LoadSample {
  double time = 0.0;
  double pressure = 0.0;
};

/// Samples [0, total_time] on a uniform grid of `step_us` microseconds.
std::vector<LoadSample> sample_profile(const LoadProfile& profile, long step_us = 500);

}  // namespace tunnelph
