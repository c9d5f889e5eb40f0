#include "tunnelph/blast_load.hpp"

#include <cmath>
#include <string>

#include "tunnelph/errors.hpp"

namespace tunnelph {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void BlastConfig::validate() const {
  require_positive(hole_radius, "hole_radius");
  require_positive(hole_spacing, "hole_spacing");
  require_positive(charge_density, "charge_density");
  require_positive(detonation_velocity, "detonation_velocity");
  require_positive(enlargement, "enlargement");
  require_positive(uncoupling, "uncoupling");
  if (uncoupling < 1.0) throw InputError("uncoupling coefficient must be >= 1");
}

double peak_pressure(const BlastConfig& cfg) {
  cfg.validate();
  const double v = cfg.detonation_velocity;
  return cfg.charge_density * v * v * std::pow(cfg.uncoupling, -6.0) * cfg.enlargement / 8.0;
}

double equivalent_uniform_peak(const BlastConfig& cfg, double hole_peak) {
  cfg.validate();
  return 2.0 * cfg.hole_radius / cfg.hole_spacing * hole_peak;
}

double uniform_load_direct(const BlastConfig& cfg, double shape_factor) {
  cfg.validate();
  const double v = cfg.detonation_velocity;
  return cfg.hole_radius / (4.0 * cfg.hole_spacing) * cfg.charge_density * v * v *
         std::pow(cfg.uncoupling, -6.0) * cfg.enlargement * shape_factor;
}

void LoadProfile::validate() const {
  require_positive(rise_time, "rise_time");
  require_positive(total_time, "total_time");
  require_positive(peak_pressure, "peak_pressure");
  if (!(rise_time < total_time)) throw InputError("rise_time must be shorter than total_time");
}

double load_shape(const LoadProfile& profile, double t) {
  profile.validate();
  if (std::isnan(t) || t < 0.0) throw InputError("load time must be non-negative");
  if (t >= profile.total_time) return 0.0;
  if (t <= profile.rise_time) return t / profile.rise_time;
  return (profile.total_time - t) / (profile.total_time - profile.rise_time);
}

double load_at(const LoadProfile& profile, double t) {
  return profile.peak_pressure * load_shape(profile, t);
}

BlastLoad compute_blast_load(const BlastConfig& cfg) {
  BlastLoad out;
  out.hole_peak = peak_pressure(cfg);
  out.uniform_peak = equivalent_uniform_peak(cfg, out.hole_peak);
  out.spacing_ratio = 2.0 * cfg.hole_radius / cfg.hole_spacing;
  return out;
}

BlastLoad paper_preset() {
  BlastLoad out;
  out.hole_peak = 1.5e9;
  out.spacing_ratio = 0.092;
  out.uniform_peak = out.spacing_ratio * out.hole_peak;
  return out;
}

LoadProfile preset_profile(const BlastLoad& load) {
  LoadProfile p;
  p.peak_pressure = load.uniform_peak;
  return p;
}

std::vector<LoadSample> sample_profile(const LoadProfile& profile, long step_us) {
  profile.validate();
  if (step_us <= 0) throw InputError("sampling step must be positive");
  const auto total_us = static_cast<long>(std::llround(profile.total_time * 1e6));
  std::vector<LoadSample> out;
  for (long t_us = 0; t_us <= total_us; t_us += step_us) {
    // integer microseconds keep 5 ms and 35 ms exact grid points
    const double t = static_cast<double>(t_us) / 1e6;
    out.push_back({t, load_at(profile, t)});
  }
  return out;
}

}  // namespace tunnelph
