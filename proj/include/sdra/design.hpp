#pragma once

// Parametric sweeps of the resonance model and the inverse problem of
// finding the radius that puts a mode at a target frequency.

#include <string>
#include <vector>

#include "sdra/modal.hpp"

namespace sdra {

enum class SweepParameter { radius, height, eps_r, sector_angle };

std::string to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(const std::string& text);

/// Values in SI units (m, rad, dimensionless). start < stop, steps >= 2.
struct SweepSpec {
  SweepParameter parameter;
  double start;
  double stop;
  int steps;
  std::vector<ModeSpec> modes;
};

struct SweepRow {
  SweepParameter parameter;
  double value;
  ModeSpec mode;
  double v;
  double frequency;  // Hz
};

/// One row per (step, mode), steps outermost, uniform spacing with both
/// endpoints. A step that yields an invalid geometry throws DomainError
/// naming the step.
std::vector<SweepRow> sweep(const SectorGeometry& base, const SweepSpec& spec);

inline constexpr const char* kSweepCsvHeader = "param_name,param_value,family,v,n,p,f_hz";
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Radius at which `mode` resonates at target_frequency, by bisection on
/// the decreasing map a -> f(a) within [radius_lo, radius_hi]. The result
/// satisfies |f - target| / target <= 1e-10.
double solve_radius(double target_frequency, const SectorGeometry& base, const ModeSpec& mode,
                    double radius_lo, double radius_hi);

}  // namespace sdra
