#include "sdra/design.hpp"

#include <cmath>
#include <limits>

#include "sdra/errors.hpp"
#include "sdra/text.hpp"

namespace sdra {

namespace {

constexpr int kBisectionCap = 200;
constexpr double kFrequencyTol = 1e-10;

SectorGeometry apply(const SectorGeometry& base, SweepParameter parameter, double value) {
  switch (parameter) {
    case SweepParameter::radius:
      return base.with_radius(value);
    case SweepParameter::height:
      return base.with_height(value);
    case SweepParameter::eps_r:
      return base.with_eps_r(value);
    case SweepParameter::sector_angle:
      return base.with_sector_angle(value);
  }
  throw DomainError("unknown sweep parameter");
}

}  // namespace

std::string to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::radius:
      return "radius";
    case SweepParameter::height:
      return "height";
    case SweepParameter::eps_r:
      return "eps_r";
    case SweepParameter::sector_angle:
      return "sector_angle";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(const std::string& text) {
  if (text == "radius") return SweepParameter::radius;
  if (text == "height") return SweepParameter::height;
  if (text == "eps_r") return SweepParameter::eps_r;
  if (text == "sector_angle") return SweepParameter::sector_angle;
  throw DomainError("unknown sweep parameter '" + text +
                    "' (expected radius, height, eps_r or sector_angle)");
}

std::vector<SweepRow> sweep(const SectorGeometry& base, const SweepSpec& spec) {
  if (spec.steps < 2) throw DomainError("sweep needs at least 2 steps");
  if (!(spec.start < spec.stop)) throw DomainError("sweep start must be below stop");
  if (spec.modes.empty()) throw DomainError("sweep needs at least one mode");

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.steps) * spec.modes.size());
  for (int i = 0; i < spec.steps; ++i) {
    const double value =
        i + 1 == spec.steps ? spec.stop
                            : spec.start + (spec.stop - spec.start) * i / (spec.steps - 1.0);
    SectorGeometry geom = base;
    try {
      geom = apply(base, spec.parameter, value);
    } catch (const DomainError& e) {
      throw DomainError("sweep step " + std::to_string(i) + " (" + to_string(spec.parameter) +
                        " = " + format_number(value) + "): " + e.what());
    }
    for (const auto& mode : spec.modes) {
      rows.push_back({spec.parameter, value, mode, mode.order(geom), resonant_frequency(geom, mode)});
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    out += to_string(row.parameter) + ',' + format_number(row.value) + ',' +
           to_string(row.mode.family()) + ',' + format_number(row.v) + ',' +
           std::to_string(row.mode.n()) + ',' + std::to_string(row.mode.p()) + ',' +
           format_number(row.frequency) + '\n';
  }
  return out;
}

double solve_radius(double target_frequency, const SectorGeometry& base, const ModeSpec& mode,
                    double radius_lo, double radius_hi) {
  if (!(target_frequency > 0.0)) throw DomainError("target frequency must be positive");
  if (!(radius_lo > 0.0) || !(radius_lo < radius_hi)) {
    throw DomainError("radius bracket must satisfy 0 < lo < hi");
  }
  const auto f_at = [&](double a) { return resonant_frequency(base.with_radius(a), mode); };
  double lo = radius_lo, hi = radius_hi;
  double f_lo = f_at(lo), f_hi = f_at(hi);
  if (!(f_lo > f_hi)) {
    throw DomainError("frequency is not decreasing across the radius bracket");
  }
  if (target_frequency > f_lo || target_frequency < f_hi) {
    throw DomainError("radius bracket [" + format_number(lo) + ", " + format_number(hi) +
                      "] m does not straddle " + format_number(target_frequency) +
                      " Hz (spans " + format_number(f_hi) + " to " + format_number(f_lo) + " Hz)");
  }
  for (int i = 0; i < kBisectionCap; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = f_at(mid);
    if (!(f <= f_lo && f >= f_hi)) {
      throw DomainError("non-monotone frequency detected at radius " + format_number(mid));
    }
    if (f > target_frequency) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
      f_hi = f;
    }
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  const double a = 0.5 * (lo + hi);
  if (std::abs(f_at(a) - target_frequency) > kFrequencyTol * target_frequency) {
    throw ConvergenceError("radius bisection ended " +
                           format_number(std::abs(f_at(a) / target_frequency - 1.0)) +
                           " away from the target frequency");
  }
  return a;
}

}  // namespace sdra
