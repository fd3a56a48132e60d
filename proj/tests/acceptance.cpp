// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "sar_bruteforce.hpp"
#include "sdra/design.hpp"
#include "sdra/fields.hpp"
#include "sdra/modal.hpp"
#include "sdra/oracle.hpp"
#include "sdra/sar.hpp"
#include "sdra/specfun.hpp"
#include "series_oracle.hpp"

using namespace sdra;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& check) {
  Outcome r;
  try {
    r = check();
  } catch (const std::exception& e) {
    r = {false, std::string("threw: ") + e.what()};
  }
  if (!r.pass) ++failures;
  std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", id, name, r.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* pattern, auto... values) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, values...);
  return buf;
}

const SectorGeometry kReference = SectorGeometry::quarter(12e-3, 2.54e-3, 12.85);

Outcome anchor(const ModeSpec& mode, double expected) {
  const auto t0 = Clock::now();
  const double f = resonant_frequency(kReference, mode);
  const double ms = ms_since(t0);
  const double rel = std::abs(f / expected - 1.0);
  return {rel <= 5e-3 && ms < 1.0,
          fmt("f = %.6f GHz, deviation %.3f%%, %.3f ms", f / 1e9, 100 * rel, ms)};
}

}  // namespace

int main() {
  criterion(1, "TE210 frequency", [] {
    return anchor(ModeSpec::from_index(ModeFamily::TE, 1, 1, 0), 6.12e9);
  });

  criterion(2, "EH110 frequency (v = 1)", [] {
    return anchor(ModeSpec::with_order(ModeFamily::EH, 1.0, 1, 0), 4.39e9);
  });

  criterion(3, "Bessel zeros X11, X21", [] {
    const auto t0 = Clock::now();
    const double x11 = specfun::bessel_zero(1.0, 1);
    const double x21 = specfun::bessel_zero(2.0, 1);
    const double ms = ms_since(t0);
    const double o11 = static_cast<double>(testref::bisect_series_zero(1.0L, 3.5L, 4.5L));
    const double o21 = static_cast<double>(testref::bisect_series_zero(2.0L, 4.5L, 6.0L));
    const double vs_table = std::max(std::abs(x11 - 3.8317), std::abs(x21 - 5.1356));
    const double vs_oracle = std::max(std::abs(x11 - o11), std::abs(x21 - o21));
    return Outcome{vs_table <= 1e-4 && vs_oracle <= 1e-9 && ms < 10.0,
                   fmt("X11 = %.10f, X21 = %.10f, vs published %.1e, vs series %.1e, %.3f ms",
                       x11, x21, vs_table, vs_oracle, ms)};
  });

  criterion(4, "power budget", [] {
    const auto limit =
        limit_lookup(SarStandard::ieee_c95_1, AveragingMass::ten_grams, LimitKind::average);
    const double p = max_allowed_power(1.0, 53.3, limit);
    const double rel = std::abs(p / 0.0375 - 1.0);
    return Outcome{rel <= 2e-3, fmt("P_max = %.4f mW, deviation %.3f%%", p * 1e3, 100 * rel)};
  });

  criterion(5, "finite-difference convergence", [] {
    const double exact[3] = {static_cast<double>(testref::bisect_series_zero(0.0L, 2.0L, 3.0L)),
                             static_cast<double>(testref::bisect_series_zero(2.0L, 4.5L, 6.0L)),
                             static_cast<double>(testref::bisect_series_zero(0.0L, 5.0L, 6.0L))};
    const auto t0 = Clock::now();
    double err[3][3];
    const std::size_t grids[3] = {64, 128, 256};
    double last_ms = 0.0;
    for (int g = 0; g < 3; ++g) {
      const auto tg = Clock::now();
      const auto spec =
          fd_transverse_eigs(FdProblem{1.0, std::numbers::pi / 2, grids[g], grids[g]}, 3);
      last_ms = ms_since(tg);
      for (int i = 0; i < 3; ++i) err[g][i] = std::abs(spec.k_t[i] - exact[i]) / exact[i];
    }
    const double total_ms = ms_since(t0);
    double worst_final = 0.0, worst_ratio = INFINITY;
    for (int i = 0; i < 3; ++i) {
      worst_final = std::max(worst_final, err[2][i]);
      worst_ratio = std::min({worst_ratio, err[0][i] / err[1][i], err[1][i] / err[2][i]});
    }
    return Outcome{worst_final < 0.01 && worst_ratio >= 3.5 && last_ms < 60e3,
                   fmt("final error %.2e, min ratio %.2f, 256^2 %.0f ms, total %.0f ms",
                       worst_final, worst_ratio, last_ms, total_ms)};
  });

  criterion(6, "boundary conditions", [] {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int count = 0;
    for (int m = 0; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n)
        for (int p = 0; p <= 1; ++p) {
          const auto r =
              boundary_residuals(kReference, ModeSpec::from_index(ModeFamily::TE, m, n, p), 33);
          worst = std::max({worst, r.face_e_tangential, r.arc_h_phi, r.e_z});
          ++count;
        }
    const double ms = ms_since(t0);
    return Outcome{worst < 1e-9 && ms < 5e3,
                   fmt("%d modes, worst residual %.2e, %.0f ms", count, worst, ms)};
  });

  criterion(7, "Helmholtz residual refinement", [] {
    double worst = INFINITY;
    for (const auto& mode : {ModeSpec::from_index(ModeFamily::TE, 1, 1, 0),
                             ModeSpec::from_index(ModeFamily::TE, 0, 1, 0)}) {
      const double coarse = helmholtz_residual(sample_grid(kReference, mode, 17, 17, 1));
      const double fine = helmholtz_residual(sample_grid(kReference, mode, 33, 33, 1));
      worst = std::min(worst, coarse / fine);
    }
    return Outcome{worst >= 3.5, fmt("min reduction %.2f", worst)};
  });

  criterion(8, "radius sweep trend", [] {
    const SweepSpec spec{SweepParameter::radius, 8e-3, 16e-3, 17,
                         {ModeSpec::from_index(ModeFamily::TE, 1, 1, 0),
                          ModeSpec::with_order(ModeFamily::EH, 1.0, 1, 0)}};
    const auto rows = sweep(kReference, spec);
    bool decreasing = rows.size() == 34;
    for (std::size_t i = 2; i < rows.size(); ++i) {
      decreasing = decreasing && rows[i].frequency < rows[i - 2].frequency;
    }
    return Outcome{decreasing, fmt("%zu rows, TE %.3f -> %.3f GHz, EH %.3f -> %.3f GHz",
                                   rows.size(), rows[0].frequency / 1e9,
                                   rows[32].frequency / 1e9, rows[1].frequency / 1e9,
                                   rows[33].frequency / 1e9)};
  });

  criterion(9, "averaged SAR vs brute force", [] {
    const auto grid = testref::dyadic_hotspot_grid(8);
    int mismatches = 0, cases = 0;
    for (double fraction : {0.0, 0.01, 0.05, 0.2, 0.5, 1.0}) {
      const double target = std::max(fraction * grid.total_mass(), 1e-12);
      const auto fast = averaged_sar(grid, target);
      const auto slow = testref::brute_force_averaged_sar(grid, target);
      if (fast.peak_avg != slow.peak_avg || fast.center_index != slow.center_index) ++mismatches;
      ++cases;
    }
    return Outcome{mismatches == 0, fmt("%d mass targets, %d mismatches", cases, mismatches)};
  });

  criterion(10, "inverse design round trip", [] {
    std::mt19937_64 rng(20241018);
    std::uniform_real_distribution<double> radius(4e-3, 40e-3), height(0.5e-3, 10e-3),
        eps(2.0, 40.0), angle(std::numbers::pi / 6, std::numbers::pi);
    std::uniform_int_distribution<int> m_pick(0, 3), n_pick(1, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const SectorGeometry geom(radius(rng), height(rng), angle(rng), eps(rng));
      const auto mode = ModeSpec::from_index(ModeFamily::TE, m_pick(rng), n_pick(rng), 0);
      const double f = resonant_frequency(geom, mode);
      const double a = solve_radius(f, geom.with_radius(1e-3), mode, 1e-3, 100e-3);
      worst = std::max(worst, std::abs(a / geom.radius() - 1.0));
    }
    return Outcome{worst <= 1e-8, fmt("20 geometries, worst relative radius error %.2e", worst)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
