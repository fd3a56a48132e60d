#include "sdra/modal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "sdra/errors.hpp"
#include "sdra/specfun.hpp"

namespace sdra {

namespace {

void check_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

SectorGeometry::SectorGeometry(double radius, double height, double sector_angle, double eps_r)
    : radius_(radius), height_(height), sector_angle_(sector_angle), eps_r_(eps_r) {
  check_positive(radius, "radius");
  check_positive(height, "height");
  check_positive(sector_angle, "sector angle");
  if (sector_angle > 2.0 * std::numbers::pi) {
    throw DomainError("sector angle must not exceed 2 pi, got " + std::to_string(sector_angle));
  }
  if (!std::isfinite(eps_r) || eps_r < 1.0) {
    throw DomainError("relative permittivity must be >= 1, got " + std::to_string(eps_r));
  }
}

SectorGeometry SectorGeometry::quarter(double radius, double height, double eps_r) {
  return {radius, height, 0.5 * std::numbers::pi, eps_r};
}

SectorGeometry SectorGeometry::with_radius(double radius) const {
  return {radius, height_, sector_angle_, eps_r_};
}
SectorGeometry SectorGeometry::with_height(double height) const {
  return {radius_, height, sector_angle_, eps_r_};
}
SectorGeometry SectorGeometry::with_sector_angle(double sector_angle) const {
  return {radius_, height_, sector_angle, eps_r_};
}
SectorGeometry SectorGeometry::with_eps_r(double eps_r) const {
  return {radius_, height_, sector_angle_, eps_r};
}

std::string to_string(ModeFamily family) { return family == ModeFamily::TE ? "TE" : "EH"; }

ModeFamily parse_family(const std::string& text) {
  if (text == "TE" || text == "te") return ModeFamily::TE;
  if (text == "EH" || text == "eh") return ModeFamily::EH;
  throw DomainError("unknown mode family '" + text + "' (expected TE or EH)");
}

ModeSpec::ModeSpec(ModeFamily family, OrderSource source, int n, int p)
    : family_(family), source_(source), n_(n), p_(p) {
  if (n < 1) throw DomainError("radial index n must be >= 1, got " + std::to_string(n));
  if (p < 0) throw DomainError("axial index p must be >= 0, got " + std::to_string(p));
}

ModeSpec ModeSpec::from_index(ModeFamily family, int m, int n, int p) {
  if (m < 0) throw DomainError("azimuthal index m must be >= 0, got " + std::to_string(m));
  return {family, OrderFromIndex{m}, n, p};
}

ModeSpec ModeSpec::with_order(ModeFamily family, double v, int n, int p) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError("azimuthal order v must be finite and >= 0, got " + std::to_string(v));
  }
  return {family, ExplicitOrder{v}, n, p};
}

std::optional<int> ModeSpec::m() const noexcept {
  if (const auto* idx = std::get_if<OrderFromIndex>(&source_)) return idx->m;
  return std::nullopt;
}

double ModeSpec::order(const SectorGeometry& geom) const {
  if (const auto* idx = std::get_if<OrderFromIndex>(&source_)) {
    return azimuthal_order(idx->m, geom.sector_angle());
  }
  return std::get<ExplicitOrder>(source_).v;
}

std::string ModeSpec::label() const {
  std::string out = to_string(family_) + "(";
  if (const auto* idx = std::get_if<OrderFromIndex>(&source_)) {
    out += "m=" + std::to_string(idx->m);
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "v=%g", std::get<ExplicitOrder>(source_).v);
    out += buf;
  }
  return out + ",n=" + std::to_string(n_) + ",p=" + std::to_string(p_) + ")";
}

double azimuthal_order(int m, double sector_angle) {
  if (!(sector_angle > 0.0)) {
    throw DomainError("sector angle must be positive, got " + std::to_string(sector_angle));
  }
  if (m < 0) throw DomainError("azimuthal index m must be >= 0, got " + std::to_string(m));
  return m * std::numbers::pi / sector_angle;
}

Wavenumbers wavenumbers(const SectorGeometry& geom, const ModeSpec& mode) {
  const double v = mode.order(geom);
  const double a = geom.radius();
  Wavenumbers k{};
  k.k_r = specfun::bessel_zero(v, mode.n()) / a;
  k.k_phi = v / a;
  k.k_z = mode.p() * std::numbers::pi / geom.height();
  k.k = std::sqrt(k.k_r * k.k_r + k.k_phi * k.k_phi + k.k_z * k.k_z);
  return k;
}

double resonant_frequency(const SectorGeometry& geom, const ModeSpec& mode) {
  const Wavenumbers k = wavenumbers(geom, mode);
  return kSpeedOfLight * k.k / (2.0 * std::numbers::pi * std::sqrt(geom.eps_r()));
}

std::vector<ModeFrequency> enumerate_modes(const SectorGeometry& geom, const ModeSearch& search) {
  if (!(search.f_max > 0.0)) throw DomainError("f_max must be positive");
  if (search.m_max < 1 || search.n_max < 1 || search.p_max < 0) {
    throw DomainError("mode bounds must satisfy m_max >= 1, n_max >= 1, p_max >= 0");
  }

  std::vector<ModeSpec> candidates;
  for (int m = 0; m <= search.m_max; ++m) {
    for (int n = 1; n <= search.n_max; ++n) {
      for (int p = 0; p <= search.p_max; ++p) {
        candidates.push_back(ModeSpec::from_index(search.derived_family, m, n, p));
      }
    }
  }
  for (double v : search.explicit_orders) {
    for (int n = 1; n <= search.n_max; ++n) {
      for (int p = 0; p <= search.p_max; ++p) {
        candidates.push_back(ModeSpec::with_order(search.explicit_family, v, n, p));
      }
    }
  }

  std::vector<ModeFrequency> out;
  for (const auto& mode : candidates) {
    const double f = resonant_frequency(geom, mode);
    if (f <= search.f_max) out.push_back({mode, mode.order(geom), f});
  }
  std::sort(out.begin(), out.end(), [](const ModeFrequency& x, const ModeFrequency& y) {
    return std::make_tuple(x.frequency, x.v, x.mode.n(), x.mode.p(), !x.mode.derived()) <
           std::make_tuple(y.frequency, y.v, y.mode.n(), y.mode.p(), !y.mode.derived());
  });
  return out;
}

}  // namespace sdra
