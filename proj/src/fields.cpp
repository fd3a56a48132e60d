#include "sdra/fields.hpp"

#include <algorithm>
#include <cmath>

#include "sdra/errors.hpp"
#include "sdra/modal_io.hpp"
#include "sdra/specfun.hpp"
#include "sdra/text.hpp"

namespace sdra {

namespace {

constexpr Complex kJ{0.0, 1.0};
constexpr double kDomainSlack = 1e-12;

// Uniform node with exact endpoints.
double node(double extent, std::size_t i, std::size_t count) {
  if (count == 1 || i == 0) return 0.0;
  if (i + 1 == count) return extent;
  return extent * static_cast<double>(i) / static_cast<double>(count - 1);
}

}  // namespace

FieldEvaluator::FieldEvaluator(const SectorGeometry& geom, const ModeSpec& mode)
    : geom_(geom),
      mode_(mode),
      v_(mode.order(geom)),
      k_(sdra::wavenumbers(geom, mode)),
      omega_(2.0 * std::numbers::pi * resonant_frequency(geom, mode)) {}

void FieldEvaluator::check_domain(const CylPoint& p) const {
  const auto inside = [](double x, double hi) {
    return std::isfinite(x) && x >= -kDomainSlack * hi && x <= hi * (1.0 + kDomainSlack);
  };
  if (!inside(p.r, geom_.radius()) || !inside(p.phi, geom_.sector_angle()) ||
      !inside(p.z, geom_.height())) {
    throw DomainError("point (r=" + format_number(p.r) + ", phi=" + format_number(p.phi) +
                      ", z=" + format_number(p.z) + ") lies outside the resonator");
  }
}

FieldSample FieldEvaluator::at(const CylPoint& point, double amplitude) const {
  check_domain(point);
  const double r = std::max(point.r, 0.0);
  const double k_r = k_.k_r;
  const double x = k_r * r;
  const specfun::BesselOrder order(v_);

  const double bessel = specfun::bessel_j(order, x);
  // v J_v(k_r r) / r and (k_r r) J_v'(k_r r), with their axis limits.
  double v_bessel_over_r = 0.0;
  double x_bessel_prime = 0.0;
  if (r > 0.0) {
    v_bessel_over_r = v_ * bessel / r;
    x_bessel_prime = x * specfun::bessel_j_prime(order, x);
  } else if (v_ == 1.0) {
    v_bessel_over_r = 0.5 * k_r;
  } else if (v_ > 0.0 && v_ < 1.0) {
    throw DomainError("field on the axis is unbounded for azimuthal order 0 < v < 1 (v=" +
                      format_number(v_) + ")");
  }

  const double c_phi = std::cos(v_ * point.phi);
  const double s_phi = std::sin(v_ * point.phi);
  const double c_z = std::cos(k_.k_z * point.z);
  const double wmu = omega_ * kVacuumPermeability / (k_r * k_r);
  const double kz = k_.k_z / (k_r * k_r);

  FieldSample s{};
  s.at = point;
  s.h_z = amplitude * bessel * c_phi * c_z;
  s.e_r = kJ * (amplitude * wmu * v_bessel_over_r * s_phi * c_z);
  s.e_phi = kJ * (amplitude * wmu * x_bessel_prime * c_phi * c_z);
  s.e_z = 0.0;
  s.h_r = -kJ * (amplitude * kz * x_bessel_prime * c_phi * c_z);
  s.h_phi = kJ * (amplitude * kz * v_bessel_over_r * s_phi * c_z);
  return s;
}

Complex FieldEvaluator::dhz_dz(const CylPoint& point, double amplitude) const {
  check_domain(point);
  const double bessel = specfun::bessel_j(v_, k_.k_r * std::max(point.r, 0.0));
  return -amplitude * k_.k_z * bessel * std::cos(v_ * point.phi) * std::sin(k_.k_z * point.z);
}

FieldSample field_at(const SectorGeometry& geom, const ModeSpec& mode, const CylPoint& point,
                     double amplitude) {
  return FieldEvaluator(geom, mode).at(point, amplitude);
}

FieldGrid::FieldGrid(SectorGeometry geom, ModeSpec mode, std::size_t n_r, std::size_t n_phi,
                     std::size_t n_z, double scale, std::vector<FieldSample> samples)
    : geom_(geom),
      mode_(mode),
      n_r_(n_r),
      n_phi_(n_phi),
      n_z_(n_z),
      scale_(scale),
      samples_(std::move(samples)) {
  if (samples_.size() != n_r * n_phi * n_z) {
    throw DomainError("field grid holds " + std::to_string(samples_.size()) +
                      " samples, shape requires " + std::to_string(n_r * n_phi * n_z));
  }
}

FieldGrid sample_grid(const SectorGeometry& geom, const ModeSpec& mode, std::size_t n_r,
                      std::size_t n_phi, std::size_t n_z) {
  if (n_r < 2 || n_phi < 2) throw DomainError("grid needs at least 2 nodes along r and phi");
  if (n_z < 1 || (n_z == 1 && mode.p() != 0)) {
    throw DomainError("grid needs at least 2 nodes along z (1 is allowed only for p = 0)");
  }
  const FieldEvaluator eval(geom, mode);
  std::vector<FieldSample> samples;
  samples.reserve(n_r * n_phi * n_z);
  double peak = 0.0;
  for (std::size_t iz = 0; iz < n_z; ++iz) {
    for (std::size_t ip = 0; ip < n_phi; ++ip) {
      for (std::size_t ir = 0; ir < n_r; ++ir) {
        const CylPoint pt{node(geom.radius(), ir, n_r), node(geom.sector_angle(), ip, n_phi),
                          node(geom.height(), iz, n_z)};
        samples.push_back(eval.at(pt));
        peak = std::max(peak, std::abs(samples.back().h_z));
      }
    }
  }
  if (!(peak > 0.0)) throw DomainError("H_z vanishes on every grid node; cannot normalize");
  const double scale = 1.0 / peak;
  for (auto& s : samples) {
    s.e_r *= scale;
    s.e_phi *= scale;
    s.e_z *= scale;
    s.h_r *= scale;
    s.h_phi *= scale;
    s.h_z *= scale;
  }
  return {geom, mode, n_r, n_phi, n_z, scale, std::move(samples)};
}

double helmholtz_residual(const FieldGrid& grid) {
  const std::size_t nr = grid.n_r(), np = grid.n_phi(), nz = grid.n_z();
  if (nr < 3 || np < 3 || nz == 2) {
    throw DomainError("Helmholtz residual needs >= 3 nodes along r and phi, and 1 or >= 3 along z");
  }
  const auto k = wavenumbers(grid.geometry(), grid.mode());
  const double eigenvalue = k.k_r * k.k_r + k.k_z * k.k_z;
  const double dr = grid.geometry().radius() / static_cast<double>(nr - 1);
  const double dphi = grid.geometry().sector_angle() / static_cast<double>(np - 1);
  const double dz = nz > 1 ? grid.geometry().height() / static_cast<double>(nz - 1) : 0.0;
  const std::size_t z_lo = nz > 1 ? 1 : 0;
  const std::size_t z_hi = nz > 1 ? nz - 1 : 1;

  const auto hz = [&grid](std::size_t ir, std::size_t ip, std::size_t iz) {
    return grid.at(ir, ip, iz).h_z;
  };
  double worst = 0.0;
  for (std::size_t iz = z_lo; iz < z_hi; ++iz) {
    for (std::size_t ip = 1; ip + 1 < np; ++ip) {
      for (std::size_t ir = 1; ir + 1 < nr; ++ir) {
        const double r = grid.at(ir, ip, iz).at.r;
        const Complex c = hz(ir, ip, iz);
        const Complex d2r = (hz(ir + 1, ip, iz) - 2.0 * c + hz(ir - 1, ip, iz)) / (dr * dr);
        const Complex d1r = (hz(ir + 1, ip, iz) - hz(ir - 1, ip, iz)) / (2.0 * dr);
        const Complex d2p = (hz(ir, ip + 1, iz) - 2.0 * c + hz(ir, ip - 1, iz)) / (dphi * dphi);
        Complex lap = d2r + d1r / r + d2p / (r * r);
        if (nz > 1) lap += (hz(ir, ip, iz + 1) - 2.0 * c + hz(ir, ip, iz - 1)) / (dz * dz);
        worst = std::max(worst, std::abs(lap + eigenvalue * c));
      }
    }
  }
  return worst;
}

BoundaryResiduals boundary_residuals(const SectorGeometry& geom, const ModeSpec& mode,
                                     std::size_t resolution) {
  if (resolution < 8) throw DomainError("boundary residual resolution must be >= 8");
  const FieldGrid grid = sample_grid(geom, mode, resolution, resolution, resolution);
  const FieldEvaluator eval(geom, mode);
  const std::size_t n = resolution;

  BoundaryResiduals out{};
  for (const auto& s : grid.samples()) out.e_z = std::max(out.e_z, std::abs(s.e_z));
  for (std::size_t iz = 0; iz < n; ++iz) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t ip : {std::size_t{0}, n - 1}) {
        const auto& s = grid.at(i, ip, iz);
        out.face_e_tangential =
            std::max({out.face_e_tangential, std::abs(s.e_r), std::abs(s.e_z)});
      }
      out.arc_h_phi = std::max(out.arc_h_phi, std::abs(grid.at(n - 1, i, iz).h_phi));
    }
  }
  for (std::size_t iz : {std::size_t{0}, n - 1}) {
    for (std::size_t ip = 0; ip < n; ++ip) {
      for (std::size_t ir = 0; ir < n; ++ir) {
        const auto& s = grid.at(ir, ip, iz);
        out.cap_dhz_dz = std::max(out.cap_dhz_dz, std::abs(eval.dhz_dz(s.at, grid.scale())));
      }
    }
  }
  return out;
}

std::string grid_to_csv(const FieldGrid& grid) {
  std::string out = kGridCsvHeader;
  out += '\n';
  for (const auto& s : grid.samples()) {
    const double values[] = {s.at.r,          s.at.phi,        s.at.z,          s.e_r.real(),
                             s.e_r.imag(),    s.e_phi.real(),  s.e_phi.imag(),  s.e_z.real(),
                             s.e_z.imag(),    s.h_r.real(),    s.h_r.imag(),    s.h_phi.real(),
                             s.h_phi.imag(),  s.h_z.real(),    s.h_z.imag()};
    bool first = true;
    for (double v : values) {
      if (!first) out += ',';
      out += format_number(v);
      first = false;
    }
    out += '\n';
  }
  return out;
}

nlohmann::json grid_to_json(const FieldGrid& grid) {
  const auto& g = grid.geometry();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : grid.samples()) {
    rows.push_back({s.at.r, s.at.phi, s.at.z, s.e_r.real(), s.e_r.imag(), s.e_phi.real(),
                    s.e_phi.imag(), s.e_z.real(), s.e_z.imag(), s.h_r.real(), s.h_r.imag(),
                    s.h_phi.real(), s.h_phi.imag(), s.h_z.real(), s.h_z.imag()});
  }
  return {{"geometry",
           {{"radius_m", g.radius()},
            {"height_m", g.height()},
            {"sector_rad", g.sector_angle()},
            {"eps_r", g.eps_r()}}},
          {"mode", mode_to_json(grid.mode())},
          {"shape", {grid.n_r(), grid.n_phi(), grid.n_z()}},
          {"scale", grid.scale()},
          {"columns", kGridCsvHeader},
          {"samples", std::move(rows)}};
}

FieldGrid grid_from_json(const nlohmann::json& doc) {
  try {
    const auto& g = doc.at("geometry");
    const SectorGeometry geom(g.at("radius_m").get<double>(), g.at("height_m").get<double>(),
                              g.at("sector_rad").get<double>(), g.at("eps_r").get<double>());
    const ModeSpec mode = mode_from_json(doc.at("mode"));
    const auto shape = doc.at("shape").get<std::vector<std::size_t>>();
    if (shape.size() != 3) throw DomainError("field grid shape must have 3 entries");
    std::vector<FieldSample> samples;
    for (const auto& row : doc.at("samples")) {
      const auto v = row.get<std::vector<double>>();
      if (v.size() != 15) throw DomainError("field grid sample rows must have 15 numbers");
      samples.push_back({{v[0], v[1], v[2]},
                         {v[3], v[4]},
                         {v[5], v[6]},
                         {v[7], v[8]},
                         {v[9], v[10]},
                         {v[11], v[12]},
                         {v[13], v[14]}});
    }
    return {geom, mode, shape[0], shape[1], shape[2], doc.at("scale").get<double>(),
            std::move(samples)};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed field grid document: ") + e.what());
  }
}

std::string export_grid(const FieldGrid& grid, GridFormat format) {
  return format == GridFormat::csv ? grid_to_csv(grid) : grid_to_json(grid).dump() + "\n";
}

void write_grid(const FieldGrid& grid, GridFormat format, const std::filesystem::path& path) {
  write_text_file(path, export_grid(grid, format));
}

FieldGrid read_grid_json(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return grid_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse field grid " + path.string() + ": " + e.what());
  }
}

}  // namespace sdra
