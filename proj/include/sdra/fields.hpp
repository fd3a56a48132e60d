#pragma once

// Field solution of the sector resonator with the face and cap constants
// reduced by the boundary conditions (B = F = 0, A E = amplitude):
//
//   H_z   = J_v(k_r r) cos(v phi) cos(k_z z)
//   E_r   = +j (w mu / k_r^2) (v J_v / r)          sin(v phi) cos(k_z z)
//   E_phi = +j (w mu / k_r^2) (k_r r) J_v'(k_r r)  cos(v phi) cos(k_z z)
//   H_r   = -j (k_z / k_r^2)  (k_r r) J_v'(k_r r)  cos(v phi) cos(k_z z)
//   H_phi = +j (k_z / k_r^2)  (v J_v / r)          sin(v phi) cos(k_z z)
//   E_z   = 0
//
// Phasors use the exp(+j w t) convention. w is 2 pi times the resonant
// frequency of the mode and mu is the vacuum permeability.

#include <complex>
#include <cstddef>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "sdra/modal.hpp"

namespace sdra {

using Complex = std::complex<double>;

struct CylPoint {
  double r;
  double phi;
  double z;
};

struct FieldSample {
  CylPoint at;
  Complex e_r;
  Complex e_phi;
  Complex e_z;
  Complex h_r;
  Complex h_phi;
  Complex h_z;
};

/// Precomputes the wavenumbers and angular frequency of one mode so that
/// repeated point evaluations skip the Bessel root search.
class FieldEvaluator {
 public:
  FieldEvaluator(const SectorGeometry& geom, const ModeSpec& mode);

  /// Throws DomainError outside 0 <= r <= a, 0 <= phi <= phi0, 0 <= z <= h,
  /// and on the axis when 0 < v < 1 (E_r and H_phi are unbounded there).
  FieldSample at(const CylPoint& point, double amplitude = 1.0) const;

  /// dH_z/dz, which the cap conditions force to zero.
  Complex dhz_dz(const CylPoint& point, double amplitude = 1.0) const;

  const SectorGeometry& geometry() const noexcept { return geom_; }
  const ModeSpec& mode() const noexcept { return mode_; }
  double order() const noexcept { return v_; }
  const Wavenumbers& wavenumbers() const noexcept { return k_; }
  double angular_frequency() const noexcept { return omega_; }

 private:
  void check_domain(const CylPoint& point) const;

  SectorGeometry geom_;
  ModeSpec mode_;
  double v_;
  Wavenumbers k_;
  double omega_;
};

FieldSample field_at(const SectorGeometry& geom, const ModeSpec& mode, const CylPoint& point,
                     double amplitude = 1.0);

/// Samples on a uniform (r, phi, z) lattice with the boundary nodes included,
/// rescaled so that max |H_z| over the nodes is 1. Storage and export order
/// is z-major, then phi, then r.
class FieldGrid {
 public:
  FieldGrid(SectorGeometry geom, ModeSpec mode, std::size_t n_r, std::size_t n_phi,
            std::size_t n_z, double scale, std::vector<FieldSample> samples);

  const SectorGeometry& geometry() const noexcept { return geom_; }
  const ModeSpec& mode() const noexcept { return mode_; }
  std::size_t n_r() const noexcept { return n_r_; }
  std::size_t n_phi() const noexcept { return n_phi_; }
  std::size_t n_z() const noexcept { return n_z_; }
  /// Factor applied to the unit-amplitude solution.
  double scale() const noexcept { return scale_; }
  const std::vector<FieldSample>& samples() const noexcept { return samples_; }

  std::size_t index(std::size_t ir, std::size_t iphi, std::size_t iz) const noexcept {
    return (iz * n_phi_ + iphi) * n_r_ + ir;
  }
  const FieldSample& at(std::size_t ir, std::size_t iphi, std::size_t iz) const {
    return samples_.at(index(ir, iphi, iz));
  }

 private:
  SectorGeometry geom_;
  ModeSpec mode_;
  std::size_t n_r_;
  std::size_t n_phi_;
  std::size_t n_z_;
  double scale_;
  std::vector<FieldSample> samples_;
};

/// n_r, n_phi >= 2; n_z >= 2, or n_z == 1 (plane z = 0) for p = 0 modes.
FieldGrid sample_grid(const SectorGeometry& geom, const ModeSpec& mode, std::size_t n_r,
                      std::size_t n_phi, std::size_t n_z);

/// Max over interior nodes of |lap H_z + (k_r^2 + k_z^2) H_z| using
/// second-order central differences of the cylindrical Laplacian.
double helmholtz_residual(const FieldGrid& grid);

struct BoundaryResiduals {
  double face_e_tangential;  // max |E_r|, |E_z| on phi = 0 and phi = phi0
  double arc_h_phi;          // max |H_phi| on r = a
  double cap_dhz_dz;         // max |dH_z/dz| on z = 0 and z = h
  double e_z;                // max |E_z| over every node
};

/// Residuals on the boundary nodes of a resolution^3 grid (same scaling as
/// sample_grid). resolution >= 8.
BoundaryResiduals boundary_residuals(const SectorGeometry& geom, const ModeSpec& mode,
                                     std::size_t resolution);

enum class GridFormat { csv, json };

inline constexpr const char* kGridCsvHeader =
    "r_m,phi_rad,z_m,Er_re,Er_im,Ephi_re,Ephi_im,Ez_re,Ez_im,Hr_re,Hr_im,Hphi_re,Hphi_im,"
    "Hz_re,Hz_im";

std::string grid_to_csv(const FieldGrid& grid);
nlohmann::json grid_to_json(const FieldGrid& grid);
FieldGrid grid_from_json(const nlohmann::json& doc);
std::string export_grid(const FieldGrid& grid, GridFormat format);

/// Throws IoError naming the path on failure.
void write_grid(const FieldGrid& grid, GridFormat format, const std::filesystem::path& path);
FieldGrid read_grid_json(const std::filesystem::path& path);

}  // namespace sdra
