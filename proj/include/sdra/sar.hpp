#pragma once

// Specific absorption rate: point values sigma |E|^2 / rho, cube-averaged
// peak SAR over a voxel grid, regulatory limits and the input-power budget
// P_max = P_in * SAR_limit / SAR_achieved.

#include <array>
#include <cstddef>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace sdra {

enum class SarStandard { ieee_c95_1, ecc_cept };
enum class AveragingMass { one_gram, ten_grams };
enum class LimitKind { average, peak };

struct SarLimit {
  SarStandard standard;
  AveragingMass mass;
  LimitKind kind;
  double value;  // W/kg
};

/// Closed table: IEEE C95.1 average 1 g = 1.6, average 10 g = 2.0,
/// peak 1 g = 4.0; ECC/CEPT average 1 g = 1.6, average 10 g = 2.0.
/// Any other combination throws DomainError.
SarLimit limit_lookup(SarStandard standard, AveragingMass mass, LimitKind kind);

/// 0.001 kg or 0.010 kg.
double averaging_mass_kg(AveragingMass mass);

SarStandard parse_standard(const std::string& text);  // "ieee" | "ecc"
AveragingMass parse_mass(const std::string& text);    // "1g" | "10g"
LimitKind parse_kind(const std::string& text);        // "average" | "peak"
std::string to_string(SarStandard standard);
std::string to_string(AveragingMass mass);
std::string to_string(LimitKind kind);

/// sigma |E|^2 / rho in W/kg.
double point_sar(double sigma, double e_mag, double rho);

/// P_in * limit / sar_achieved, in W.
double max_allowed_power(double p_in, double sar_achieved, const SarLimit& limit);

/// Voxelized tissue: conductivity (S/m), density (kg/m^3) and |E| (V/m) at
/// input power p_in (W). Linear index (ix * ny + iy) * nz + iz, i.e. x-major.
class TissueGrid {
 public:
  TissueGrid(std::array<std::size_t, 3> shape, double voxel_edge, double p_in,
             std::vector<double> sigma, std::vector<double> rho, std::vector<double> e_mag);

  const std::array<std::size_t, 3>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return sigma_.size(); }
  double voxel_edge() const noexcept { return voxel_edge_; }
  double voxel_volume() const noexcept { return voxel_edge_ * voxel_edge_ * voxel_edge_; }
  double p_in() const noexcept { return p_in_; }
  const std::vector<double>& sigma() const noexcept { return sigma_; }
  const std::vector<double>& rho() const noexcept { return rho_; }
  const std::vector<double>& e_mag() const noexcept { return e_mag_; }

  std::size_t index(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept {
    return (ix * shape_[1] + iy) * shape_[2] + iz;
  }
  double total_mass() const;

  /// Same tissue with every |E| multiplied by factor.
  TissueGrid with_field_scaled(double factor) const;

 private:
  std::array<std::size_t, 3> shape_;
  double voxel_edge_;
  double p_in_;
  std::vector<double> sigma_;
  std::vector<double> rho_;
  std::vector<double> e_mag_;
};

struct AveragedSar {
  double peak_avg;                     // W/kg
  std::array<std::size_t, 3> center;   // voxel (ix, iy, iz)
  std::size_t center_index;            // linear index
  std::size_t half_width;              // cube spans center +/- half_width voxels
};

/// For every voxel, grows a cube centred on it (clipped to the grid) one
/// voxel layer at a time until its mass reaches mass_target, and averages
/// point SAR over the cube weighted by voxel mass. Returns the largest
/// average; ties go to the lowest linear index. Throws DomainError when the
/// whole grid is lighter than mass_target.
AveragedSar averaged_sar(const TissueGrid& grid, double mass_target);

/// JSON document: {"shape": [nx, ny, nz], "voxel_m": ..., "p_in_w": ...,
/// "sigma": [...], "rho": [...], "e_mag": [...]}.
TissueGrid tissue_grid_from_json(const nlohmann::json& doc);
nlohmann::json tissue_grid_to_json(const TissueGrid& grid);
TissueGrid load_tissue_grid(const std::filesystem::path& json_path);

/// Header JSON without the arrays plus a CSV with one voxel per line in
/// linear order: "sigma,rho,e_mag" or "index,sigma,rho,e_mag". A
/// non-numeric first line is treated as a column header.
TissueGrid load_tissue_grid_csv(const std::filesystem::path& header_path,
                                const std::filesystem::path& csv_path);

}  // namespace sdra
