#include "sdra/sar.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sdra/errors.hpp"
#include "sdra/text.hpp"

namespace sdra {

namespace {

// Summed-volume table with one layer of zero padding in front.
class PrefixVolume {
 public:
  PrefixVolume(const std::array<std::size_t, 3>& shape, const std::vector<double>& values)
      : nx_(shape[0] + 1), ny_(shape[1] + 1), nz_(shape[2] + 1), table_(nx_ * ny_ * nz_, 0.0) {
    for (std::size_t x = 1; x < nx_; ++x)
      for (std::size_t y = 1; y < ny_; ++y)
        for (std::size_t z = 1; z < nz_; ++z) {
          const double v = values[((x - 1) * shape[1] + (y - 1)) * shape[2] + (z - 1)];
          at(x, y, z) = v + at(x - 1, y, z) + at(x, y - 1, z) + at(x, y, z - 1) -
                        at(x - 1, y - 1, z) - at(x - 1, y, z - 1) - at(x, y - 1, z - 1) +
                        at(x - 1, y - 1, z - 1);
        }
  }

  // Sum over the half-open box [lo, hi).
  double box(const std::array<std::size_t, 3>& lo, const std::array<std::size_t, 3>& hi) const {
    return at(hi[0], hi[1], hi[2]) - at(lo[0], hi[1], hi[2]) - at(hi[0], lo[1], hi[2]) -
           at(hi[0], hi[1], lo[2]) + at(lo[0], lo[1], hi[2]) + at(lo[0], hi[1], lo[2]) +
           at(hi[0], lo[1], lo[2]) - at(lo[0], lo[1], lo[2]);
  }

 private:
  double& at(std::size_t x, std::size_t y, std::size_t z) { return table_[(x * ny_ + y) * nz_ + z]; }
  double at(std::size_t x, std::size_t y, std::size_t z) const {
    return table_[(x * ny_ + y) * nz_ + z];
  }

  std::size_t nx_, ny_, nz_;
  std::vector<double> table_;
};

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw DomainError(std::string("tissue grid: '") + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(doc.at(key).size());
  for (const auto& v : doc.at(key)) {
    if (!v.is_number()) throw DomainError(std::string("tissue grid: non-number in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

struct GridHeader {
  std::array<std::size_t, 3> shape;
  double voxel;
  double p_in;
};

GridHeader parse_header(const nlohmann::json& doc) {
  try {
    const auto shape = doc.at("shape").get<std::vector<std::size_t>>();
    if (shape.size() != 3) throw DomainError("tissue grid: 'shape' must have 3 entries");
    return {{shape[0], shape[1], shape[2]},
            doc.at("voxel_m").get<double>(),
            doc.at("p_in_w").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("tissue grid header: ") + e.what());
  }
}

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + path.string() + ": " + e.what());
  }
}

}  // namespace

SarLimit limit_lookup(SarStandard standard, AveragingMass mass, LimitKind kind) {
  if (kind == LimitKind::average) {
    return {standard, mass, kind, mass == AveragingMass::one_gram ? 1.6 : 2.0};
  }
  if (standard == SarStandard::ieee_c95_1 && mass == AveragingMass::one_gram) {
    return {standard, mass, kind, 4.0};
  }
  throw DomainError("no " + to_string(kind) + " SAR limit for " + to_string(mass) + " under " +
                    to_string(standard));
}

double averaging_mass_kg(AveragingMass mass) {
  return mass == AveragingMass::one_gram ? 1e-3 : 1e-2;
}

SarStandard parse_standard(const std::string& text) {
  if (text == "ieee" || text == "IEEE" || text == "ieee_c95_1") return SarStandard::ieee_c95_1;
  if (text == "ecc" || text == "ECC" || text == "ecc_cept") return SarStandard::ecc_cept;
  throw DomainError("unknown SAR standard '" + text + "' (expected ieee or ecc)");
}

AveragingMass parse_mass(const std::string& text) {
  if (text == "1g") return AveragingMass::one_gram;
  if (text == "10g") return AveragingMass::ten_grams;
  throw DomainError("unknown averaging mass '" + text + "' (expected 1g or 10g)");
}

LimitKind parse_kind(const std::string& text) {
  if (text == "average") return LimitKind::average;
  if (text == "peak") return LimitKind::peak;
  throw DomainError("unknown limit kind '" + text + "' (expected average or peak)");
}

std::string to_string(SarStandard standard) {
  return standard == SarStandard::ieee_c95_1 ? "ieee" : "ecc";
}
std::string to_string(AveragingMass mass) {
  return mass == AveragingMass::one_gram ? "1g" : "10g";
}
std::string to_string(LimitKind kind) { return kind == LimitKind::average ? "average" : "peak"; }

double point_sar(double sigma, double e_mag, double rho) {
  if (!(rho > 0.0)) throw DomainError("tissue density must be positive");
  if (!(sigma >= 0.0) || !(e_mag >= 0.0)) {
    throw DomainError("conductivity and field magnitude must be non-negative");
  }
  return sigma * e_mag * e_mag / rho;
}

double max_allowed_power(double p_in, double sar_achieved, const SarLimit& limit) {
  if (!(p_in > 0.0) || !std::isfinite(p_in)) throw DomainError("input power must be positive");
  if (!(sar_achieved > 0.0) || !std::isfinite(sar_achieved)) {
    throw DomainError("achieved SAR must be positive");
  }
  return p_in * (limit.value / sar_achieved);
}

TissueGrid::TissueGrid(std::array<std::size_t, 3> shape, double voxel_edge, double p_in,
                       std::vector<double> sigma, std::vector<double> rho,
                       std::vector<double> e_mag)
    : shape_(shape),
      voxel_edge_(voxel_edge),
      p_in_(p_in),
      sigma_(std::move(sigma)),
      rho_(std::move(rho)),
      e_mag_(std::move(e_mag)) {
  const std::size_t count = shape[0] * shape[1] * shape[2];
  if (count == 0) throw DomainError("tissue grid shape must be non-empty");
  if (sigma_.size() != count || rho_.size() != count || e_mag_.size() != count) {
    throw DomainError("tissue grid arrays must each hold " + std::to_string(count) + " values");
  }
  if (!(voxel_edge > 0.0) || !std::isfinite(voxel_edge)) {
    throw DomainError("voxel edge must be positive");
  }
  if (!(p_in > 0.0) || !std::isfinite(p_in)) throw DomainError("input power must be positive");
  for (std::size_t i = 0; i < count; ++i) {
    if (!(sigma_[i] >= 0.0) || !std::isfinite(sigma_[i]) || !(rho_[i] > 0.0) ||
        !std::isfinite(rho_[i]) || !(e_mag_[i] >= 0.0) || !std::isfinite(e_mag_[i])) {
      throw DomainError("tissue grid voxel " + std::to_string(i) +
                        " violates sigma >= 0, rho > 0, e_mag >= 0");
    }
  }
}

double TissueGrid::total_mass() const {
  double sum = 0.0;
  for (double r : rho_) sum += r;
  return sum * voxel_volume();
}

TissueGrid TissueGrid::with_field_scaled(double factor) const {
  std::vector<double> e = e_mag_;
  for (double& x : e) x *= factor;
  return {shape_, voxel_edge_, p_in_, sigma_, rho_, std::move(e)};
}

AveragedSar averaged_sar(const TissueGrid& grid, double mass_target) {
  if (!(mass_target > 0.0)) throw DomainError("averaging mass must be positive");
  const double volume = grid.voxel_volume();
  if (grid.total_mass() < mass_target) {
    throw DomainError("insufficient tissue mass: grid weighs " + format_number(grid.total_mass()) +
                      " kg, averaging needs " + format_number(mass_target) + " kg");
  }
  // Mass-weighted point SAR: sum(rho V * sigma E^2 / rho) / sum(rho V)
  // = sum(sigma E^2) / sum(rho).
  std::vector<double> absorbed(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    absorbed[i] = grid.sigma()[i] * grid.e_mag()[i] * grid.e_mag()[i];
  }
  const auto& shape = grid.shape();
  const PrefixVolume absorbed_sum(shape, absorbed);
  const PrefixVolume density_sum(shape, grid.rho());
  const std::size_t widest = std::max({shape[0], shape[1], shape[2]});

  AveragedSar best{-1.0, {0, 0, 0}, 0, 0};
  for (std::size_t ix = 0; ix < shape[0]; ++ix) {
    for (std::size_t iy = 0; iy < shape[1]; ++iy) {
      for (std::size_t iz = 0; iz < shape[2]; ++iz) {
        const std::array<std::size_t, 3> c{ix, iy, iz};
        for (std::size_t w = 0; w <= widest; ++w) {
          std::array<std::size_t, 3> lo{}, hi{};
          for (int d = 0; d < 3; ++d) {
            lo[d] = c[d] >= w ? c[d] - w : 0;
            hi[d] = std::min(c[d] + w + 1, shape[d]);
          }
          const double rho_sum = density_sum.box(lo, hi);
          if (rho_sum * volume < mass_target && w < widest) continue;
          const double avg = absorbed_sum.box(lo, hi) / rho_sum;
          if (avg > best.peak_avg) best = {avg, c, grid.index(ix, iy, iz), w};
          break;
        }
      }
    }
  }
  return best;
}

TissueGrid tissue_grid_from_json(const nlohmann::json& doc) {
  const GridHeader h = parse_header(doc);
  return {h.shape, h.voxel, h.p_in, number_array(doc, "sigma"), number_array(doc, "rho"),
          number_array(doc, "e_mag")};
}

nlohmann::json tissue_grid_to_json(const TissueGrid& grid) {
  return {{"shape", grid.shape()}, {"voxel_m", grid.voxel_edge()}, {"p_in_w", grid.p_in()},
          {"sigma", grid.sigma()}, {"rho", grid.rho()},             {"e_mag", grid.e_mag()}};
}

TissueGrid load_tissue_grid(const std::filesystem::path& json_path) {
  try {
    return tissue_grid_from_json(parse_json_file(json_path));
  } catch (const DomainError& e) {
    throw DomainError(json_path.string() + ": " + e.what());
  }
}

TissueGrid load_tissue_grid_csv(const std::filesystem::path& header_path,
                                const std::filesystem::path& csv_path) {
  const GridHeader h = parse_header(parse_json_file(header_path));
  std::istringstream in(read_text_file(csv_path));
  std::vector<double> sigma, rho, e_mag;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> cells;
    std::istringstream row(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        cells.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (line_no == 1) continue;  // column header
      throw IoError(csv_path.string() + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    if (cells.size() == 4) {
      if (cells[0] != static_cast<double>(sigma.size())) {
        throw IoError(csv_path.string() + ":" + std::to_string(line_no) +
                      ": voxel index out of order");
      }
      cells.erase(cells.begin());
    }
    if (cells.size() != 3) {
      throw IoError(csv_path.string() + ":" + std::to_string(line_no) +
                    ": expected 3 or 4 columns");
    }
    sigma.push_back(cells[0]);
    rho.push_back(cells[1]);
    e_mag.push_back(cells[2]);
  }
  try {
    return {h.shape, h.voxel, h.p_in, std::move(sigma), std::move(rho), std::move(e_mag)};
  } catch (const DomainError& e) {
    throw DomainError(csv_path.string() + ": " + e.what());
  }
}

}  // namespace sdra
