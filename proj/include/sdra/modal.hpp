#pragma once

// Sector geometry, mode bookkeeping and the closed-form resonance model:
//   k_r = X_vn / a,  k_phi = v / a,  k_z = p pi / h,
//   k^2 = k_r^2 + k_phi^2 + k_z^2,   f = c k / (2 pi sqrt(eps_r)).
// SI units throughout.

#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sdra {

inline constexpr double kSpeedOfLight = 299'792'458.0;               // m/s
inline constexpr double kVacuumPermeability = 4.0e-7 * std::numbers::pi;  // H/m

/// Sectoral cylinder: radius a, height h, opening angle phi0 and relative
/// permittivity. The constructor validates a > 0, h > 0, eps_r >= 1 and
/// 0 < phi0 <= 2 pi.
class SectorGeometry {
 public:
  SectorGeometry(double radius, double height, double sector_angle, double eps_r);

  /// Quarter sector, phi0 = pi / 2.
  static SectorGeometry quarter(double radius, double height, double eps_r);

  double radius() const noexcept { return radius_; }
  double height() const noexcept { return height_; }
  double sector_angle() const noexcept { return sector_angle_; }
  double eps_r() const noexcept { return eps_r_; }

  SectorGeometry with_radius(double radius) const;
  SectorGeometry with_height(double height) const;
  SectorGeometry with_sector_angle(double sector_angle) const;
  SectorGeometry with_eps_r(double eps_r) const;

  bool operator==(const SectorGeometry&) const = default;

 private:
  double radius_;
  double height_;
  double sector_angle_;
  double eps_r_;
};

enum class ModeFamily { TE, EH };

std::string to_string(ModeFamily family);
ModeFamily parse_family(const std::string& text);

/// Order derived from the face conditions: v = m pi / phi0.
struct OrderFromIndex {
  int m;
  bool operator==(const OrderFromIndex&) const = default;
};

/// Order given verbatim, independent of the sector angle.
struct ExplicitOrder {
  double v;
  bool operator==(const ExplicitOrder&) const = default;
};

/// Mode identity. TE and EH share the same numerics; the family is a label.
class ModeSpec {
 public:
  using OrderSource = std::variant<OrderFromIndex, ExplicitOrder>;

  static ModeSpec from_index(ModeFamily family, int m, int n, int p);
  static ModeSpec with_order(ModeFamily family, double v, int n, int p);

  ModeFamily family() const noexcept { return family_; }
  int n() const noexcept { return n_; }
  int p() const noexcept { return p_; }
  const OrderSource& source() const noexcept { return source_; }

  bool derived() const noexcept { return std::holds_alternative<OrderFromIndex>(source_); }
  /// Azimuthal index m for derived orders.
  std::optional<int> m() const noexcept;

  /// Azimuthal order v in the given geometry.
  double order(const SectorGeometry& geom) const;

  /// e.g. "TE(m=1,n=1,p=0)" or "EH(v=1,n=1,p=0)".
  std::string label() const;

  bool operator==(const ModeSpec&) const = default;

 private:
  ModeSpec(ModeFamily family, OrderSource source, int n, int p);

  ModeFamily family_;
  OrderSource source_;
  int n_;
  int p_;
};

struct Wavenumbers {
  double k_r;
  double k_phi;
  double k_z;
  double k;
};

double azimuthal_order(int m, double sector_angle);

Wavenumbers wavenumbers(const SectorGeometry& geom, const ModeSpec& mode);

/// Resonant frequency in Hz.
double resonant_frequency(const SectorGeometry& geom, const ModeSpec& mode);

struct ModeFrequency {
  ModeSpec mode;
  double v;
  double frequency;
};

struct ModeSearch {
  double f_max;  // Hz
  int m_max = 3;
  int n_max = 3;
  int p_max = 1;
  /// Orders enumerated verbatim in addition to m = 0..m_max, e.g. {1.0}
  /// for the odd-order hybrid mode of a quarter sector.
  std::vector<double> explicit_orders;
  ModeFamily derived_family = ModeFamily::TE;
  ModeFamily explicit_family = ModeFamily::EH;
};

/// All modes within the index bounds resonating at or below f_max, sorted
/// by frequency; ties ordered by (v, n, p), derived before explicit.
std::vector<ModeFrequency> enumerate_modes(const SectorGeometry& geom, const ModeSearch& search);

}  // namespace sdra
