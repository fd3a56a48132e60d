#pragma once

// Finite-difference eigensolver for the transverse problem
//   -(1/r) d/dr (r du/dr) - (1/r^2) d2u/dphi2 = k_t^2 u
// on the sector 0 < r < a, 0 < phi < phi0, with du/dphi = 0 on both faces
// and u = 0 on the arc. Cell-centred polar grid, nodes at
// r_i = (i + 1/2) dr with dr = a / (n_r + 1/2) and phi_j = (j + 1/2) dphi,
// so the axis carries no node and the arc sits on a ghost node. Independent
// of the Bessel routines; it validates the transverse wavenumbers X_vn / a.

#include <cstddef>
#include <vector>

#include "sdra/modal.hpp"

namespace sdra {

struct FdProblem {
  double radius;
  double sector_angle;
  std::size_t n_r;
  std::size_t n_phi;

  /// n_r, n_phi >= 16, radius > 0, 0 < sector_angle <= 2 pi.
  void validate() const;
};

struct FdSpectrum {
  /// Ascending transverse wavenumbers sqrt(lambda), rad/m.
  std::vector<double> k_t;
  /// Mode shapes u on the nodes, index j * n_r + i, unit max-norm, sign
  /// chosen so the first node attaining the peak magnitude is positive.
  /// Filled only on request.
  std::vector<std::vector<double>> shapes;
  /// Subspace iterations used (0 for the dense path).
  int iterations = 0;
};

/// Matrix dimension at or below which `automatic` picks the dense solver.
inline constexpr std::size_t kDenseLimit = 1024;

enum class FdMethod { automatic, dense, subspace };

struct FdOptions {
  bool want_shapes = false;
  FdMethod method = FdMethod::automatic;
};

/// The `count` smallest eigenpairs. Throws ConvergenceError (with the
/// iteration count) if the subspace iteration stalls.
FdSpectrum fd_transverse_eigs(const FdProblem& problem, std::size_t count,
                              const FdOptions& options = {});

struct ModeComparison {
  int m;
  int n;
  double v;
  double analytic_k_r;  // X_vn / a
  double fd_k_t;        // closest finite-difference eigenvalue
  double relative_error;
};

/// Pairs the `count` smallest analytic k_r (derived orders only) with the
/// nearest finite-difference wavenumber on an n_r x n_phi grid.
std::vector<ModeComparison> compare_modes(const SectorGeometry& geom, std::size_t count,
                                          std::size_t n_r, std::size_t n_phi);

}  // namespace sdra
