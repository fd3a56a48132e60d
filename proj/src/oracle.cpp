#include "sdra/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "sdra/errors.hpp"
#include "sdra/specfun.hpp"

namespace sdra {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

constexpr int kMaxIterations = 500;
constexpr double kResidualTol = 1e-10;

// Symmetric form S = W^-1/2 A W^-1/2 of the r-weighted operator A = r L,
// W = diag(r_i). Eigenvectors y of S map back to u = W^-1/2 y.
SparseMatrix assemble(const FdProblem& pb, std::vector<double>& node_r) {
  const std::size_t nr = pb.n_r, np = pb.n_phi;
  const double dr = pb.radius / (static_cast<double>(nr) + 0.5);
  const double dphi = pb.sector_angle / static_cast<double>(np);
  node_r.resize(nr);
  for (std::size_t i = 0; i < nr; ++i) node_r[i] = (static_cast<double>(i) + 0.5) * dr;

  const auto id = [nr](std::size_t i, std::size_t j) { return static_cast<int>(j * nr + i); };
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(5 * nr * np);
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nr; ++i) {
      const double r = node_r[i];
      const double r_in = r - 0.5 * dr;   // 0 at the first node: no flux through the axis
      const double r_out = r + 0.5 * dr;  // last node couples to the u = 0 ghost on the arc
      const double azim = 1.0 / (r * dphi * dphi);
      double diag = (r_in + r_out) / (dr * dr);
      if (i > 0) {
        entries.emplace_back(id(i, j), id(i - 1, j),
                             -r_in / (dr * dr) / std::sqrt(r * node_r[i - 1]));
      }
      if (i + 1 < nr) {
        entries.emplace_back(id(i, j), id(i + 1, j),
                             -r_out / (dr * dr) / std::sqrt(r * node_r[i + 1]));
      }
      // Mirror ghosts on the faces (zero normal derivative).
      if (j > 0) {
        diag += azim;
        entries.emplace_back(id(i, j), id(i, j - 1), -azim / r);
      }
      if (j + 1 < np) {
        diag += azim;
        entries.emplace_back(id(i, j), id(i, j + 1), -azim / r);
      }
      entries.emplace_back(id(i, j), id(i, j), diag / r);
    }
  }
  SparseMatrix s(static_cast<int>(nr * np), static_cast<int>(nr * np));
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

void orthonormalize(Eigen::MatrixXd& block) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
  block = qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), block.cols());
}

// Block inverse iteration with Rayleigh-Ritz on the Cholesky factor of S.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> subspace_iteration(const SparseMatrix& s,
                                                               std::size_t count,
                                                               int& iterations) {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(s);
  if (ldlt.info() != Eigen::Success) {
    throw ConvergenceError("finite-difference operator factorization failed");
  }
  const auto block_size = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(s.rows()), count + std::max<std::size_t>(6, count)));
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd q(s.rows(), block_size);
  for (int c = 0; c < q.cols(); ++c)
    for (int r = 0; r < q.rows(); ++r) q(r, c) = dist(rng);
  orthonormalize(q);

  // Convergence is judged on the inverse operator, whose norm is 1 / lambda_min:
  // the entries of S near the axis are large enough that ||S q - theta q||
  // is dominated by rounding.
  const auto wanted = static_cast<int>(count);
  Eigen::VectorXd theta;
  for (iterations = 1; iterations <= kMaxIterations; ++iterations) {
    Eigen::MatrixXd z = ldlt.solve(q);
    if (theta.size() > 0) {
      bool converged = true;
      for (int c = 0; c < wanted && converged; ++c) {
        converged = (z.col(c) - q.col(c) / theta(c)).norm() * theta(c) <= kResidualTol;
      }
      if (converged) return {theta.head(wanted), q.leftCols(wanted)};
    }
    orthonormalize(z);
    const Eigen::MatrixXd ritz = z.transpose() * (s * z);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(0.5 * (ritz + ritz.transpose()));
    q = z * small.eigenvectors();
    theta = small.eigenvalues();
  }
  throw ConvergenceError("finite-difference subspace iteration did not converge in " +
                         std::to_string(kMaxIterations) + " iterations");
}

}  // namespace

void FdProblem::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("finite-difference radius must be positive");
  }
  if (!(sector_angle > 0.0) || sector_angle > 2.0 * std::numbers::pi) {
    throw DomainError("finite-difference sector angle must lie in (0, 2 pi]");
  }
  if (n_r < 16 || n_phi < 16) {
    throw DomainError("finite-difference grid needs at least 16 x 16 nodes, got " +
                      std::to_string(n_r) + " x " + std::to_string(n_phi));
  }
}

FdSpectrum fd_transverse_eigs(const FdProblem& problem, std::size_t count,
                              const FdOptions& options) {
  problem.validate();
  const std::size_t dim = problem.n_r * problem.n_phi;
  if (count < 1 || count > dim) {
    throw DomainError("eigenvalue count must lie in [1, " + std::to_string(dim) + "]");
  }
  std::vector<double> node_r;
  const SparseMatrix s = assemble(problem, node_r);

  FdSpectrum out;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  const bool want_shapes = options.want_shapes;
  const bool dense_path = options.method == FdMethod::dense ||
                          (options.method == FdMethod::automatic && dim <= kDenseLimit);
  if (dense_path) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(
        Eigen::MatrixXd(s), want_shapes ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (dense.info() != Eigen::Success) {
      throw ConvergenceError("dense symmetric eigensolver failed");
    }
    values = dense.eigenvalues().head(static_cast<int>(count));
    if (want_shapes) vectors = dense.eigenvectors().leftCols(static_cast<int>(count));
  } else {
    std::tie(values, vectors) = subspace_iteration(s, count, out.iterations);
  }

  for (int c = 0; c < values.size(); ++c) {
    if (!(values(c) > 0.0)) {
      throw ConvergenceError("finite-difference eigenvalue " + std::to_string(c) +
                             " is not positive: " + std::to_string(values(c)));
    }
    out.k_t.push_back(std::sqrt(values(c)));
    if (!want_shapes) continue;
    std::vector<double> shape(dim);
    double peak = 0.0;
    for (std::size_t idx = 0; idx < dim; ++idx) {
      shape[idx] = vectors(static_cast<int>(idx), c) / std::sqrt(node_r[idx % problem.n_r]);
      peak = std::max(peak, std::abs(shape[idx]));
    }
    // Sign from the first node within rounding of the peak, so mirror-image
    // extrema cannot flip it.
    const auto lead = std::find_if(shape.begin(), shape.end(), [peak](double u) {
      return std::abs(u) >= (1.0 - 1e-8) * peak;
    });
    const double norm = *lead > 0.0 ? peak : -peak;
    for (double& u : shape) u /= norm;
    out.shapes.push_back(std::move(shape));
  }
  return out;
}

std::vector<ModeComparison> compare_modes(const SectorGeometry& geom, std::size_t count,
                                          std::size_t n_r, std::size_t n_phi) {
  if (count < 1) throw DomainError("mode count must be >= 1");
  // X_vn grows with both m and n, so the `count` smallest have m < count
  // and n <= count.
  std::vector<ModeComparison> analytic;
  const int limit = static_cast<int>(count);
  for (int m = 0; m < limit; ++m) {
    const double v = azimuthal_order(m, geom.sector_angle());
    for (int n = 1; n <= limit; ++n) {
      analytic.push_back({m, n, v, specfun::bessel_zero(v, n) / geom.radius(), 0.0, 0.0});
    }
  }
  std::sort(analytic.begin(), analytic.end(), [](const auto& x, const auto& y) {
    return std::tie(x.analytic_k_r, x.m, x.n) < std::tie(y.analytic_k_r, y.m, y.n);
  });
  analytic.resize(count);

  const FdProblem problem{geom.radius(), geom.sector_angle(), n_r, n_phi};
  const auto spectrum = fd_transverse_eigs(problem, std::min(count + 3, n_r * n_phi));
  for (auto& row : analytic) {
    const auto nearest = std::min_element(
        spectrum.k_t.begin(), spectrum.k_t.end(), [&row](double x, double y) {
          return std::abs(x - row.analytic_k_r) < std::abs(y - row.analytic_k_r);
        });
    row.fd_k_t = *nearest;
    row.relative_error = std::abs(row.fd_k_t - row.analytic_k_r) / row.analytic_k_r;
  }
  return analytic;
}

}  // namespace sdra
