#pragma once

// Real-order Bessel functions of the first kind, their first derivative and
// their positive zeros. Everything here is pure and re-entrant.

namespace sdra::specfun {

/// Non-negative, finite Bessel order. Throws DomainError otherwise.
class BesselOrder {
 public:
  explicit BesselOrder(double v);
  double value() const noexcept { return v_; }

 private:
  double v_;
};

/// Gamma function via the Lanczos approximation (g = 7, 9 terms). x > 0.
double gamma_function(double x);

/// log Gamma(x) for x > 0, same approximation.
double log_gamma(double x);

/// J_v(x) for x >= 0.
double bessel_j(BesselOrder v, double x);

/// dJ_v/dx. x > 0, or x == 0 when v == 0 or v >= 1 (finite limits).
double bessel_j_prime(BesselOrder v, double x);

/// n-th positive zero of J_v, n >= 1. Throws ConvergenceError if the
/// refinement does not converge.
double bessel_zero(BesselOrder v, int n);

inline double bessel_j(double v, double x) { return bessel_j(BesselOrder(v), x); }
inline double bessel_j_prime(double v, double x) {
  return bessel_j_prime(BesselOrder(v), x);
}
inline double bessel_zero(double v, int n) { return bessel_zero(BesselOrder(v), n); }

}  // namespace sdra::specfun
