#include "sdra/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "sdra/errors.hpp"

namespace sdra::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A_g(x) for Gamma(x + 1).
double lanczos_sum(double x) {
  double sum = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    sum += kLanczosCoeff[i] / (x + static_cast<double>(i));
  }
  return sum;
}

void require_argument(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(std::string(what) + ": argument must be finite and >= 0, got " +
                      std::to_string(x));
  }
}

// Ascending series. Used only where the terms decrease from the first one,
// so there is no cancellation.
double series_j(double v, double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = std::exp(v * std::log(half) - log_gamma(v + 1.0));
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (v + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller backward recurrence over orders v0 + k, v0 in [0, 1), normalized by
//   (x/2)^v0 = sum_j (v0 + 2j) Gamma(v0 + j) / j! J_{v0+2j}(x).
double miller_j(double v, double x) {
  const double whole = std::floor(v);
  const double v0 = v - whole;
  const int target = static_cast<int>(whole);
  const double reach = std::max(whole, x);
  int top = static_cast<int>(reach + 30.0 + 6.0 * std::sqrt(reach));
  top += top % 2;

  // coeff[j] multiplies J_{v0+2j}.
  std::vector<double> coeff(static_cast<std::size_t>(top / 2 + 1));
  coeff[0] = gamma_function(v0 + 1.0);
  double g = coeff[0];  // Gamma(v0 + j) / j! at j = 1
  for (int j = 1; j <= top / 2; ++j) {
    if (j > 1) g *= (v0 + j - 1.0) / j;
    coeff[static_cast<std::size_t>(j)] = (v0 + 2.0 * j) * g;
  }

  constexpr double kBig = 1e250;
  double upper = 0.0;   // f_{k+1}
  double current = 1e-30;  // f_k
  double norm = 0.0;
  double at_target = 0.0;
  for (int k = top;; --k) {
    if (k % 2 == 0) norm += coeff[static_cast<std::size_t>(k / 2)] * current;
    if (k == target) at_target = current;
    if (k == 0) break;
    const double lower = 2.0 * (v0 + k) / x * current - upper;
    upper = current;
    current = lower;
    if (std::abs(current) > kBig) {
      current /= kBig;
      upper /= kBig;
      norm /= kBig;
      at_target /= kBig;
    }
  }
  return at_target * std::pow(0.5 * x, v0) / norm;
}

}  // namespace

BesselOrder::BesselOrder(double v) : v_(v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError("Bessel order must be finite and >= 0, got " + std::to_string(v));
  }
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite");
  }
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  }
  const double y = x - 1.0;
  const double t = y + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (y + 0.5) * std::log(t) - t + std::log(lanczos_sum(y));
}

double gamma_function(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma: argument must be positive and finite");
  }
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_function(1.0 - x));
  const double y = x - 1.0;
  const double t = y + kLanczosG + 0.5;
  // Split the power so t^(y+0.5) does not overflow before exp(-t) applies.
  const double half_pow = std::pow(t, 0.5 * (y + 0.5));
  return std::sqrt(2.0 * kPi) * half_pow * (half_pow * std::exp(-t)) * lanczos_sum(y);
}

double bessel_j(BesselOrder order, double x) {
  require_argument(x, "bessel_j");
  const double v = order.value();
  if (x == 0.0) return v == 0.0 ? 1.0 : 0.0;
  if (0.25 * x * x <= v + 1.0) return series_j(v, x);
  return miller_j(v, x);
}

double bessel_j_prime(BesselOrder order, double x) {
  require_argument(x, "bessel_j_prime");
  const double v = order.value();
  if (x == 0.0) {
    if (v == 0.0) return 0.0;
    if (v == 1.0) return 0.5;
    if (v > 1.0) return 0.0;
    throw DomainError("bessel_j_prime: derivative at x = 0 is unbounded for 0 < v < 1");
  }
  return (v / x) * bessel_j(order, x) - bessel_j(BesselOrder(v + 1.0), x);
}

double bessel_zero(BesselOrder order, int n) {
  if (n < 1) throw DomainError("bessel_zero: index n must be >= 1, got " + std::to_string(n));
  const double v = order.value();

  // McMahon expansion, good for n >> v, used as the first Newton guess.
  const double beta = (n + 0.5 * v - 0.25) * kPi;
  const double mu = 4.0 * v * v;
  const double b8 = 8.0 * beta;
  const double mcmahon =
      beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);

  // Bracket the n-th sign change. J_v > 0 on (0, j_{v,1}) and j_{v,1} > v;
  // consecutive zeros are more than 2 apart, so a unit step cannot skip one.
  constexpr double kStep = 0.5;
  double lo = std::max(v, 1e-3);
  double f_lo = bessel_j(order, lo);
  int found = 0;
  double hi = lo;
  double f_hi = f_lo;
  const int scan_budget = static_cast<int>((2.0 * beta + 4.0 * v + 40.0) / kStep);
  for (int i = 0; i < scan_budget; ++i) {
    hi = lo + kStep;
    f_hi = bessel_j(order, hi);
    if (f_hi == 0.0) {
      if (++found == n) return hi;
    } else if ((f_lo > 0.0) != (f_hi > 0.0) && f_lo != 0.0) {
      if (++found == n) break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (found != n) {
    throw ConvergenceError("bessel_zero: could not bracket zero " + std::to_string(n) +
                           " of J_" + std::to_string(v));
  }

  // Guarded Newton inside [lo, hi]; bisection whenever Newton leaves it.
  double x = (mcmahon > lo && mcmahon < hi) ? mcmahon : 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = bessel_j(order, x);
    if (f == 0.0) return x;
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    const double df = bessel_j_prime(order, x);
    double next = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
      return next;
    }
    x = next;
  }
  throw ConvergenceError("bessel_zero: refinement of zero " + std::to_string(n) + " of J_" +
                         std::to_string(v) + " did not converge in 200 iterations");
}

}  // namespace sdra::specfun
