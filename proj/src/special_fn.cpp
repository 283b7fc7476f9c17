#include "qho/special_fn.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace qho {
namespace {

// Shared-exponent pair (H_{m-1}, H_m).
struct HermitePair {
  double prev;
  double cur;
  std::int64_t exponent;
};

constexpr int kRescaleShift = 600;
// Beyond this |x| the leading term (2x)^m decides every digit of a double.
constexpr double kAsymptoticX = 1e100;

void check_order(int order, int max_order) {
  if (order < 0 || order > max_order) {
    throw std::domain_error("Hermite order " + std::to_string(order) + " outside [0, " +
                            std::to_string(max_order) + "]");
  }
}

HermitePair hermite_pair(int order, double x) {
  // order >= 1
  double prev = 1.0;
  double cur = 2.0 * x;
  std::int64_t exponent = 0;
  // Keep (2|x| + 2m) * max(|prev|, |cur|) below 2^900.
  const double limit = std::ldexp(1.0, 900) / (2.0 * std::abs(x) + 2.0 * order + 1.0);
  for (int m = 1; m < order; ++m) {
    const double next = 2.0 * x * cur - 2.0 * m * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > limit || std::abs(prev) > limit) {
      cur = std::ldexp(cur, -kRescaleShift);
      prev = std::ldexp(prev, -kRescaleShift);
      exponent += kRescaleShift;
    }
  }
  return {prev, cur, exponent};
}

ScaledReal leading_power(int order, double x) {
  // (2x)^order by square-and-multiply on the scaled representation.
  ScaledReal base = ScaledReal::from_parts(x, 1);
  ScaledReal result = ScaledReal::from_double(1.0);
  for (int e = order; e > 0; e >>= 1) {
    if (e & 1) result *= base;
    base *= base;
  }
  return result;
}

template <class Real>
Real bessel_series(double nu, double x, double& abs_sum) {
  using std::abs;
  using boost::multiprecision::abs;
  abs_sum = 0.0;
  if (x == 0.0) {
    abs_sum = nu == 0.0 ? 1.0 : 0.0;
    return Real(nu == 0.0 ? 1 : 0);
  }
  const Real half_x = Real(x) / 2;
  const Real q = half_x * half_x;
  Real term = Real(std::exp(nu * std::log(x / 2.0) - std::lgamma(nu + 1.0)));
  Real sum = term;
  Real total = abs(term);
  for (int m = 1; m < 2000; ++m) {
    const Real shrink = q / (Real(m) * (Real(m) + Real(nu)));
    term *= -shrink;
    sum += term;
    total += abs(term);
    if (shrink < Real(0.5)) {
      const Real a = abs(term);
      if (a < Real(1e-18) * abs(sum) || a < Real(1e-30)) break;
    }
  }
  abs_sum = static_cast<double>(total);
  return sum;
}

}  // namespace

ScaledReal hermite_eval_scaled(int order, double x) {
  check_order(order, kMaxHermiteOrder);
  if (!std::isfinite(x)) throw std::domain_error("Hermite argument must be finite");
  if (order == 0) return ScaledReal::from_double(1.0);
  if (std::abs(x) > kAsymptoticX) return leading_power(order, x);
  const HermitePair p = hermite_pair(order, x);
  return ScaledReal::from_parts(p.cur, p.exponent);
}

double hermite_eval(int order, double x) { return hermite_eval_scaled(order, x).to_double(); }

double hermite_ratio(int order, double x) {
  check_order(order, kMaxHermiteOrder);
  if (order < 1) throw std::domain_error("hermite_ratio needs order >= 1");
  if (!std::isfinite(x)) throw std::domain_error("Hermite argument must be finite");
  const HermitePair p = hermite_pair(order, x);
  return p.cur / p.prev;
}

std::vector<double> hermite_zeros(int order) {
  check_order(order, kMaxHermiteZerosOrder);
  if (order <= 0) return {};
  if (order == 1) return {0.0};

  // Jacobi matrix of the three-term recurrence: x H_k = H_{k+1}/2 + k H_{k-1}.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order - 1);
  for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> zeros(solver.eigenvalues().data(), solver.eigenvalues().data() + order);
  std::sort(zeros.begin(), zeros.end());

  // Newton on H_m' = 2m H_{m-1}.
  for (double& z : zeros) {
    for (int iter = 0; iter < 8; ++iter) {
      const double step = hermite_ratio(order, z) / (2.0 * order);
      if (!std::isfinite(step)) break;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
  }

  for (int i = 0; i < order / 2; ++i) {
    const double r = 0.5 * (zeros[order - 1 - i] - zeros[i]);
    zeros[i] = -r;
    zeros[order - 1 - i] = r;
  }
  if (order % 2 == 1) zeros[order / 2] = 0.0;
  return zeros;
}

double gamma_fn(double x) {
  if (!(x > 0.0) || !(x <= 200.0)) throw std::domain_error("gamma_fn needs 0 < x <= 200");
  return std::tgamma(x);
}

double log_gamma_fn(double x) {
  if (!(x > 0.0) || !(x <= 200.0)) throw std::domain_error("log_gamma_fn needs 0 < x <= 200");
  return std::lgamma(x);
}

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0 && nu <= 50.0) || !(x >= 0.0 && x <= 100.0)) {
    throw std::domain_error("bessel_j needs 0 <= nu <= 50 and 0 <= x <= 100");
  }
  double abs_sum = 0.0;
  const long double fast = bessel_series<long double>(nu, x, abs_sum);
  // Rounding error of the alternating sum scales with the sum of |terms|.
  if (abs_sum * LDBL_EPSILON * 64 <= 1e-13) return static_cast<double>(fast);
  using boost::multiprecision::cpp_bin_float_100;
  using boost::multiprecision::cpp_bin_float_50;
  if (abs_sum < 1e30) return static_cast<double>(bessel_series<cpp_bin_float_50>(nu, x, abs_sum));
  return static_cast<double>(bessel_series<cpp_bin_float_100>(nu, x, abs_sum));
}

ZeroBracket bessel_zero_bracket(double nu) {
  if (nu == 0.0) return {2.0, 3.0};
  return {std::sqrt(nu * (nu + 2.0)), std::sqrt(nu + 1.0) * (std::sqrt(nu + 2.0) + 1.0)};
}

double bessel_first_zero(double nu) {
  if (!(nu >= 0.0 && nu <= 50.0)) throw std::domain_error("bessel_first_zero needs 0 <= nu <= 50");
  auto [lo, hi] = bessel_zero_bracket(nu);
  // J_nu > 0 on (0, j_nu) and < 0 just past it.
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (bessel_j(nu, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qho
