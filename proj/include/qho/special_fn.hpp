#pragma once

#include <vector>

#include "qho/numeric.hpp"

namespace qho {

// Physicists' Hermite polynomials: H_0 = 1, H_1 = 2x,
// H_{m+1}(x) = 2x H_m(x) - 2m H_{m-1}(x).

inline constexpr int kMaxHermiteOrder = 100000;
inline constexpr int kMaxHermiteZerosOrder = 200;

/// H_order(x) by forward recurrence. Values beyond the double range saturate
/// to +-inf; the sign is always exact. Throws std::domain_error for order
/// outside [0, 1e5] or non-finite x.
double hermite_eval(int order, double x);

/// Same recurrence, keeping an explicit base-2 exponent so no value overflows.
ScaledReal hermite_eval_scaled(int order, double x);

/// H_order(x) / H_{order-1}(x), computed without overflow. order >= 1.
double hermite_ratio(int order, double x);

/// The `order` real zeros of H_order in increasing order, symmetric about 0.
/// order 0 gives an empty list; order must not exceed 200.
std::vector<double> hermite_zeros(int order);

/// Gamma(x) for 0 < x <= 200 (returns +inf where the value exceeds the double range).
double gamma_fn(double x);
/// log Gamma(x) for 0 < x <= 200.
double log_gamma_fn(double x);

/// J_nu(x) for 0 <= nu <= 50, 0 <= x <= 100, by its power series.
double bessel_j(double nu, double x);

/// First positive zero of J_nu for 0 <= nu <= 50.
///
/// Bisection seeded from sqrt(nu(nu+2)) < j_nu < sqrt(nu+1)(sqrt(nu+2)+1) for
/// nu > 0 and from [2, 3] for nu = 0.
double bessel_first_zero(double nu);

/// The bracket used to seed bessel_first_zero (nu > 0).
struct ZeroBracket {
  double lower;
  double upper;
};
ZeroBracket bessel_zero_bracket(double nu);

}  // namespace qho
