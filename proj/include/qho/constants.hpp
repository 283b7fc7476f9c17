#pragma once

#include "qho/nodal_exact.hpp"
#include "qho/numeric.hpp"
#include "qho/oscillator.hpp"

namespace qho {

/// gamma(n) = 2^{n-2} n^2 Gamma(n/2)^2 / j_{n/2-1}^n, for 2 <= n <= 50.
double gamma_pleijel(int n);

/// Volume of the unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1); 1 <= n <= 50.
double unit_ball_volume(int n);

/// Faber-Krahn lower bound for the first Dirichlet eigenvalue of a domain of
/// the given volume: volume^{-2/n} sigma_n^{2/n} j_{n/2-1}^2.
double faber_krahn_lower(int n, double volume);

/// Minimum volume of a nodal domain contained in the annulus class A_i
/// (0 <= i < M; i = 0 means no inner cutoff):
/// sigma_n j^n / (lambda - (i/M)^{2/n} lambda)^{n/2}.
/// Throws UnboundedBound for i = M, std::domain_error for other bad arguments.
double nodal_volume_lower(const OscillatorConfig& config, double lambda, int i, int M);

/// Volume of each of the M equal-volume shells of {V <= lambda}:
/// sigma_n lambda^{n/2} / (M prod a_i).
double annulus_volume(const OscillatorConfig& config, double lambda, int M);

struct PleijelIntegral {
  /// n^2 Gamma(n/2)^2 / (4 n!)
  double closed_form = 0.0;
  /// tanh-sinh quadrature of int_0^1 (1 - x^{2/n})^{n/2} dx
  double quadrature = 0.0;
};
/// 2 <= n <= 50.
PleijelIntegral pleijel_integral(int n);

/// G(n, d) = (2 + d)(1 + d)^{n-1}; n, d >= 1.
WideCount milnor_bound(int n, int d);
/// 2 G(n, d): nodal domains of a degree-d polynomial inside the unit ball.
WideCount ball_component_bound(int n, int d);
/// 2^{2n-1} d^{n-1}: nodal domains of a degree-d polynomial restricted to a
/// sphere (or any level set {V = a}).
WideCount sphere_component_bound(int n, int d);

/// 2^{n-5/2} sqrt(pi n) exp(-2 sqrt(n)), the large-n lower envelope of gamma(n)/U(n).
double gamma_u_asymptotic_lower(int n);

struct PleijelReport {
  int n = 0;
  double gamma = 0.0;
  Rational u;
  double u_value = 0.0;
  double ratio = 0.0;  // gamma / U
  double asymptotic_lower = 0.0;
  double bessel_zero = 0.0;  // j_{n/2-1}
  /// ratio > 1; always expected for n <= 21.
  bool gamma_exceeds_u = false;
};

/// 2 <= n <= 50.
PleijelReport gamma_u_report(int n);

}  // namespace qho
