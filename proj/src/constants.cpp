#include "qho/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "qho/errors.hpp"
#include "qho/special_fn.hpp"

namespace qho {
namespace {

void check_range(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    throw std::domain_error(std::string(what) + " needs " + std::to_string(lo) + " <= n <= " + std::to_string(hi));
  }
}

double bessel_zero_for_dimension(int n) { return bessel_first_zero(0.5 * n - 1.0); }

WideCount wide_pow(int base, int exponent) {
  WideCount r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

double gamma_pleijel(int n) {
  check_range(n, 2, 50, "gamma_pleijel");
  const double j = bessel_zero_for_dimension(n);
  const double g = gamma_fn(0.5 * n);
  return std::ldexp(static_cast<double>(n) * n * g * g, n - 2) / std::pow(j, n);
}

double unit_ball_volume(int n) {
  check_range(n, 1, 50, "unit_ball_volume");
  return std::pow(std::numbers::pi, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

double faber_krahn_lower(int n, double volume) {
  check_range(n, 2, 50, "faber_krahn_lower");
  if (!(volume > 0.0)) throw std::domain_error("faber_krahn_lower needs a positive volume");
  const double j = bessel_zero_for_dimension(n);
  const double e = 2.0 / n;
  return std::pow(1.0 / volume, e) * std::pow(unit_ball_volume(n), e) * j * j;
}

double nodal_volume_lower(const OscillatorConfig& config, double lambda, int i, int M) {
  const int n = static_cast<int>(config.dimension());
  check_range(n, 2, 50, "nodal_volume_lower");
  if (!(lambda > 0.0) || M < 1 || i < 0 || i > M) {
    throw std::domain_error("nodal_volume_lower needs lambda > 0 and 0 <= i <= M, M >= 1");
  }
  if (i == M) throw UnboundedBound("Faber-Krahn volume bound diverges on the outermost annulus (i = M)");
  const double j = bessel_zero_for_dimension(n);
  const double gap = lambda - std::pow(static_cast<double>(i) / M, 2.0 / n) * lambda;
  return unit_ball_volume(n) * std::pow(j, n) / std::pow(gap, 0.5 * n);
}

double annulus_volume(const OscillatorConfig& config, double lambda, int M) {
  const int n = static_cast<int>(config.dimension());
  if (M < 1) throw std::domain_error("annulus_volume needs M >= 1");
  return unit_ball_volume(n) * std::pow(lambda, 0.5 * n) / (M * config.a_product());
}

PleijelIntegral pleijel_integral(int n) {
  check_range(n, 2, 50, "pleijel_integral");
  PleijelIntegral out;
  const double g = gamma_fn(0.5 * n);
  out.closed_form = static_cast<double>(n) * n * g * g / (4.0 * gamma_fn(n + 1.0));

  const double exponent = 2.0 / n;
  const double power = 0.5 * n;
  auto integrand = [&](double x) {
    const double base = 1.0 - std::pow(x, exponent);
    return base <= 0.0 ? 0.0 : std::pow(base, power);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  out.quadrature = integrator.integrate(integrand, 0.0, 1.0, 1e-14);
  return out;
}

WideCount milnor_bound(int n, int d) {
  if (n < 1 || d < 1) throw std::domain_error("milnor_bound needs n, d >= 1");
  return WideCount(2 + d) * wide_pow(1 + d, n - 1);
}

WideCount ball_component_bound(int n, int d) { return 2 * milnor_bound(n, d); }

WideCount sphere_component_bound(int n, int d) {
  if (n < 1 || d < 1) throw std::domain_error("sphere_component_bound needs n, d >= 1");
  return wide_pow(2, 2 * n - 1) * wide_pow(d, n - 1);
}

double gamma_u_asymptotic_lower(int n) {
  return std::pow(2.0, n - 2.5) * std::sqrt(std::numbers::pi * n) * std::exp(-2.0 * std::sqrt(static_cast<double>(n)));
}

PleijelReport gamma_u_report(int n) {
  check_range(n, 2, 50, "gamma_u_report");
  PleijelReport r;
  r.n = n;
  r.bessel_zero = bessel_zero_for_dimension(n);
  r.gamma = gamma_pleijel(n);
  const UConstant u = u_constant(n);
  r.u = u.exact;
  r.u_value = u.value;
  r.ratio = r.gamma / r.u_value;
  r.asymptotic_lower = gamma_u_asymptotic_lower(n);
  r.gamma_exceeds_u = r.ratio > 1.0;
  return r;
}

}  // namespace qho
