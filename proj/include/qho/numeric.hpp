#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qho {

/// Arbitrary-width integer for exact counts (nodal counts, Milnor bounds).
using WideCount = boost::multiprecision::cpp_int;
/// Exact rational, used for U(n) = n!/n^n.
using Rational = boost::multiprecision::cpp_rational;

/// A real number stored as mantissa * 2^exponent.
///
/// High-order Hermite values leave the double range long before the sign of
/// the value stops mattering, so evaluation carries its own exponent. The
/// mantissa is either exactly zero or normalized to [0.5, 1) in magnitude.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;

  static ScaledReal from_double(double value) {
    ScaledReal r;
    if (value == 0.0 || !std::isfinite(value)) {
      r.mantissa_ = value == 0.0 ? 0.0 : value;
      return r;
    }
    int e = 0;
    r.mantissa_ = std::frexp(value, &e);
    r.exponent_ = e;
    return r;
  }

  static ScaledReal from_parts(double mantissa, std::int64_t exponent) {
    ScaledReal r = from_double(mantissa);
    if (r.mantissa_ != 0.0) r.exponent_ += exponent;
    return r;
  }

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  int sign() const { return (mantissa_ > 0.0) - (mantissa_ < 0.0); }
  bool is_zero() const { return mantissa_ == 0.0; }

  /// log2 |value|; -inf for zero.
  double log2_abs() const {
    if (mantissa_ == 0.0) return -INFINITY;
    return std::log2(std::abs(mantissa_)) + static_cast<double>(exponent_);
  }

  /// Saturates to +-inf or 0 outside the double range.
  double to_double() const {
    if (mantissa_ == 0.0) return 0.0;
    if (exponent_ > 2000) return mantissa_ > 0 ? INFINITY : -INFINITY;
    if (exponent_ < -2000) return 0.0 * mantissa_;
    return std::ldexp(mantissa_, static_cast<int>(exponent_));
  }

  /// |value| < threshold, compared without leaving the scaled representation.
  bool abs_below(double threshold) const {
    if (mantissa_ == 0.0) return true;
    return log2_abs() < std::log2(threshold);
  }

  ScaledReal& operator*=(const ScaledReal& other) {
    if (mantissa_ == 0.0 || other.mantissa_ == 0.0) {
      *this = ScaledReal{};
      return *this;
    }
    *this = from_parts(mantissa_ * other.mantissa_, exponent_ + other.exponent_);
    return *this;
  }

  ScaledReal& operator*=(double factor) { return *this *= from_double(factor); }

  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { return a *= b; }

  friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
    if (a.mantissa_ == 0.0) return b;
    if (b.mantissa_ == 0.0) return a;
    const ScaledReal& hi = a.exponent_ >= b.exponent_ ? a : b;
    const ScaledReal& lo = a.exponent_ >= b.exponent_ ? b : a;
    const std::int64_t shift = hi.exponent_ - lo.exponent_;
    // Beyond 1100 bits the smaller operand cannot affect a double mantissa.
    const double lo_aligned = shift > 1100 ? 0.0 : std::ldexp(lo.mantissa_, -static_cast<int>(shift));
    return from_parts(hi.mantissa_ + lo_aligned, hi.exponent_);
  }

 private:
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

inline std::string to_string(const WideCount& value) { return value.str(); }

}  // namespace qho
