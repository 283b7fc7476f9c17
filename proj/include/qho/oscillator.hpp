#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qho/numeric.hpp"

namespace qho {

/// Potential V(x) = sum_i a_i^2 x_i^2 with positive frequency coefficients a_i.
class OscillatorConfig {
 public:
  static constexpr std::size_t kMaxDimension = 10;

  /// Throws std::invalid_argument unless 1 <= n <= 10 and every a_i is finite and > 0.
  explicit OscillatorConfig(std::vector<double> coefficients);
  OscillatorConfig(std::initializer_list<double> coefficients)
      : OscillatorConfig(std::vector<double>(coefficients)) {}

  std::size_t dimension() const { return a_.size(); }
  std::span<const double> coefficients() const { return a_; }
  double coefficient(std::size_t i) const { return a_[i]; }

  double a_min() const { return a_min_; }
  double a_sum() const { return a_sum_; }
  double a_product() const { return a_product_; }
  /// Index of the first smallest coefficient.
  std::size_t argmin() const { return argmin_; }

  /// V(x). Throws DimensionMismatch.
  double potential(std::span<const double> x) const;

  bool operator==(const OscillatorConfig&) const = default;

 private:
  std::vector<double> a_;
  double a_min_ = 0.0;
  double a_sum_ = 0.0;
  double a_product_ = 1.0;
  std::size_t argmin_ = 0;
};

/// Quantum numbers (k_1, ..., k_n) of a product eigenfunction.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Throws std::invalid_argument on a negative entry.
  explicit MultiIndex(std::vector<int> k);
  MultiIndex(std::initializer_list<int> k) : MultiIndex(std::vector<int>(k)) {}

  std::size_t size() const { return k_.size(); }
  int operator[](std::size_t i) const { return k_[i]; }
  std::span<const int> values() const { return k_; }

  /// sum k_i, the degree of the polynomial part.
  std::int64_t degree() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> k_;
};

struct SpectrumEntry {
  MultiIndex index;
  double eigenvalue = 0.0;
  std::int64_t degree = 0;
  /// prod (k_i + 1); bounded by the entry count, so 64 bits suffice here.
  std::uint64_t nodal_count = 1;
};

struct EnumerationOptions {
  std::uint64_t budget = 100'000'000;
  /// Outer-coordinate partitions; output is identical for any value.
  unsigned workers = 1;
};

/// sum a_i (2 k_i + 1), accumulated in index order.
double eigenvalue(const OscillatorConfig& config, const MultiIndex& index);

/// prod_i exp(-a_i x_i^2 / 2) H_{k_i}(sqrt(a_i) x_i). Requires |x_i| <= 50.
double eigenfunction_eval(const OscillatorConfig& config, const MultiIndex& index,
                          std::span<const double> x);

/// prod_i H_{k_i}(sqrt(a_i) x_i), the polynomial part; same sign as the eigenfunction.
ScaledReal eigenfunction_polynomial(const OscillatorConfig& config, const MultiIndex& index,
                                    std::span<const double> x);

/// Every multi-index with eigenvalue <= lambda_max, sorted by (eigenvalue, index);
/// empty below the ground state. Throws BudgetExceeded past the budget.
std::vector<SpectrumEntry> enumerate_spectrum(const OscillatorConfig& config, double lambda_max,
                                              const EnumerationOptions& options = {});

/// The first k entries of the sorted spectrum.
std::vector<SpectrumEntry> first_eigenpairs(const OscillatorConfig& config, std::uint64_t k,
                                            const EnumerationOptions& options = {});

/// N(lambda): number of multi-indices with eigenvalue <= lambda, counted without
/// materializing them. Zero below the ground state.
std::uint64_t counting_function(const OscillatorConfig& config, double lambda,
                                std::uint64_t budget = EnumerationOptions{}.budget);

/// Leading Weyl term lambda^n / (2^n n! prod a_i).
double weyl_estimate(const OscillatorConfig& config, double lambda);

/// Degree bounds at a given eigenvalue level.
struct DegreeBounds {
  /// max sum k_i over the lattice simplex: floor((lambda - a_sum) / (2 a_min)).
  std::int64_t exact = 0;
  /// (lambda - a_sum) / (2 a_min), the continuous simplex optimum.
  double simplex = 0.0;
  /// (lambda - n/2) / (2 a_min), the form printed alongside the degree estimate.
  double printed = 0.0;
};

/// Throws std::domain_error if lambda < a_sum.
std::int64_t max_degree(const OscillatorConfig& config, double lambda);
DegreeBounds degree_bounds(const OscillatorConfig& config, double lambda);

/// k^{1/n} (2^n n! prod a_i)^{1/n}, the leading growth of the k-th eigenvalue.
double lambda_k_bound(const OscillatorConfig& config, std::uint64_t k);

/// True when |x - y| <= 1e-9 max(|x|, |y|).
bool eigenvalues_coincide(double x, double y);

}  // namespace qho
