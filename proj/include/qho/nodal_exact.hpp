#pragma once

#include <cstdint>
#include <vector>

#include "qho/numeric.hpp"
#include "qho/oscillator.hpp"

namespace qho {

/// prod (k_i + 1): nodal domains of the product eigenfunction f_k.
WideCount exact_nodal_count(const MultiIndex& index);

/// sup prod k_i over real k_i >= 0 with sum a_i k_i <= lambda, i.e.
/// lambda^n / (n^n prod a_i).
double continuous_sup(const OscillatorConfig& config, double lambda);

/// Maximal prod (k_i + 1) over lattice points with eigenvalue <= lambda.
///
/// Depth-first over the simplex, pruning any branch whose continuous
/// relaxation cannot beat the best product found so far. Throws
/// std::domain_error below the ground state and BudgetExceeded when more
/// than `budget` nodes are visited.
std::uint64_t mu_max(const OscillatorConfig& config, double lambda,
                     std::uint64_t budget = EnumerationOptions{}.budget);

/// Continuous bounds sandwiching mu_max(lambda).
struct MuBounds {
  /// continuous_sup((lambda - a_sum) / 2); floor of the real optimizer shows mu_max >= this.
  double lower = 0.0;
  /// continuous_sup((lambda + a_sum) / 2); substitute u_i = k_i + 1.
  double upper = 0.0;
};
MuBounds mu_bounds(const OscillatorConfig& config, double lambda);

struct RatioEntry {
  std::uint64_t k = 0;
  double eigenvalue = 0.0;
  std::uint64_t nodal_count = 0;
  double ratio = 0.0;  // nodal_count / k
};

struct TailMax {
  std::uint64_t window_end = 0;  // K; the window is [ceil(K/2), K]
  double max_ratio = 0.0;
};

/// mu(f_k)/k along the spectrum, with limsup surrogates.
struct RatioSeries {
  std::vector<RatioEntry> entries;
  /// Tail maxima for K = k_max, k_max/2, k_max/4, ..., 1.
  std::vector<TailMax> tail;
  /// Set when two eigenvalues among the first k_max coincide to 1e-9 relative.
  bool degenerate = false;
  /// First k at which the coincidence was observed (0 if none).
  std::uint64_t first_degenerate_k = 0;
};

/// Runs the first k_max eigenfunctions through exact_nodal_count. Degeneracy
/// does not stop the run; ties keep the lexicographic order of the spectrum.
RatioSeries ratio_experiment(const OscillatorConfig& config, std::uint64_t k_max,
                             const EnumerationOptions& options = {});

/// max of ratio over k in [ceil(K/2), K]; K must not exceed the series length.
double tail_max(const RatioSeries& series, std::uint64_t window_end);

/// U(n) = n!/n^n.
struct UConstant {
  Rational exact;
  double value = 0.0;
};
/// 1 <= n <= 50.
UConstant u_constant(int n);

}  // namespace qho
