#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qho/grid_nodal.hpp"
#include "qho/numeric.hpp"
#include "qho/oscillator.hpp"

namespace qho {

/// M = ceil(k^{1/(2n)}), the smallest M with M^{2n} >= k. Grows without bound
/// but slower than k^{1/n}.
int choose_M(std::uint64_t k, std::size_t n);

/// Level sets V = v_i, v_i = (i/M)^{2/n} lambda, i = 0..M, cutting
/// {V < lambda} into M shells of equal volume.
struct AnnulusPartition {
  double lambda = 0.0;
  int M = 1;
  std::size_t n = 1;
  std::vector<double> boundaries;  // v_0 = 0, ..., v_M = lambda
  /// sigma_n lambda^{n/2} / (M prod a_i)
  double shell_volume = 0.0;
};

AnnulusPartition build_partition(const OscillatorConfig& config, double lambda, int M);

/// Volume of {v_{i-1} <= V < v_i}, from the ellipsoid volume formula.
double shell_volume(const OscillatorConfig& config, const AnnulusPartition& partition, int i);

struct ComponentClass {
  enum class Kind { interior, crosser };
  Kind kind = Kind::interior;
  /// Shell i (1..M) holding an interior component; 0 for crossers.
  int shell = 0;
  /// Boundaries j (1..M) whose level V = v_j lies within the component's V-range.
  std::vector<int> crossed;
  /// The V-range sat entirely above lambda on the grid; counted as crossing j = M.
  bool beyond_lambda = false;
};

struct Classification {
  std::vector<ComponentClass> components;
  /// interior_counts[i - 1] = components inside shell i.
  std::vector<std::uint64_t> interior_counts;
  std::uint64_t crosser_count = 0;
  /// crossers_per_boundary[j - 1] = components crossing V = v_j.
  std::vector<std::uint64_t> crossers_per_boundary;
  int resolution = 0;

  std::uint64_t interior_total() const;
};

/// Classifies every grid component as inside one shell (A_i) or crossing at
/// least one boundary (B_j), using V over the component's cell centers.
/// Throws std::invalid_argument if the result has no label grid.
Classification classify(const AnnulusPartition& partition, const NodalCountResult& result,
                        const Combination& comb);

/// Stores the crossed boundaries of each component in result.crossing_flags.
void annotate_crossings(NodalCountResult& result, const Classification& classification);

/// Upper bound on the number of nodal domains in A_i:
/// lambda^n (1 - (i/M)^{2/n})^{n/2} / (j^n M prod a_i); 0 for i = M.
double card_Ai_bound(const OscillatorConfig& config, double lambda, int M, int i);

/// sum_{i=1}^{M} card_Ai_bound.
double interior_bound_sum(const OscillatorConfig& config, double lambda, int M);

/// (1/M) sum_{i=1}^{M} (1 - (i/M)^{2/n})^{n/2}.
double annulus_riemann_sum(int n, int M);

/// M 2^{2n-1} d^{n-1} with d the exact maximal degree at eigenvalue level lambda.
WideCount crossers_bound_at(const OscillatorConfig& config, double lambda, int M);
/// Same, at the k-th eigenvalue of the spectrum.
WideCount crossers_bound(const OscillatorConfig& config, std::uint64_t k, int M);

struct PleijelCertificate {
  std::uint64_t k = 0;
  double eigenvalue = 0.0;
  int M = 1;
  std::uint64_t mu = 0;
  double interior_bound = 0.0;
  WideCount crossers_bound;
  double total_bound = 0.0;
  double mu_over_k = 0.0;
  double total_over_k = 0.0;
  double interior_over_k = 0.0;
  double gamma = 0.0;
  /// mu <= total_bound.
  bool bound_holds = false;
  /// Filled when the k-th result carried a label grid.
  std::optional<Classification> classification;
};

/// Assembles the counting bounds for the k-th eigenfunction. `results[k-1]`
/// is the count for the k-th eigenfunction (exact or grid); grid results
/// carrying labels must come with `combination` to be classified.
PleijelCertificate pleijel_certificate(const OscillatorConfig& config, std::uint64_t k,
                                       std::span<const NodalCountResult> results,
                                       std::optional<int> m_override = std::nullopt,
                                       const Combination* combination = nullptr);

/// Exact count results for the first k eigenfunctions.
std::vector<NodalCountResult> exact_results(const OscillatorConfig& config, std::uint64_t k);

}  // namespace qho
