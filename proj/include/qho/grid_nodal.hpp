#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qho/numeric.hpp"
#include "qho/oscillator.hpp"

namespace qho {

struct Term {
  double coefficient = 1.0;
  MultiIndex index;
};

/// Finite linear combination sum_t c_t f_{k_t} of product eigenfunctions.
class Combination {
 public:
  /// Throws std::invalid_argument for an empty term list or a zero/non-finite
  /// coefficient, DimensionMismatch for an index of the wrong length.
  Combination(OscillatorConfig config, std::vector<Term> terms);
  static Combination single(OscillatorConfig config, MultiIndex index, double coefficient = 1.0);

  const OscillatorConfig& config() const { return config_; }
  std::span<const Term> terms() const { return terms_; }
  /// max over terms of sum k_i.
  std::int64_t degree() const { return degree_; }
  /// Largest eigenvalue among the terms.
  double max_eigenvalue() const { return max_eigenvalue_; }

  /// sum_t c_t f_{k_t}(x).
  double eval(std::span<const double> x) const;
  /// sum_t c_t prod_i H_{k_ti}(sqrt(a_i) x_i). Same sign as eval() everywhere;
  /// the shared Gaussian factor is dropped.
  ScaledReal eval_polynomial(std::span<const double> x) const;

 private:
  OscillatorConfig config_;
  std::vector<Term> terms_;
  std::int64_t degree_ = 0;
  double max_eigenvalue_ = 0.0;
};

/// Real polynomial in monomial form, sum_alpha c_alpha x^alpha.
class Polynomial {
 public:
  struct Monomial {
    std::vector<int> exponents;
    double coefficient = 0.0;
  };
  Polynomial(std::size_t dimension, std::vector<Monomial> monomials);

  std::size_t dimension() const { return dimension_; }
  int degree() const { return degree_; }
  std::span<const Monomial> monomials() const { return monomials_; }
  double eval(std::span<const double> x) const;

 private:
  std::size_t dimension_;
  std::vector<Monomial> monomials_;
  int degree_ = 0;
};

/// Uniform grid over the symmetric box prod_i [-R_i, R_i].
struct GridSpec {
  std::vector<double> half_widths;
  int resolution = 256;  // cells per axis

  std::size_t dimension() const { return half_widths.size(); }
  double cell_width(std::size_t axis) const { return 2.0 * half_widths[axis] / resolution; }
  /// Cell-center coordinate, (c + 1/2 - res/2) h; exactly antisymmetric about 0.
  double center(std::size_t axis, int cell) const {
    return (static_cast<double>(cell) + 0.5 - 0.5 * resolution) * cell_width(axis);
  }
  /// resolution^n; saturates at UINT64_MAX.
  std::uint64_t cell_count() const;
  /// Throws std::invalid_argument unless R_i > 0 and resolution >= 16.
  void validate() const;
};

inline constexpr std::uint64_t kDefaultCellBudget = 1'000'000'000;

enum class Region {
  box,        // every cell of the grid
  unit_ball,  // only cells whose center lies in the closed unit ball
};

struct GridOptions {
  std::uint64_t cell_budget = kDefaultCellBudget;
  /// Slabs labeled concurrently; results are identical for any value.
  unsigned workers = 1;
  Region region = Region::box;
  /// Keep the finest label grid in the result (needed by classify()).
  bool keep_labels = true;
};

/// R_i = margin sqrt(lambda_max) / a_i: the bounding box of {V <= lambda_max},
/// widened by `margin` (>= 1).
std::vector<double> default_box(const Combination& comb, double margin = 1.25);

/// 256 cells per axis in 2D, 64 in 3D and above, 1024 in 1D.
int default_resolution(std::size_t dimension);

enum class CountMethod { exact, grid };

struct ComponentInfo {
  /// Cell center of minimal V in the component (first in raster order on ties).
  std::vector<double> witness;
  int sign = 0;
  std::uint64_t cell_count = 0;
  /// V over the component's cell centers.
  double v_min = 0.0;
  double v_max = 0.0;
};

/// Labels in row-major order (last axis fastest); -1 marks unlabeled cells
/// (zero value or outside the region).
struct LabelGrid {
  GridSpec spec;
  std::vector<std::int32_t> labels;
};

struct RefinementStep {
  int resolution = 0;
  std::uint64_t count = 0;
};

struct NodalCountResult {
  std::uint64_t count = 0;
  CountMethod method = CountMethod::grid;
  int resolution = 0;
  std::vector<RefinementStep> refinement_history;
  /// One entry per component, in label order.
  std::vector<ComponentInfo> components;
  /// Per component, annulus boundary indices j crossed (filled by annuli).
  std::vector<std::vector<int>> crossing_flags;
  /// Two consecutive levels agreed.
  bool converged = false;
  /// Level of the classically allowed region {V <= lambda_max} for the field.
  double lambda_max = 0.0;
  /// V-variation across one cell diagonal near {V = lambda_max}.
  double potential_tolerance = 0.0;
  std::optional<LabelGrid> label_grid;

  std::vector<std::vector<double>> witnesses() const;
};

/// The exact count prod (k_i + 1) packaged as a result (method = exact).
NodalCountResult exact_count_result(const MultiIndex& index, double eigenvalue);

/// Samples the polynomial part at every cell center, unions face-adjacent
/// cells of equal nonzero sign and repeats at doubled resolution;
/// `refinements` levels in total (resolution, 2x, 4x, ...). The count comes
/// from the finest level. Throws BudgetExceeded if the finest level exceeds
/// the cell budget, DegenerateField if every sampled value vanishes.
NodalCountResult count_nodal_domains(const Combination& comb, const GridSpec& spec, int refinements,
                                     const GridOptions& options = {});

/// Doubles the resolution from `initial_resolution` on the default box until
/// two consecutive levels agree or `max_refinements` levels were evaluated;
/// in the latter case converged is false.
NodalCountResult stabilized_count(const Combination& comb, int initial_resolution, int max_refinements,
                                  const GridOptions& options = {}, double margin = 1.25);

/// Sign components of an arbitrary field. `potential` supplies V for witness
/// selection and the V-ranges of components.
using ScalarField = std::function<ScaledReal(std::span<const double>)>;
NodalCountResult count_sign_components(const ScalarField& field, const OscillatorConfig& potential,
                                       const GridSpec& spec, int refinements, const GridOptions& options = {});

/// Grid count of a polynomial inside the unit ball: grid over [-1, 1]^n, cells
/// outside the ball left unlabeled.
NodalCountResult count_polynomial_in_ball(const Polynomial& poly, int resolution, int refinements,
                                          const GridOptions& options = {});

/// 2 sqrt(lambda) D + D^2, D = sqrt(sum a_i^2 h_i^2): bound on the change of V
/// across one cell wherever V <= lambda.
double cell_potential_tolerance(const OscillatorConfig& config, const GridSpec& spec, double lambda);

/// Binary label dump: "QHOG", u32 version (1), u32 n, u32 resolution per
/// axis, f64 (lo, hi) per axis, then i32 labels, all little-endian.
void write_label_grid(std::ostream& out, const LabelGrid& grid);
LabelGrid read_label_grid(std::istream& in);

}  // namespace qho
