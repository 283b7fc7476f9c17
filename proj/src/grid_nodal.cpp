#include "qho/grid_nodal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "qho/errors.hpp"
#include "qho/nodal_exact.hpp"
#include "qho/special_fn.hpp"

namespace qho {
namespace {

constexpr double kZeroThreshold = 1e-300;
constexpr std::uint64_t kMaxIndexableCells = std::numeric_limits<std::uint32_t>::max() - 1;

// Row-major layout, last axis fastest.
struct Layout {
  std::size_t n = 0;
  int resolution = 0;
  std::vector<std::uint64_t> stride;
  std::uint64_t cells = 0;

  explicit Layout(const GridSpec& spec) : n(spec.dimension()), resolution(spec.resolution), stride(n) {
    std::uint64_t s = 1;
    for (std::size_t i = n; i-- > 0;) {
      stride[i] = s;
      s *= static_cast<std::uint64_t>(resolution);
    }
    cells = s;
  }

  std::uint64_t slab_size() const { return stride[0]; }
};

// Runs body(c0_begin, c0_end) over contiguous slabs of the first axis.
template <class Body>
std::vector<int> for_each_slab(int resolution, unsigned workers, Body body) {
  const int parts = static_cast<int>(std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(resolution)));
  std::vector<int> bounds(parts + 1);
  for (int p = 0; p <= parts; ++p) bounds[p] = static_cast<int>(static_cast<std::int64_t>(resolution) * p / parts);
  if (parts == 1) {
    body(0, resolution);
  } else {
    std::vector<std::thread> threads;
    for (int p = 0; p < parts; ++p) threads.emplace_back(body, bounds[p], bounds[p + 1]);
    for (auto& t : threads) t.join();
  }
  return bounds;
}

// Walks cell coordinates of one slab in raster order.
class Odometer {
 public:
  Odometer(const Layout& layout, int c0) : layout_(layout), c_(layout.n, 0) { c_[0] = c0; }
  const std::vector<int>& coords() const { return c_; }
  void next() {
    for (std::size_t i = layout_.n; i-- > 0;) {
      if (++c_[i] < layout_.resolution) return;
      c_[i] = 0;
    }
  }

 private:
  const Layout& layout_;
  std::vector<int> c_;
};

bool in_region(const GridSpec& spec, Region region, const std::vector<int>& c) {
  if (region == Region::box) return true;
  double r2 = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = spec.center(i, c[i]);
    r2 += x * x;
  }
  return r2 <= 1.0;
}

std::int8_t sign_of(const ScaledReal& v) {
  if (v.abs_below(kZeroThreshold)) return 0;
  return static_cast<std::int8_t>(v.sign());
}

using Signs = std::vector<std::int8_t>;

Signs sample_combination(const Combination& comb, const GridSpec& spec, const GridOptions& options) {
  const Layout layout(spec);
  const auto& config = comb.config();
  const auto terms = comb.terms();

  // table[axis][order] = H_order(sqrt(a) x_c) at every cell center c.
  std::vector<std::map<int, std::vector<ScaledReal>>> table(layout.n);
  for (const auto& term : terms) {
    for (std::size_t i = 0; i < layout.n; ++i) {
      auto [it, inserted] = table[i].try_emplace(term.index[i]);
      if (!inserted) continue;
      it->second.resize(spec.resolution);
      const double root_a = std::sqrt(config.coefficient(i));
      for (int c = 0; c < spec.resolution; ++c) {
        it->second[c] = hermite_eval_scaled(term.index[i], root_a * spec.center(i, c));
      }
    }
  }
  std::vector<std::vector<const std::vector<ScaledReal>*>> columns(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (std::size_t i = 0; i < layout.n; ++i) columns[t].push_back(&table[i].at(terms[t].index[i]));
  }

  Signs signs(layout.cells, 0);
  for_each_slab(spec.resolution, options.workers, [&](int c0_begin, int c0_end) {
    Odometer odo(layout, c0_begin);
    const std::uint64_t end = static_cast<std::uint64_t>(c0_end) * layout.slab_size();
    for (std::uint64_t idx = static_cast<std::uint64_t>(c0_begin) * layout.slab_size(); idx < end; ++idx, odo.next()) {
      const auto& c = odo.coords();
      if (!in_region(spec, options.region, c)) continue;
      // Same operation order as Combination::eval_polynomial.
      ScaledReal sum;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        ScaledReal p = ScaledReal::from_double(1.0);
        for (std::size_t i = 0; i < layout.n; ++i) p *= (*columns[t][i])[c[i]];
        p *= terms[t].coefficient;
        sum = sum + p;
      }
      signs[idx] = sign_of(sum);
    }
  });
  return signs;
}

Signs sample_field(const ScalarField& field, const GridSpec& spec, const GridOptions& options) {
  const Layout layout(spec);
  Signs signs(layout.cells, 0);
  for_each_slab(spec.resolution, options.workers, [&](int c0_begin, int c0_end) {
    Odometer odo(layout, c0_begin);
    std::vector<double> x(layout.n);
    const std::uint64_t end = static_cast<std::uint64_t>(c0_end) * layout.slab_size();
    for (std::uint64_t idx = static_cast<std::uint64_t>(c0_begin) * layout.slab_size(); idx < end; ++idx, odo.next()) {
      const auto& c = odo.coords();
      if (!in_region(spec, options.region, c)) continue;
      for (std::size_t i = 0; i < layout.n; ++i) x[i] = spec.center(i, c[i]);
      signs[idx] = sign_of(field(x));
    }
  });
  return signs;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::uint64_t size) : parent_(size) {}

  void make(std::uint32_t x) { parent_[x] = x; }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index always becomes the root, so every root is the first
  // cell of its set in raster order.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Labeling {
  std::vector<std::int32_t> labels;
  std::vector<ComponentInfo> components;
};

Labeling label_signs(const Signs& signs, const GridSpec& spec, const OscillatorConfig& potential,
                     unsigned workers) {
  const Layout layout(spec);
  DisjointSets sets(layout.cells);

  auto link = [&](std::uint64_t idx, std::uint64_t nb) {
    if (signs[nb] == signs[idx]) sets.unite(static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(nb));
  };

  // Slabs touch only their own parent entries.
  const auto bounds = for_each_slab(spec.resolution, workers, [&](int c0_begin, int c0_end) {
    Odometer odo(layout, c0_begin);
    const std::uint64_t end = static_cast<std::uint64_t>(c0_end) * layout.slab_size();
    for (std::uint64_t idx = static_cast<std::uint64_t>(c0_begin) * layout.slab_size(); idx < end; ++idx, odo.next()) {
      if (signs[idx] == 0) continue;
      sets.make(static_cast<std::uint32_t>(idx));
      const auto& c = odo.coords();
      if (c[0] > c0_begin) link(idx, idx - layout.stride[0]);
      for (std::size_t i = 1; i < layout.n; ++i) {
        if (c[i] > 0) link(idx, idx - layout.stride[i]);
      }
    }
  });
  // Seams between slabs.
  for (std::size_t p = 1; p + 1 < bounds.size(); ++p) {
    const std::uint64_t begin = static_cast<std::uint64_t>(bounds[p]) * layout.slab_size();
    for (std::uint64_t idx = begin; idx < begin + layout.slab_size(); ++idx) {
      if (signs[idx] != 0) link(idx, idx - layout.stride[0]);
    }
  }

  Labeling out;
  out.labels.assign(layout.cells, -1);
  Odometer odo(layout, 0);
  std::vector<double> x(layout.n);
  for (std::uint64_t idx = 0; idx < layout.cells; ++idx, odo.next()) {
    if (signs[idx] == 0) continue;
    const auto& c = odo.coords();
    for (std::size_t i = 0; i < layout.n; ++i) x[i] = spec.center(i, c[i]);
    const double v = potential.potential(x);
    const std::uint32_t root = sets.find(static_cast<std::uint32_t>(idx));
    std::int32_t label;
    if (root == idx) {
      label = static_cast<std::int32_t>(out.components.size());
      ComponentInfo info;
      info.sign = signs[idx];
      info.v_min = v;
      info.v_max = v;
      info.witness = x;
      out.components.push_back(std::move(info));
    } else {
      label = out.labels[root];
    }
    out.labels[idx] = label;
    ComponentInfo& info = out.components[label];
    ++info.cell_count;
    if (v < info.v_min) {
      info.v_min = v;
      info.witness = x;
    }
    info.v_max = std::max(info.v_max, v);
  }
  return out;
}

void check_cells(const GridSpec& spec, const GridOptions& options) {
  const std::uint64_t cells = spec.cell_count();
  const std::uint64_t budget = std::min(options.cell_budget, kMaxIndexableCells);
  if (cells > budget) throw BudgetExceeded("grid exceeds the cell budget", cells, budget);
}

GridSpec at_level(const GridSpec& base, int level) {
  GridSpec s = base;
  s.resolution = base.resolution << level;
  return s;
}

using Sampler = std::function<Signs(const GridSpec&)>;

NodalCountResult run_levels(const Sampler& sample, const OscillatorConfig& potential, const GridSpec& base,
                            int levels, bool stop_on_agreement, const GridOptions& options) {
  base.validate();
  if (levels < 1) throw std::invalid_argument("at least one refinement level is required");
  if (levels > 24) throw std::invalid_argument("too many refinement levels");
  if (!stop_on_agreement) check_cells(at_level(base, levels - 1), options);

  NodalCountResult result;
  result.method = CountMethod::grid;
  Labeling last;
  GridSpec last_spec = base;
  for (int level = 0; level < levels; ++level) {
    const GridSpec spec = at_level(base, level);
    check_cells(spec, options);
    const Signs signs = sample(spec);
    if (std::none_of(signs.begin(), signs.end(), [](std::int8_t s) { return s != 0; })) {
      throw DegenerateField("every sampled value vanished");
    }
    last = label_signs(signs, spec, potential, options.workers);
    last_spec = spec;
    const std::uint64_t count = last.components.size();
    const bool agrees = !result.refinement_history.empty() && result.refinement_history.back().count == count;
    result.refinement_history.push_back({spec.resolution, count});
    result.converged = agrees;
    if (agrees && stop_on_agreement) break;
  }
  result.count = last.components.size();
  result.resolution = last_spec.resolution;
  result.components = std::move(last.components);
  result.crossing_flags.assign(result.count, {});
  if (options.keep_labels) result.label_grid = LabelGrid{last_spec, std::move(last.labels)};
  return result;
}

void check_grid_dimension(const OscillatorConfig& config, const GridSpec& spec) {
  if (spec.dimension() != config.dimension()) throw DimensionMismatch(config.dimension(), spec.dimension());
}

template <class T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  char bytes[sizeof(T)];
  for (std::size_t b = 0; b < sizeof(T); ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  out.write(bytes, sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw std::runtime_error("truncated label grid");
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) bits |= static_cast<U>(bytes[b]) << (8 * b);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

}  // namespace

Combination::Combination(OscillatorConfig config, std::vector<Term> terms)
    : config_(std::move(config)), terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("a combination needs at least one term");
  max_eigenvalue_ = 0.0;
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coefficient) || t.coefficient == 0.0) {
      throw std::invalid_argument("combination coefficients must be finite and nonzero");
    }
    if (t.index.size() != config_.dimension()) throw DimensionMismatch(config_.dimension(), t.index.size());
    degree_ = std::max(degree_, t.index.degree());
    max_eigenvalue_ = std::max(max_eigenvalue_, eigenvalue(config_, t.index));
  }
}

Combination Combination::single(OscillatorConfig config, MultiIndex index, double coefficient) {
  return Combination(std::move(config), {Term{coefficient, std::move(index)}});
}

ScaledReal Combination::eval_polynomial(std::span<const double> x) const {
  if (x.size() != config_.dimension()) throw DimensionMismatch(config_.dimension(), x.size());
  ScaledReal sum;
  for (const auto& t : terms_) {
    ScaledReal p = eigenfunction_polynomial(config_, t.index, x);
    p *= t.coefficient;
    sum = sum + p;
  }
  return sum;
}

double Combination::eval(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coefficient * eigenfunction_eval(config_, t.index, x);
  return sum;
}

Polynomial::Polynomial(std::size_t dimension, std::vector<Monomial> monomials)
    : dimension_(dimension), monomials_(std::move(monomials)) {
  if (dimension_ == 0) throw std::invalid_argument("polynomial dimension must be positive");
  for (const auto& m : monomials_) {
    if (m.exponents.size() != dimension_) throw DimensionMismatch(dimension_, m.exponents.size());
    int total = 0;
    for (int e : m.exponents) {
      if (e < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
      total += e;
    }
    if (m.coefficient != 0.0) degree_ = std::max(degree_, total);
  }
}

double Polynomial::eval(std::span<const double> x) const {
  if (x.size() != dimension_) throw DimensionMismatch(dimension_, x.size());
  double sum = 0.0;
  for (const auto& m : monomials_) {
    double term = m.coefficient;
    for (std::size_t i = 0; i < dimension_; ++i) {
      for (int e = 0; e < m.exponents[i]; ++e) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

std::uint64_t GridSpec::cell_count() const {
  std::uint64_t cells = 1;
  const auto r = static_cast<std::uint64_t>(resolution);
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (cells > std::numeric_limits<std::uint64_t>::max() / r) return std::numeric_limits<std::uint64_t>::max();
    cells *= r;
  }
  return cells;
}

void GridSpec::validate() const {
  if (half_widths.empty()) throw std::invalid_argument("grid needs at least one axis");
  if (resolution < 16) throw std::invalid_argument("grid resolution must be at least 16");
  for (double r : half_widths) {
    if (!std::isfinite(r) || !(r > 0.0)) throw std::invalid_argument("grid half-widths must be positive");
  }
}

std::vector<double> default_box(const Combination& comb, double margin) {
  if (!(margin >= 1.0)) throw std::invalid_argument("box margin must be at least 1");
  const auto& config = comb.config();
  std::vector<double> r(config.dimension());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = margin * std::sqrt(comb.max_eigenvalue()) / config.coefficient(i);
  return r;
}

int default_resolution(std::size_t dimension) {
  if (dimension <= 1) return 1024;
  if (dimension == 2) return 256;
  return 64;
}

std::vector<std::vector<double>> NodalCountResult::witnesses() const {
  std::vector<std::vector<double>> w;
  w.reserve(components.size());
  for (const auto& c : components) w.push_back(c.witness);
  return w;
}

NodalCountResult exact_count_result(const MultiIndex& index, double eigenvalue) {
  NodalCountResult r;
  r.method = CountMethod::exact;
  r.count = static_cast<std::uint64_t>(exact_nodal_count(index));
  r.converged = true;
  r.lambda_max = eigenvalue;
  return r;
}

double cell_potential_tolerance(const OscillatorConfig& config, const GridSpec& spec, double lambda) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    const double h = spec.cell_width(i);
    d2 += config.coefficient(i) * config.coefficient(i) * h * h;
  }
  return 2.0 * std::sqrt(std::max(lambda, 0.0) * d2) + d2;
}

NodalCountResult count_nodal_domains(const Combination& comb, const GridSpec& spec, int refinements,
                                     const GridOptions& options) {
  check_grid_dimension(comb.config(), spec);
  auto sampler = [&](const GridSpec& s) { return sample_combination(comb, s, options); };
  NodalCountResult r = run_levels(sampler, comb.config(), spec, refinements, false, options);
  r.lambda_max = comb.max_eigenvalue();
  r.potential_tolerance = cell_potential_tolerance(comb.config(), at_level(spec, refinements - 1), r.lambda_max);
  return r;
}

NodalCountResult stabilized_count(const Combination& comb, int initial_resolution, int max_refinements,
                                  const GridOptions& options, double margin) {
  const GridSpec spec{default_box(comb, margin), initial_resolution};
  auto sampler = [&](const GridSpec& s) { return sample_combination(comb, s, options); };
  NodalCountResult r = run_levels(sampler, comb.config(), spec, max_refinements, true, options);
  r.lambda_max = comb.max_eigenvalue();
  r.potential_tolerance = cell_potential_tolerance(comb.config(), GridSpec{spec.half_widths, r.resolution},
                                                   r.lambda_max);
  return r;
}

NodalCountResult count_sign_components(const ScalarField& field, const OscillatorConfig& potential,
                                       const GridSpec& spec, int refinements, const GridOptions& options) {
  check_grid_dimension(potential, spec);
  auto sampler = [&](const GridSpec& s) { return sample_field(field, s, options); };
  return run_levels(sampler, potential, spec, refinements, false, options);
}

NodalCountResult count_polynomial_in_ball(const Polynomial& poly, int resolution, int refinements,
                                          const GridOptions& options) {
  GridOptions ball = options;
  ball.region = Region::unit_ball;
  const GridSpec spec{std::vector<double>(poly.dimension(), 1.0), resolution};
  const OscillatorConfig unit(std::vector<double>(poly.dimension(), 1.0));
  auto field = [&](std::span<const double> x) { return ScaledReal::from_double(poly.eval(x)); };
  return count_sign_components(field, unit, spec, refinements, ball);
}

void write_label_grid(std::ostream& out, const LabelGrid& grid) {
  out.write("QHOG", 4);
  put_le<std::uint32_t>(out, 1);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.spec.dimension()));
  for (std::size_t i = 0; i < grid.spec.dimension(); ++i) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.spec.resolution));
  }
  for (double r : grid.spec.half_widths) {
    put_le<double>(out, -r);
    put_le<double>(out, r);
  }
  for (std::int32_t label : grid.labels) put_le<std::int32_t>(out, label);
}

LabelGrid read_label_grid(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "QHOG", 4) != 0) throw std::runtime_error("not a QHOG label grid");
  const auto version = get_le<std::uint32_t>(in);
  if (version != 1) throw std::runtime_error("unsupported QHOG version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(in);
  LabelGrid grid;
  std::vector<std::uint32_t> res(n);
  for (auto& r : res) r = get_le<std::uint32_t>(in);
  if (n == 0 || std::any_of(res.begin(), res.end(), [&](std::uint32_t r) { return r != res[0]; })) {
    throw std::runtime_error("QHOG grids with non-uniform resolution are not supported");
  }
  grid.spec.resolution = static_cast<int>(res[0]);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double lo = get_le<double>(in);
    const double hi = get_le<double>(in);
    if (lo != -hi) throw std::runtime_error("QHOG box is not symmetric");
    grid.spec.half_widths.push_back(hi);
  }
  grid.labels.resize(grid.spec.cell_count());
  for (auto& label : grid.labels) label = get_le<std::int32_t>(in);
  return grid;
}

}  // namespace qho
