#include "qho/oscillator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "qho/errors.hpp"
#include "qho/special_fn.hpp"

namespace qho {
namespace {

// a (2k + 1); every eigenvalue sum in this file goes through here so that
// enumeration, counting and eigenvalue() agree bit for bit.
inline double level_cost(double a, std::int64_t k) { return a * (2.0 * static_cast<double>(k) + 1.0); }

void check_dimension(const OscillatorConfig& config, std::size_t actual) {
  if (config.dimension() != actual) throw DimensionMismatch(config.dimension(), actual);
}

bool spectral_less(const SpectrumEntry& x, const SpectrumEntry& y) {
  if (x.eigenvalue != y.eigenvalue) return x.eigenvalue < y.eigenvalue;
  return x.index < y.index;
}

class SimplexWalker {
 public:
  SimplexWalker(const OscillatorConfig& config, double lambda)
      : a_(config.coefficients()), lambda_(lambda), tail_(a_.size() + 1, 0.0) {
    for (std::size_t i = a_.size(); i-- > 0;) tail_[i] = tail_[i + 1] + a_[i];
    slack_ = 1e-12 * std::max(1.0, std::abs(lambda));
  }

  // Calls leaf(k, eigenvalue) for every lattice point below lambda whose first
  // coordinate satisfies first_ok(k0).
  template <class FirstOk, class Leaf>
  void walk(FirstOk first_ok, Leaf leaf) {
    std::vector<int> k(a_.size(), 0);
    visit(0, 0.0, k, first_ok, leaf);
  }

  bool admits(std::size_t i, double partial_with_i) const {
    return partial_with_i + tail_[i + 1] <= lambda_ + slack_;
  }

 private:
  template <class FirstOk, class Leaf>
  void visit(std::size_t i, double partial, std::vector<int>& k, FirstOk& first_ok, Leaf& leaf) {
    if (i == a_.size()) {
      if (partial <= lambda_) leaf(k, partial);
      return;
    }
    for (int ki = 0;; ++ki) {
      const double next = partial + level_cost(a_[i], ki);
      if (!admits(i, next)) break;
      if (i == 0 && !first_ok(ki)) continue;
      k[i] = ki;
      visit(i + 1, next, k, first_ok, leaf);
    }
    k[i] = 0;
  }

  std::span<const double> a_;
  double lambda_;
  std::vector<double> tail_;
  double slack_;
};

std::uint64_t nodal_product(std::span<const int> k) {
  std::uint64_t p = 1;
  for (int v : k) p *= static_cast<std::uint64_t>(v) + 1;
  return p;
}

}  // namespace

OscillatorConfig::OscillatorConfig(std::vector<double> coefficients) : a_(std::move(coefficients)) {
  if (a_.empty() || a_.size() > kMaxDimension) {
    throw std::invalid_argument("oscillator dimension must be in [1, 10], got " + std::to_string(a_.size()));
  }
  a_min_ = a_.front();
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const double a = a_[i];
    if (!std::isfinite(a) || !(a > 0.0)) {
      throw std::invalid_argument("frequency coefficients must be finite and positive");
    }
    a_sum_ += a;
    a_product_ *= a;
    if (a < a_min_) {
      a_min_ = a;
      argmin_ = i;
    }
  }
}

double OscillatorConfig::potential(std::span<const double> x) const {
  check_dimension(*this, x.size());
  double v = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) v += a_[i] * a_[i] * x[i] * x[i];
  return v;
}

MultiIndex::MultiIndex(std::vector<int> k) : k_(std::move(k)) {
  for (int v : k_) {
    if (v < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
  }
}

std::int64_t MultiIndex::degree() const {
  return std::accumulate(k_.begin(), k_.end(), std::int64_t{0});
}

double eigenvalue(const OscillatorConfig& config, const MultiIndex& index) {
  check_dimension(config, index.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < index.size(); ++i) sum += level_cost(config.coefficient(i), index[i]);
  return sum;
}

ScaledReal eigenfunction_polynomial(const OscillatorConfig& config, const MultiIndex& index,
                                    std::span<const double> x) {
  check_dimension(config, index.size());
  check_dimension(config, x.size());
  ScaledReal value = ScaledReal::from_double(1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    value *= hermite_eval_scaled(index[i], std::sqrt(config.coefficient(i)) * x[i]);
  }
  return value;
}

double eigenfunction_eval(const OscillatorConfig& config, const MultiIndex& index,
                          std::span<const double> x) {
  check_dimension(config, x.size());
  double exponent = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(std::abs(x[i]) <= 50.0)) throw std::domain_error("eigenfunction_eval needs |x_i| <= 50");
    exponent -= 0.5 * config.coefficient(i) * x[i] * x[i];
  }
  ScaledReal value = eigenfunction_polynomial(config, index, x);
  const double log2_gauss = exponent / std::log(2.0);
  const double whole = std::floor(log2_gauss);
  value *= ScaledReal::from_parts(std::exp2(log2_gauss - whole), static_cast<std::int64_t>(whole));
  return value.to_double();
}

std::vector<SpectrumEntry> enumerate_spectrum(const OscillatorConfig& config, double lambda_max,
                                              const EnumerationOptions& options) {
  if (!std::isfinite(lambda_max)) throw std::domain_error("lambda_max must be finite");
  if (lambda_max < config.a_sum()) return {};
  // Counting is cheap; refuse before materializing an over-budget list.
  counting_function(config, lambda_max, options.budget);
  const unsigned workers = std::max(1u, options.workers);
  std::atomic<std::uint64_t> produced{0};
  std::atomic<bool> over_budget{false};
  std::vector<std::vector<SpectrumEntry>> parts(workers);

  auto run = [&](unsigned w) {
    SimplexWalker walker(config, lambda_max);
    auto first_ok = [&](int k0) { return static_cast<unsigned>(k0) % workers == w && !over_budget.load(); };
    walker.walk(first_ok, [&](const std::vector<int>& k, double ev) {
      if (over_budget.load(std::memory_order_relaxed)) return;
      if (produced.fetch_add(1, std::memory_order_relaxed) >= options.budget) {
        over_budget.store(true);
        return;
      }
      SpectrumEntry e;
      e.index = MultiIndex(k);
      e.eigenvalue = ev;
      e.degree = e.index.degree();
      e.nodal_count = nodal_product(k);
      parts[w].push_back(std::move(e));
    });
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  if (over_budget.load()) {
    throw BudgetExceeded("spectrum enumeration exceeded its budget", std::min(produced.load(), options.budget),
                         options.budget);
  }

  std::vector<SpectrumEntry> entries;
  for (auto& p : parts) {
    entries.insert(entries.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  std::sort(entries.begin(), entries.end(), spectral_less);
  return entries;
}

std::vector<SpectrumEntry> first_eigenpairs(const OscillatorConfig& config, std::uint64_t k,
                                            const EnumerationOptions& options) {
  if (k == 0) return {};
  double lambda = lambda_k_bound(config, k) + config.a_sum();
  while (counting_function(config, lambda, options.budget) < k) lambda = 1.1 * lambda + config.a_min();
  auto entries = enumerate_spectrum(config, lambda, options);
  entries.resize(k);
  return entries;
}

std::uint64_t counting_function(const OscillatorConfig& config, double lambda, std::uint64_t budget) {
  if (!std::isfinite(lambda)) throw std::domain_error("lambda must be finite");
  if (lambda < config.a_sum()) return 0;
  const std::size_t n = config.dimension();
  const double a_last = config.coefficient(n - 1);

  // Lattice points on the last axis with partial + a(2m+1) <= lambda.
  auto last_axis = [&](double partial) -> std::uint64_t {
    auto fits = [&](std::int64_t m) { return partial + level_cost(a_last, m) <= lambda; };
    std::int64_t m = static_cast<std::int64_t>(std::floor((lambda - partial - a_last) / (2.0 * a_last)));
    m = std::max<std::int64_t>(m, -1);
    while (fits(m + 1)) ++m;
    while (m >= 0 && !fits(m)) --m;
    return static_cast<std::uint64_t>(m + 1);
  };

  if (n == 1) {
    const std::uint64_t c = last_axis(0.0);
    if (c > budget) throw BudgetExceeded("counting function exceeded its budget", c, budget);
    return c;
  }

  std::uint64_t count = 0;
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + config.coefficient(i);
  const double slack = 1e-12 * std::max(1.0, std::abs(lambda));

  auto visit = [&](auto& self, std::size_t i, double partial) -> void {
    if (i == n - 1) {
      count += last_axis(partial);
      if (count > budget) throw BudgetExceeded("counting function exceeded its budget", count, budget);
      return;
    }
    for (int ki = 0;; ++ki) {
      const double next = partial + level_cost(config.coefficient(i), ki);
      if (next + tail[i + 1] > lambda + slack) break;
      self(self, i + 1, next);
    }
  };
  visit(visit, 0, 0.0);
  return count;
}

double weyl_estimate(const OscillatorConfig& config, double lambda) {
  const double n = static_cast<double>(config.dimension());
  return std::pow(lambda, n) / (std::pow(2.0, n) * std::tgamma(n + 1.0) * config.a_product());
}

DegreeBounds degree_bounds(const OscillatorConfig& config, double lambda) {
  if (!(lambda >= config.a_sum())) throw std::domain_error("lambda below the ground-state eigenvalue");
  const double two_a_min = 2.0 * config.a_min();
  DegreeBounds b;
  b.simplex = (lambda - config.a_sum()) / two_a_min;
  b.printed = (lambda - 0.5 * static_cast<double>(config.dimension())) / two_a_min;

  // Every unit of any k_j costs 2 a_j >= 2 a_min, so the optimum loads the
  // cheapest axis. Check candidates with the same arithmetic as eigenvalue().
  const std::size_t cheap = config.argmin();
  auto fits = [&](std::int64_t m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < config.dimension(); ++i) {
      sum += level_cost(config.coefficient(i), i == cheap ? m : 0);
    }
    return sum <= lambda;
  };
  std::int64_t m = static_cast<std::int64_t>(std::floor(b.simplex));
  while (fits(m + 1)) ++m;
  while (m > 0 && !fits(m)) --m;
  b.exact = m;
  return b;
}

std::int64_t max_degree(const OscillatorConfig& config, double lambda) {
  return degree_bounds(config, lambda).exact;
}

double lambda_k_bound(const OscillatorConfig& config, std::uint64_t k) {
  if (k == 0) throw std::domain_error("lambda_k_bound needs k >= 1");
  const double n = static_cast<double>(config.dimension());
  const double scale = std::pow(2.0, n) * std::tgamma(n + 1.0) * config.a_product();
  return std::pow(static_cast<double>(k), 1.0 / n) * std::pow(scale, 1.0 / n);
}

bool eigenvalues_coincide(double x, double y) {
  return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y));
}

}  // namespace qho
