#include "qho/nodal_exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qho/errors.hpp"

namespace qho {

WideCount exact_nodal_count(const MultiIndex& index) {
  WideCount product = 1;
  for (int k : index.values()) product *= static_cast<unsigned>(k) + 1u;
  return product;
}

double continuous_sup(const OscillatorConfig& config, double lambda) {
  const double n = static_cast<double>(config.dimension());
  return std::pow(lambda / n, n) / config.a_product();
}

MuBounds mu_bounds(const OscillatorConfig& config, double lambda) {
  return {continuous_sup(config, 0.5 * (lambda - config.a_sum())),
          continuous_sup(config, 0.5 * (lambda + config.a_sum()))};
}

namespace {

class MuSearch {
 public:
  MuSearch(const OscillatorConfig& config, double lambda, std::uint64_t budget)
      : a_(config.coefficients()), lambda_(lambda), budget_(budget),
        tail_sum_(a_.size() + 1, 0.0), tail_prod_(a_.size() + 1, 1.0) {
    for (std::size_t i = a_.size(); i-- > 0;) {
      tail_sum_[i] = tail_sum_[i + 1] + a_[i];
      tail_prod_[i] = tail_prod_[i + 1] * a_[i];
    }
  }

  std::uint64_t run() {
    visit(0, 0.0, 1);
    return best_;
  }

 private:
  static double cost(double a, std::int64_t k) { return a * (2.0 * static_cast<double>(k) + 1.0); }

  // Largest achievable prod (k_j + 1) for j >= i with the given spend so far,
  // relaxed to reals: u_j = k_j + 1 >= 1, sum a_j (2 u_j - 1) <= lambda - partial.
  double relaxed_bound(std::size_t i, double partial) const {
    const double m = static_cast<double>(a_.size() - i);
    const double budget = 0.5 * (lambda_ - partial + tail_sum_[i]);
    return std::pow(budget / m, m) / tail_prod_[i];
  }

  void visit(std::size_t i, double partial, std::uint64_t product) {
    if (++visited_ > budget_) throw BudgetExceeded("mu_max search exceeded its budget", visited_, budget_);
    const std::size_t last = a_.size() - 1;
    if (i == last) {
      const double a = a_[last];
      auto fits = [&](std::int64_t m) { return partial + cost(a, m) <= lambda_; };
      std::int64_t m = static_cast<std::int64_t>(std::floor((lambda_ - partial - a) / (2.0 * a)));
      m = std::max<std::int64_t>(m, -1);
      while (fits(m + 1)) ++m;
      while (m >= 0 && !fits(m)) --m;
      if (m >= 0) best_ = std::max(best_, product * static_cast<std::uint64_t>(m + 1));
      return;
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(lambda_));
    std::int64_t k_top = 0;
    while (partial + cost(a_[i], k_top + 1) + tail_sum_[i + 1] <= lambda_ + slack) ++k_top;
    for (std::int64_t k = k_top; k >= 0; --k) {
      const double next = partial + cost(a_[i], k);
      const std::uint64_t next_product = product * static_cast<std::uint64_t>(k + 1);
      const double bound = static_cast<double>(next_product) * relaxed_bound(i + 1, next);
      if (bound * (1.0 + 1e-9) < static_cast<double>(best_) + 1.0) continue;
      visit(i + 1, next, next_product);
    }
  }

  std::span<const double> a_;
  double lambda_;
  std::uint64_t budget_;
  std::vector<double> tail_sum_;
  std::vector<double> tail_prod_;
  std::uint64_t best_ = 0;
  std::uint64_t visited_ = 0;
};

}  // namespace

std::uint64_t mu_max(const OscillatorConfig& config, double lambda, std::uint64_t budget) {
  if (!(lambda >= config.a_sum()) || !std::isfinite(lambda)) {
    throw std::domain_error("mu_max needs lambda at or above the ground-state eigenvalue");
  }
  return MuSearch(config, lambda, budget).run();
}

RatioSeries ratio_experiment(const OscillatorConfig& config, std::uint64_t k_max,
                             const EnumerationOptions& options) {
  if (k_max == 0) throw std::domain_error("ratio_experiment needs k_max >= 1");
  const auto spectrum = first_eigenpairs(config, k_max, options);

  RatioSeries series;
  series.entries.reserve(spectrum.size());
  for (std::size_t idx = 0; idx < spectrum.size(); ++idx) {
    const auto& e = spectrum[idx];
    RatioEntry r;
    r.k = idx + 1;
    r.eigenvalue = e.eigenvalue;
    r.nodal_count = e.nodal_count;
    r.ratio = static_cast<double>(e.nodal_count) / static_cast<double>(r.k);
    series.entries.push_back(r);
    if (idx > 0 && !series.degenerate && eigenvalues_coincide(spectrum[idx - 1].eigenvalue, e.eigenvalue)) {
      series.degenerate = true;
      series.first_degenerate_k = r.k;
    }
  }
  for (std::uint64_t window = k_max; window >= 1; window /= 2) {
    series.tail.push_back({window, tail_max(series, window)});
  }
  return series;
}

double tail_max(const RatioSeries& series, std::uint64_t window_end) {
  if (window_end == 0 || window_end > series.entries.size()) {
    throw std::out_of_range("tail window end " + std::to_string(window_end) + " outside the series");
  }
  double best = 0.0;
  for (std::uint64_t k = (window_end + 1) / 2; k <= window_end; ++k) {
    best = std::max(best, series.entries[k - 1].ratio);
  }
  return best;
}

UConstant u_constant(int n) {
  if (n < 1 || n > 50) throw std::domain_error("u_constant needs 1 <= n <= 50");
  WideCount factorial = 1;
  WideCount power = 1;
  for (int i = 1; i <= n; ++i) {
    factorial *= i;
    power *= n;
  }
  UConstant u;
  u.exact = Rational(factorial, power);
  u.value = static_cast<double>(u.exact);
  return u;
}

}  // namespace qho
