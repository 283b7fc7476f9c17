#include "qho/annuli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qho/constants.hpp"
#include "qho/special_fn.hpp"

namespace qho {
namespace {

void check_M(int M) {
  if (M < 1) throw std::domain_error("annulus partition needs M >= 1");
}

double boundary_value(double lambda, int i, int M, std::size_t n) {
  if (i == 0) return 0.0;
  if (i == M) return lambda;
  return std::pow(static_cast<double>(i) / M, 2.0 / static_cast<double>(n)) * lambda;
}

// Volume of the ellipsoid {V < v}.
double ellipsoid_volume(const OscillatorConfig& config, double v) {
  const int n = static_cast<int>(config.dimension());
  return unit_ball_volume(n) * std::pow(v, 0.5 * n) / config.a_product();
}

}  // namespace

int choose_M(std::uint64_t k, std::size_t n) {
  if (k == 0) throw std::domain_error("choose_M needs k >= 1");
  if (n == 0) throw std::domain_error("choose_M needs n >= 1");
  const WideCount target = k;
  int M = std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(k), 0.5 / n))) - 1);
  auto power = [&](int m) {
    WideCount p = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) p *= m;
    return p;
  };
  while (power(M) < target) ++M;
  while (M > 1 && power(M - 1) >= target) --M;
  return M;
}

AnnulusPartition build_partition(const OscillatorConfig& config, double lambda, int M) {
  check_M(M);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("build_partition needs lambda > 0");
  AnnulusPartition p;
  p.lambda = lambda;
  p.M = M;
  p.n = config.dimension();
  p.boundaries.reserve(static_cast<std::size_t>(M) + 1);
  for (int i = 0; i <= M; ++i) p.boundaries.push_back(boundary_value(lambda, i, M, p.n));
  p.shell_volume = annulus_volume(config, lambda, M);
  return p;
}

double shell_volume(const OscillatorConfig& config, const AnnulusPartition& partition, int i) {
  if (i < 1 || i > partition.M) throw std::out_of_range("shell index outside 1..M");
  return ellipsoid_volume(config, partition.boundaries[i]) - ellipsoid_volume(config, partition.boundaries[i - 1]);
}

std::uint64_t Classification::interior_total() const {
  std::uint64_t total = 0;
  for (auto c : interior_counts) total += c;
  return total;
}

Classification classify(const AnnulusPartition& partition, const NodalCountResult& result,
                        const Combination& comb) {
  if (!result.label_grid) throw std::invalid_argument("classify needs a result carrying a label grid");
  const LabelGrid& grid = *result.label_grid;
  const OscillatorConfig& config = comb.config();
  const std::size_t n = grid.spec.dimension();
  if (n != config.dimension()) throw std::invalid_argument("label grid dimension differs from the combination");
  const int res = grid.spec.resolution;

  const std::size_t components = result.count;
  std::vector<double> v_min(components, std::numeric_limits<double>::infinity());
  std::vector<double> v_max(components, -std::numeric_limits<double>::infinity());

  // Per-axis contributions a_i^2 x_i^2 at each cell center.
  std::vector<std::vector<double>> axis_v(n, std::vector<double>(static_cast<std::size_t>(res)));
  for (std::size_t ax = 0; ax < n; ++ax) {
    const double a = config.coefficient(ax);
    for (int c = 0; c < res; ++c) {
      const double x = grid.spec.center(ax, c);
      axis_v[ax][static_cast<std::size_t>(c)] = a * a * x * x;
    }
  }

  std::vector<int> cell(n, 0);
  for (std::size_t idx = 0; idx < grid.labels.size(); ++idx) {
    const std::int32_t label = grid.labels[idx];
    if (label >= 0) {
      if (static_cast<std::size_t>(label) >= components) {
        throw std::invalid_argument("label grid holds a label beyond the component count");
      }
      double v = 0.0;
      for (std::size_t ax = 0; ax < n; ++ax) v += axis_v[ax][static_cast<std::size_t>(cell[ax])];
      auto& lo = v_min[static_cast<std::size_t>(label)];
      auto& hi = v_max[static_cast<std::size_t>(label)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (std::size_t ax = n; ax-- > 0;) {
      if (++cell[ax] < res) break;
      cell[ax] = 0;
    }
  }

  const int M = partition.M;
  const auto& v = partition.boundaries;
  Classification out;
  out.resolution = result.resolution;
  out.interior_counts.assign(static_cast<std::size_t>(M), 0);
  out.crossers_per_boundary.assign(static_cast<std::size_t>(M), 0);
  out.components.resize(components);
  for (std::size_t c = 0; c < components; ++c) {
    ComponentClass& cls = out.components[c];
    if (!(v_min[c] <= v_max[c])) throw std::invalid_argument("component without labeled cells");
    for (int j = 1; j <= M; ++j) {
      if (v_min[c] <= v[static_cast<std::size_t>(j)] && v[static_cast<std::size_t>(j)] <= v_max[c]) {
        cls.crossed.push_back(j);
      }
    }
    if (cls.crossed.empty() && v_min[c] > partition.lambda) {
      cls.crossed.push_back(M);
      cls.beyond_lambda = true;
    }
    if (cls.crossed.empty()) {
      cls.kind = ComponentClass::Kind::interior;
      const auto above = std::upper_bound(v.begin(), v.end(), v_min[c]);
      cls.shell = static_cast<int>(above - v.begin());
      ++out.interior_counts[static_cast<std::size_t>(cls.shell - 1)];
    } else {
      cls.kind = ComponentClass::Kind::crosser;
      ++out.crosser_count;
      for (int j : cls.crossed) ++out.crossers_per_boundary[static_cast<std::size_t>(j - 1)];
    }
  }
  return out;
}

void annotate_crossings(NodalCountResult& result, const Classification& classification) {
  result.crossing_flags.clear();
  result.crossing_flags.reserve(classification.components.size());
  for (const auto& c : classification.components) result.crossing_flags.push_back(c.crossed);
}

double card_Ai_bound(const OscillatorConfig& config, double lambda, int M, int i) {
  check_M(M);
  if (i < 1 || i > M) throw std::domain_error("card_Ai_bound needs 1 <= i <= M");
  if (i == M) return 0.0;
  const int n = static_cast<int>(config.dimension());
  const double j = bessel_first_zero(0.5 * n - 1.0);
  const double shrink = 1.0 - std::pow(static_cast<double>(i) / M, 2.0 / n);
  return std::pow(lambda, n) * std::pow(shrink, 0.5 * n) / (std::pow(j, n) * M * config.a_product());
}

double interior_bound_sum(const OscillatorConfig& config, double lambda, int M) {
  double sum = 0.0;
  for (int i = 1; i <= M; ++i) sum += card_Ai_bound(config, lambda, M, i);
  return sum;
}

double annulus_riemann_sum(int n, int M) {
  check_M(M);
  if (n < 1) throw std::domain_error("annulus_riemann_sum needs n >= 1");
  double sum = 0.0;
  for (int i = 1; i < M; ++i) sum += std::pow(1.0 - std::pow(static_cast<double>(i) / M, 2.0 / n), 0.5 * n);
  return sum / M;
}

WideCount crossers_bound_at(const OscillatorConfig& config, double lambda, int M) {
  check_M(M);
  const std::size_t n = config.dimension();
  // A degree-0 field still has one domain meeting each boundary.
  const WideCount d = std::max<std::int64_t>(max_degree(config, lambda), 1);
  WideCount bound = M;
  for (std::size_t i = 0; i < 2 * n - 1; ++i) bound *= 2;
  for (std::size_t i = 0; i + 1 < n; ++i) bound *= d;
  return bound;
}

WideCount crossers_bound(const OscillatorConfig& config, std::uint64_t k, int M) {
  if (k == 0) throw std::domain_error("crossers_bound needs k >= 1");
  const auto spectrum = first_eigenpairs(config, k);
  return crossers_bound_at(config, spectrum.back().eigenvalue, M);
}

std::vector<NodalCountResult> exact_results(const OscillatorConfig& config, std::uint64_t k) {
  const auto spectrum = first_eigenpairs(config, k);
  std::vector<NodalCountResult> out;
  out.reserve(spectrum.size());
  for (const auto& e : spectrum) out.push_back(exact_count_result(e.index, e.eigenvalue));
  return out;
}

PleijelCertificate pleijel_certificate(const OscillatorConfig& config, std::uint64_t k,
                                       std::span<const NodalCountResult> results, std::optional<int> m_override,
                                       const Combination* combination) {
  if (k == 0) throw std::domain_error("pleijel_certificate needs k >= 1");
  if (results.size() < k) {
    throw std::invalid_argument("pleijel_certificate needs counts for the first " + std::to_string(k) +
                                " eigenfunctions, got " + std::to_string(results.size()));
  }
  const int n = static_cast<int>(config.dimension());
  const auto spectrum = first_eigenpairs(config, k);
  const NodalCountResult& kth = results[k - 1];

  PleijelCertificate cert;
  cert.k = k;
  cert.eigenvalue = spectrum.back().eigenvalue;
  cert.M = m_override ? *m_override : choose_M(k, config.dimension());
  check_M(cert.M);
  cert.mu = kth.count;
  cert.interior_bound = interior_bound_sum(config, cert.eigenvalue, cert.M);
  cert.crossers_bound = crossers_bound_at(config, cert.eigenvalue, cert.M);
  cert.total_bound = cert.interior_bound + static_cast<double>(cert.crossers_bound);
  const double kd = static_cast<double>(k);
  cert.mu_over_k = static_cast<double>(cert.mu) / kd;
  cert.total_over_k = cert.total_bound / kd;
  cert.interior_over_k = cert.interior_bound / kd;
  cert.gamma = n >= 2 ? gamma_pleijel(n) : std::numeric_limits<double>::quiet_NaN();
  cert.bound_holds = static_cast<double>(cert.mu) <= cert.total_bound;
  if (kth.label_grid && combination != nullptr) {
    const auto partition = build_partition(config, std::max(cert.eigenvalue, kth.lambda_max), cert.M);
    cert.classification = classify(partition, kth, *combination);
  }
  return cert;
}

}  // namespace qho
