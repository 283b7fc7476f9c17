#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qho/grid_nodal.hpp"

namespace qho::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBudget = 2,
  kDegenerate = 3,
};

enum class Format { csv, json };

/// Everything a subcommand reads. Serialized as flat key=value text.
struct RunConfig {
  std::string command;
  std::vector<double> coefficients;
  std::optional<double> lambda_max;
  std::optional<std::uint64_t> k_max;
  std::optional<std::uint64_t> k;
  int n_max = 5;
  std::vector<int> index;
  /// "c:k1,k2;c:k1,k2" linear combination; overrides `index` when set.
  std::string terms;
  std::optional<int> resolution;
  int refinements = 3;
  std::optional<int> m_override;
  double margin = 1.25;
  std::string out;
  Format format = Format::csv;
  std::uint64_t seed = 1;
  int cases = 20;
  int max_degree = 5;
  unsigned workers = 1;
  std::string dump_grid;

  bool operator==(const RunConfig&) const = default;
};

/// Parses key=value lines; '#' starts a comment. Throws std::invalid_argument
/// on unknown keys, malformed values and invalid coefficients.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);

/// "1.0,1.4142135623730951" -> {1.0, 1.4142135623730951}; rejects <= 0 and non-finite.
std::vector<double> parse_coefficients(const std::string& text);
std::vector<int> parse_index(const std::string& text);
/// "1:2,0;-1:0,2" -> terms.
std::vector<Term> parse_terms(const std::string& text, std::size_t dimension);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Uniform double in [lo, hi) from the top 53 bits of one draw; identical on
/// every platform, unlike std::uniform_real_distribution.
double uniform(std::mt19937_64& rng, double lo, double hi);

/// Random 2D-or-higher polynomial with every monomial of total degree <= d and
/// coefficients uniform in [-1, 1); the top-degree x_0^d coefficient is kept nonzero.
Polynomial random_polynomial(std::mt19937_64& rng, std::size_t dimension, int degree);

/// Cell budget from QHO_CELL_BUDGET, else the default.
std::uint64_t cell_budget_from_env();

/// Runs one invocation (args exclude the program name). Tables and reports go
/// to --out when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qho::cli
