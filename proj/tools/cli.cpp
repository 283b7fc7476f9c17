#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "qho/annuli.hpp"
#include "qho/constants.hpp"
#include "qho/errors.hpp"
#include "qho/nodal_exact.hpp"
#include "qho/oscillator.hpp"

namespace qho::cli {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  const std::string t = trim(text);
  T value{};
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::string join_ints(std::span<const int> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

json wide_json(const WideCount& w) {
  if (w <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(w);
  return to_string(w);
}

OscillatorConfig oscillator_of(const RunConfig& cfg) {
  if (cfg.coefficients.empty()) throw std::invalid_argument("--coeffs is required");
  return OscillatorConfig(cfg.coefficients);
}

Combination combination_of(const RunConfig& cfg) {
  OscillatorConfig osc = oscillator_of(cfg);
  if (!cfg.terms.empty()) return Combination(osc, parse_terms(cfg.terms, osc.dimension()));
  if (cfg.index.empty()) throw std::invalid_argument("grid-count needs --index or --terms");
  return Combination::single(osc, MultiIndex(cfg.index));
}

GridOptions grid_options(const RunConfig& cfg) {
  GridOptions o;
  o.cell_budget = cell_budget_from_env();
  o.workers = cfg.workers;
  return o;
}

EnumerationOptions enumeration_options(const RunConfig& cfg) {
  EnumerationOptions o;
  o.workers = cfg.workers;
  return o;
}

// Destination for a command's primary output.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (path_.empty()) {
      fallback_ << buffer_.str();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path_);
    f << buffer_.str();
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

void write_rows(std::ostream& os, Format format, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows, const std::vector<bool>& numeric) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return;
  }
  json out = {{"schema_version", kSchemaVersion}, {"rows", json::array()}};
  for (const auto& row : rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      r[header[i]] = numeric[i] ? json::parse(row[i]) : json(row[i]);
    }
    out["rows"].push_back(std::move(r));
  }
  write_json(os, out);
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_max < 2 || cfg.n_max > 50) throw std::domain_error("constants needs 2 <= n_max <= 50");
  std::vector<std::vector<std::string>> rows;
  for (int n = 2; n <= cfg.n_max; ++n) {
    const PleijelReport r = gamma_u_report(n);
    rows.push_back({std::to_string(n), format_double(r.gamma), format_double(r.u_value), format_double(r.ratio),
                    format_double(r.bessel_zero), format_double(r.asymptotic_lower)});
  }
  Sink sink(cfg.out, out);
  write_rows(sink.stream(), cfg.format, {"n", "gamma", "u", "ratio", "bessel_zero", "asymptotic_lower"}, rows,
             std::vector<bool>(6, true));
  sink.commit();
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const OscillatorConfig osc = oscillator_of(cfg);
  std::vector<SpectrumEntry> spectrum;
  if (cfg.k_max) {
    spectrum = first_eigenpairs(osc, *cfg.k_max, enumeration_options(cfg));
  } else if (cfg.lambda_max) {
    spectrum = enumerate_spectrum(osc, *cfg.lambda_max, enumeration_options(cfg));
  } else {
    throw std::invalid_argument("spectrum needs --lambda-max or --k-max");
  }
  std::vector<std::string> header = {"k", "eigenvalue", "degree", "nodal_count"};
  for (std::size_t i = 0; i < osc.dimension(); ++i) header.push_back("k_" + std::to_string(i + 1));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(spectrum.size());
  for (std::size_t idx = 0; idx < spectrum.size(); ++idx) {
    const auto& e = spectrum[idx];
    std::vector<std::string> row = {std::to_string(idx + 1), format_double(e.eigenvalue), std::to_string(e.degree),
                                    std::to_string(e.nodal_count)};
    for (int k : e.index.values()) row.push_back(std::to_string(k));
    rows.push_back(std::move(row));
  }
  Sink sink(cfg.out, out);
  write_rows(sink.stream(), cfg.format, header, rows, std::vector<bool>(header.size(), true));
  sink.commit();
  return kOk;
}

int cmd_ratio(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OscillatorConfig osc = oscillator_of(cfg);
  if (!cfg.k_max) throw std::invalid_argument("ratio needs --k-max");
  const RatioSeries series = ratio_experiment(osc, *cfg.k_max, enumeration_options(cfg));

  std::vector<std::vector<std::string>> rows;
  rows.reserve(series.entries.size());
  for (const auto& e : series.entries) {
    rows.push_back({std::to_string(e.k), format_double(e.eigenvalue), std::to_string(e.nodal_count),
                    format_double(e.ratio)});
  }
  Sink sink(cfg.out, out);
  write_rows(sink.stream(), cfg.format, {"k", "eigenvalue", "mu", "ratio"}, rows, std::vector<bool>(4, true));
  sink.commit();

  const UConstant u = u_constant(static_cast<int>(osc.dimension()));
  json summary = {{"schema_version", kSchemaVersion},
                  {"coefficients", cfg.coefficients},
                  {"k_max", *cfg.k_max},
                  {"u", u.value},
                  {"u_exact", u.exact.str()},
                  {"degenerate", series.degenerate},
                  {"first_degenerate_k", series.first_degenerate_k},
                  {"tail_max", series.tail.front().max_ratio},
                  {"tail_relative_error", std::abs(series.tail.front().max_ratio / u.value - 1.0)},
                  {"tail", json::array()}};
  for (const auto& t : series.tail) {
    summary["tail"].push_back({{"window_end", t.window_end}, {"max_ratio", t.max_ratio}});
  }
  if (cfg.out.empty()) {
    write_json(err, summary);
  } else {
    std::ofstream f(cfg.out + ".summary.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot open summary file " + cfg.out + ".summary.json");
    write_json(f, summary);
  }
  if (series.degenerate) {
    err << "warning: degenerate spectrum, eigenvalues coincide at k = " << series.first_degenerate_k << '\n';
    return kDegenerate;
  }
  return kOk;
}

json classification_json(const Classification& c) {
  return {{"resolution", c.resolution},
          {"interior_counts", c.interior_counts},
          {"interior_total", c.interior_total()},
          {"crosser_count", c.crosser_count},
          {"crossers_per_boundary", c.crossers_per_boundary}};
}

int cmd_grid_count(const RunConfig& cfg, std::ostream& out) {
  const Combination comb = combination_of(cfg);
  const std::size_t n = comb.config().dimension();
  GridOptions options = grid_options(cfg);
  options.keep_labels = !cfg.dump_grid.empty() || cfg.m_override.has_value();
  const GridSpec spec{default_box(comb, cfg.margin), cfg.resolution.value_or(default_resolution(n))};
  NodalCountResult r = count_nodal_domains(comb, spec, cfg.refinements, options);

  json j = {{"schema_version", kSchemaVersion},
            {"coefficients", cfg.coefficients},
            {"terms", json::array()},
            {"count", r.count},
            {"method", "grid"},
            {"resolution", r.resolution},
            {"converged", r.converged},
            {"lambda_max", r.lambda_max},
            {"potential_tolerance", r.potential_tolerance},
            {"refinement_history", json::array()},
            {"witnesses", r.witnesses()}};
  for (const auto& t : comb.terms()) {
    j["terms"].push_back({{"coefficient", t.coefficient}, {"index", std::vector<int>(t.index.values().begin(),
                                                                                      t.index.values().end())}});
  }
  for (const auto& s : r.refinement_history) {
    j["refinement_history"].push_back({{"resolution", s.resolution}, {"count", s.count}});
  }
  if (comb.terms().size() == 1) j["exact_count"] = wide_json(exact_nodal_count(comb.terms()[0].index));
  if (cfg.m_override) {
    const auto partition = build_partition(comb.config(), r.lambda_max, *cfg.m_override);
    const Classification c = classify(partition, r, comb);
    annotate_crossings(r, c);
    j["M"] = *cfg.m_override;
    j["classification"] = classification_json(c);
    j["crossing_flags"] = r.crossing_flags;
  }
  if (!cfg.dump_grid.empty()) {
    std::ofstream f(cfg.dump_grid, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open grid dump " + cfg.dump_grid);
    write_label_grid(f, *r.label_grid);
  }
  Sink sink(cfg.out, out);
  write_json(sink.stream(), j);
  sink.commit();
  return kOk;
}

int cmd_certificate(const RunConfig& cfg, std::ostream& out) {
  const OscillatorConfig osc = oscillator_of(cfg);
  if (!cfg.k) throw std::invalid_argument("certificate needs --k");
  const std::uint64_t k = *cfg.k;
  std::vector<NodalCountResult> results = exact_results(osc, k);
  std::optional<Combination> comb;
  if (cfg.resolution) {
    const auto spectrum = first_eigenpairs(osc, k, enumeration_options(cfg));
    comb.emplace(Combination::single(osc, spectrum.back().index));
    const GridSpec spec{default_box(*comb, cfg.margin), *cfg.resolution};
    results.back() = count_nodal_domains(*comb, spec, cfg.refinements, grid_options(cfg));
  }
  const PleijelCertificate c =
      pleijel_certificate(osc, k, results, cfg.m_override, comb ? &*comb : nullptr);

  json j = {{"schema_version", kSchemaVersion},
            {"coefficients", cfg.coefficients},
            {"k", c.k},
            {"eigenvalue", c.eigenvalue},
            {"M", c.M},
            {"m_source", cfg.m_override ? "override" : "choose_M"},
            {"mu", c.mu},
            {"count_method", results.back().method == CountMethod::exact ? "exact" : "grid"},
            {"interior_bound_sum", c.interior_bound},
            {"crossers_bound", wide_json(c.crossers_bound)},
            {"total_bound", c.total_bound},
            {"mu_over_k", c.mu_over_k},
            {"interior_over_k", c.interior_over_k},
            {"total_over_k", c.total_over_k},
            {"gamma", std::isfinite(c.gamma) ? json(c.gamma) : json(nullptr)},
            {"bound_holds", c.bound_holds},
            {"classification", c.classification ? classification_json(*c.classification) : json(nullptr)}};
  Sink sink(cfg.out, out);
  write_json(sink.stream(), j);
  sink.commit();
  return kOk;
}

int cmd_milnor(const RunConfig& cfg, std::ostream& out) {
  const std::size_t n = cfg.coefficients.empty() ? 2 : cfg.coefficients.size();
  if (cfg.cases < 1 || cfg.max_degree < 1) throw std::domain_error("milnor needs --cases >= 1 and --max-degree >= 1");
  std::mt19937_64 rng(cfg.seed);
  GridOptions options = grid_options(cfg);
  options.keep_labels = false;
  const int resolution = cfg.resolution.value_or(128);
  std::vector<std::vector<std::string>> rows;
  for (int c = 0; c < cfg.cases; ++c) {
    const int degree = 1 + static_cast<int>(uniform(rng, 0.0, 1.0) * cfg.max_degree);
    const Polynomial poly = random_polynomial(rng, n, degree);
    const NodalCountResult r = count_polynomial_in_ball(poly, resolution, cfg.refinements, options);
    const WideCount bound = ball_component_bound(static_cast<int>(n), degree);
    rows.push_back({std::to_string(c), std::to_string(degree), std::to_string(r.count), to_string(bound),
                    WideCount(r.count) <= bound ? "1" : "0"});
  }
  Sink sink(cfg.out, out);
  write_rows(sink.stream(), cfg.format, {"case", "degree", "count", "bound", "within"}, rows,
             std::vector<bool>(5, true));
  sink.commit();
  return kOk;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"command", [](RunConfig& c, const std::string& v) { c.command = v; }},
      {"coeffs", [](RunConfig& c, const std::string& v) { c.coefficients = parse_coefficients(v); }},
      {"lambda_max", [](RunConfig& c, const std::string& v) { c.lambda_max = parse_number<double>(v, "lambda_max"); }},
      {"k_max", [](RunConfig& c, const std::string& v) { c.k_max = parse_number<std::uint64_t>(v, "k_max"); }},
      {"k", [](RunConfig& c, const std::string& v) { c.k = parse_number<std::uint64_t>(v, "k"); }},
      {"n_max", [](RunConfig& c, const std::string& v) { c.n_max = parse_number<int>(v, "n_max"); }},
      {"index", [](RunConfig& c, const std::string& v) { c.index = parse_index(v); }},
      {"terms", [](RunConfig& c, const std::string& v) { c.terms = v; }},
      {"resolution", [](RunConfig& c, const std::string& v) { c.resolution = parse_number<int>(v, "resolution"); }},
      {"refinements", [](RunConfig& c, const std::string& v) { c.refinements = parse_number<int>(v, "refinements"); }},
      {"m_override", [](RunConfig& c, const std::string& v) { c.m_override = parse_number<int>(v, "m_override"); }},
      {"margin", [](RunConfig& c, const std::string& v) { c.margin = parse_number<double>(v, "margin"); }},
      {"out", [](RunConfig& c, const std::string& v) { c.out = v; }},
      {"format", [](RunConfig& c, const std::string& v) { c.format = parse_format(v); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>(v, "seed"); }},
      {"cases", [](RunConfig& c, const std::string& v) { c.cases = parse_number<int>(v, "cases"); }},
      {"max_degree", [](RunConfig& c, const std::string& v) { c.max_degree = parse_number<int>(v, "max_degree"); }},
      {"workers", [](RunConfig& c, const std::string& v) { c.workers = parse_number<unsigned>(v, "workers"); }},
      {"dump_grid", [](RunConfig& c, const std::string& v) { c.dump_grid = v; }},
  };
  return table;
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw std::invalid_argument("unknown config key '" + key + "'");
  it->second(cfg, value);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::vector<double> parse_coefficients(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    const double a = parse_number<double>(part, "coefficient");
    if (!std::isfinite(a) || !(a > 0.0)) throw std::invalid_argument("coefficients must be finite and > 0");
    out.push_back(a);
  }
  if (out.empty()) throw std::invalid_argument("empty coefficient list");
  return out;
}

std::vector<int> parse_index(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const int k = parse_number<int>(part, "index entry");
    if (k < 0) throw std::invalid_argument("index entries must be >= 0");
    out.push_back(k);
  }
  return out;
}

std::vector<Term> parse_terms(const std::string& text, std::size_t dimension) {
  std::vector<Term> terms;
  for (const auto& part : split(text, ';')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("term '" + part + "' is not coefficient:index");
    Term t{parse_number<double>(part.substr(0, colon), "term coefficient"), MultiIndex(parse_index(part.substr(colon + 1)))};
    if (t.index.size() != dimension) throw DimensionMismatch(dimension, t.index.size());
    terms.push_back(std::move(t));
  }
  return terms;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + " is not key=value");
    }
    apply(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream s;
  if (!c.command.empty()) s << "command = " << c.command << '\n';
  if (!c.coefficients.empty()) s << "coeffs = " << join_doubles(c.coefficients) << '\n';
  if (c.lambda_max) s << "lambda_max = " << format_double(*c.lambda_max) << '\n';
  if (c.k_max) s << "k_max = " << *c.k_max << '\n';
  if (c.k) s << "k = " << *c.k << '\n';
  s << "n_max = " << c.n_max << '\n';
  if (!c.index.empty()) s << "index = " << join_ints(c.index) << '\n';
  if (!c.terms.empty()) s << "terms = " << c.terms << '\n';
  if (c.resolution) s << "resolution = " << *c.resolution << '\n';
  s << "refinements = " << c.refinements << '\n';
  if (c.m_override) s << "m_override = " << *c.m_override << '\n';
  s << "margin = " << format_double(c.margin) << '\n';
  if (!c.out.empty()) s << "out = " << c.out << '\n';
  s << "format = " << (c.format == Format::csv ? "csv" : "json") << '\n';
  s << "seed = " << c.seed << '\n';
  s << "cases = " << c.cases << '\n';
  s << "max_degree = " << c.max_degree << '\n';
  s << "workers = " << c.workers << '\n';
  if (!c.dump_grid.empty()) s << "dump_grid = " << c.dump_grid << '\n';
  return s.str();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Polynomial random_polynomial(std::mt19937_64& rng, std::size_t dimension, int degree) {
  std::vector<Polynomial::Monomial> monomials;
  std::vector<int> e(dimension, 0);
  // Exponent vectors with total degree <= degree, in lexicographic order.
  std::function<void(std::size_t, int)> walk = [&](std::size_t axis, int left) {
    if (axis == dimension) {
      double c = uniform(rng, -1.0, 1.0);
      if (e[0] == degree && c == 0.0) c = 1.0;
      monomials.push_back({e, c});
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[axis] = k;
      walk(axis + 1, left - k);
    }
    e[axis] = 0;
  };
  walk(0, degree);
  return Polynomial(dimension, std::move(monomials));
}

std::uint64_t cell_budget_from_env() {
  const char* v = std::getenv("QHO_CELL_BUDGET");
  if (v == nullptr || *v == '\0') return kDefaultCellBudget;
  return parse_number<std::uint64_t>(v, "QHO_CELL_BUDGET");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nodal domain and spectrum toolkit for the anisotropic harmonic oscillator", "qho"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file; flags override it");
  flag("--coeffs", "coeffs", "Comma-separated frequency coefficients a_i");
  flag("--lambda-max", "lambda_max", "Eigenvalue ceiling for spectrum");
  flag("--k-max", "k_max", "Number of eigenpairs (spectrum, ratio)");
  flag("--k", "k", "Eigenfunction position for certificate");
  flag("--n-max", "n_max", "Largest dimension for constants");
  flag("--index", "index", "Multi-index k_1,...,k_n for grid-count");
  flag("--terms", "terms", "Linear combination c:k1,k2;c:k1,k2 for grid-count");
  flag("--resolution", "resolution", "Cells per axis at the first level");
  flag("--refinements", "refinements", "Number of grid levels");
  flag("--m-override", "m_override", "Annulus count M instead of choose_M");
  flag("--margin", "margin", "Box margin over the classically allowed region");
  flag("--out", "out", "Output path (default stdout)");
  flag("--format", "format", "csv or json");
  flag("--seed", "seed", "Seed for randomized commands");
  flag("--cases", "cases", "Random cases for milnor");
  flag("--max-degree", "max_degree", "Largest polynomial degree for milnor");
  flag("--workers", "workers", "Worker threads; output does not depend on it");
  flag("--dump-grid", "dump_grid", "Write the finest label grid here");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"constants", "Pleijel constants, U(n) and their ratio"},
      {"spectrum", "Enumerate eigenpairs"},
      {"ratio", "mu(f_k)/k along the spectrum"},
      {"grid-count", "Grid count of nodal domains"},
      {"certificate", "Annulus bound assembly for the k-th eigenfunction"},
      {"milnor", "Random polynomial component counts against 2 G(n, d)"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config(read_file(config_path));
    for (const auto& [key, value] : flags) apply(cfg, key, value);
    cfg.command = app.get_subcommands().front()->get_name();

    if (cfg.command == "constants") return cmd_constants(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "ratio") return cmd_ratio(cfg, out, err);
    if (cfg.command == "grid-count") return cmd_grid_count(cfg, out);
    if (cfg.command == "certificate") return cmd_certificate(cfg, out);
    return cmd_milnor(cfg, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const DegenerateField& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace qho::cli
