#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qho/annuli.hpp"
#include "qho/constants.hpp"
#include "qho/errors.hpp"
#include "qho/grid_nodal.hpp"
#include "qho/nodal_exact.hpp"
#include "qho/oscillator.hpp"
#include "qho/special_fn.hpp"

namespace py = pybind11;
using namespace qho;

namespace {

// Wide counts cross into Python as arbitrary-precision ints.
py::int_ to_py(const WideCount& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

std::vector<Term> parse_terms(const std::vector<std::pair<double, std::vector<int>>>& terms) {
  std::vector<Term> out;
  for (const auto& [c, k] : terms) out.push_back({c, MultiIndex(k)});
  return out;
}

py::dict result_dict(const NodalCountResult& r) {
  py::dict d;
  d["count"] = r.count;
  d["method"] = r.method == CountMethod::exact ? "exact" : "grid";
  d["resolution"] = r.resolution;
  d["converged"] = r.converged;
  d["lambda_max"] = r.lambda_max;
  d["potential_tolerance"] = r.potential_tolerance;
  d["witnesses"] = r.witnesses();
  py::list history;
  for (const auto& s : r.refinement_history) history.append(py::make_tuple(s.resolution, s.count));
  d["refinement_history"] = history;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qho, m) {
  m.doc() = "Nodal domain counts for anisotropic quantum harmonic oscillators";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<DegenerateField>(m, "DegenerateField");

  m.def("hermite", [](int m_, double x) { return hermite_eval_scaled(m_, x).to_double(); }, py::arg("m"), py::arg("x"));
  m.def("hermite_zeros", &hermite_zeros, py::arg("m"));
  m.def("bessel_first_zero", &bessel_first_zero, py::arg("nu"));

  m.def("gamma_pleijel", &gamma_pleijel, py::arg("n"));
  m.def("u_constant", [](int n) { return u_constant(n).value; }, py::arg("n"));
  m.def("u_constant_exact", [](int n) {
    const Rational u = u_constant(n).exact;
    return py::make_tuple(to_py(numerator(u)), to_py(denominator(u)));
  }, py::arg("n"));
  m.def("pleijel_integral", [](int n) { return pleijel_integral(n).closed_form; }, py::arg("n"));
  m.def("milnor_bound", [](int n, int d) { return to_py(milnor_bound(n, d)); }, py::arg("n"), py::arg("d"));

  m.def("enumerate_spectrum", [](const std::vector<double>& a, double lambda_max) {
    py::list out;
    for (const auto& e : enumerate_spectrum(OscillatorConfig(a), lambda_max)) {
      std::vector<int> k(e.index.values().begin(), e.index.values().end());
      out.append(py::make_tuple(k, e.eigenvalue));
    }
    return out;
  }, py::arg("coefficients"), py::arg("lambda_max"));
  m.def("counting_function", [](const std::vector<double>& a, double lambda) {
    return counting_function(OscillatorConfig(a), lambda);
  }, py::arg("coefficients"), py::arg("lambda"));
  m.def("weyl_estimate", [](const std::vector<double>& a, double lambda) {
    return weyl_estimate(OscillatorConfig(a), lambda);
  }, py::arg("coefficients"), py::arg("lambda"));
  m.def("mu_max", [](const std::vector<double>& a, double lambda) { return mu_max(OscillatorConfig(a), lambda); },
        py::arg("coefficients"), py::arg("lambda"));
  m.def("ratio_tail_max", [](const std::vector<double>& a, std::uint64_t k_max) {
    const RatioSeries s = ratio_experiment(OscillatorConfig(a), k_max);
    return py::make_tuple(tail_max(s, k_max), s.degenerate);
  }, py::arg("coefficients"), py::arg("k_max"));

  m.def("grid_count", [](const std::vector<double>& a, const std::vector<std::pair<double, std::vector<int>>>& terms,
                         int resolution, int refinements, unsigned workers) {
    const Combination comb(OscillatorConfig(a), parse_terms(terms));
    GridOptions options;
    options.workers = workers;
    options.keep_labels = false;
    return result_dict(stabilized_count(comb, resolution, refinements, options));
  }, py::arg("coefficients"), py::arg("terms"), py::arg("resolution") = 64, py::arg("refinements") = 4,
     py::arg("workers") = 1);

  m.def("choose_M", &choose_M, py::arg("k"), py::arg("n"));
  m.def("certificate", [](const std::vector<double>& a, std::uint64_t k, std::optional<int> m_override) {
    const OscillatorConfig config(a);
    const PleijelCertificate c = pleijel_certificate(config, k, exact_results(config, k), m_override);
    py::dict d;
    d["k"] = c.k;
    d["eigenvalue"] = c.eigenvalue;
    d["M"] = c.M;
    d["mu"] = c.mu;
    d["interior_bound_sum"] = c.interior_bound;
    d["crossers_bound"] = to_py(c.crossers_bound);
    d["total_bound"] = c.total_bound;
    d["mu_over_k"] = c.mu_over_k;
    d["interior_over_k"] = c.interior_over_k;
    d["total_over_k"] = c.total_over_k;
    d["bound_holds"] = c.bound_holds;
    return d;
  }, py::arg("coefficients"), py::arg("k"), py::arg("m_override") = std::nullopt);
}
