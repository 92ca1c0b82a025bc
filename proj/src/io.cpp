#include "bosoncast/io.hpp"

#include <charconv>
#include <cmath>

#include "bosoncast/errors.hpp"

namespace bosoncast {

std::string format_number(double x) {
  if (!std::isfinite(x)) throw NumericError("cannot format a non-finite number");
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

double rounded(double x) { return parse_number(format_number(x)); }

namespace {

Json complex_pair(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

std::complex<double> complex_from(const Json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw ValidationError("expected a [re, im] pair");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

}  // namespace

Json to_json(const GaussianState& state) {
  Json doc;
  doc["n_modes"] = state.n_modes();
  Json mean = Json::array();
  for (Eigen::Index i = 0; i < state.mean.size(); ++i) mean.push_back(complex_pair(state.mean(i)));
  doc["mean"] = std::move(mean);
  doc["corr"] = to_json(state.corr);
  return doc;
}

Json to_json(const ComplexMatrix<double>& m) {
  Json flat = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(complex_pair(m(r, c)));
  }
  return flat;
}

GaussianState gaussian_state_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n_modes") || !doc.contains("corr")) {
    throw ValidationError("Gaussian state JSON needs n_modes and corr");
  }
  const auto n = doc["n_modes"].get<Eigen::Index>();
  if (n < 1) throw ValidationError("n_modes must be >= 1");
  const Json& corr = doc["corr"];
  if (!corr.is_array() || corr.size() != static_cast<std::size_t>(4 * n * n)) {
    throw ValidationError("corr must hold (2 n_modes)^2 [re, im] pairs");
  }
  GaussianState st;
  st.mean = ComplexVector<double>::Zero(n);
  if (doc.contains("mean")) {
    const Json& mean = doc["mean"];
    if (!mean.is_array() || mean.size() != static_cast<std::size_t>(n)) {
      throw ValidationError("mean must hold n_modes [re, im] pairs");
    }
    for (Eigen::Index i = 0; i < n; ++i) st.mean(i) = complex_from(mean[static_cast<std::size_t>(i)]);
  }
  st.corr.resize(2 * n, 2 * n);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < 2 * n; ++r) {
    for (Eigen::Index c = 0; c < 2 * n; ++c) st.corr(r, c) = complex_from(corr[k++]);
  }
  validate(st);
  return st;
}

Json to_json(const SymplecticDecomposition& dec) {
  Json doc;
  doc["n_modes"] = dec.lambdas.size();
  doc["lambdas"] = dec.lambdas;
  doc["s"] = to_json(dec.s);
  return doc;
}

Json to_json(const GaussianSearchReport& report) {
  Json doc;
  doc["eta"] = report.eta;
  doc["k"] = report.k;
  doc["n_modes"] = report.n_modes;
  doc["seed"] = report.seed;
  doc["families"] = report.families;
  doc["candidates_evaluated"] = report.candidates_evaluated;
  doc["best_entropy_bits"] = rounded(report.best_entropy_bits);
  doc["target_entropy_bits"] = rounded(report.target_entropy_bits);
  doc["gap"] = rounded(report.gap);
  doc["thermal_entropy_bits"] = rounded(report.thermal_entropy_bits);
  doc["constraint_residual"] = rounded(report.max_constraint_residual);
  doc["thermal_is_minimizer"] = report.thermal_is_minimizer;
  Json best;
  best["id"] = report.best.id;
  best["family"] = report.best.family;
  Json lambdas = Json::array();
  for (double l : report.best.lambdas) lambdas.push_back(rounded(l));
  best["lambdas"] = std::move(lambdas);
  Json squeezes = Json::array();
  for (double r : report.best.squeezes) squeezes.push_back(rounded(r));
  best["squeezes"] = std::move(squeezes);
  best["output_entropy_bits"] = rounded(report.best.output_entropy_bits);
  doc["best_state_descriptor"] = std::move(best);
  return doc;
}

Json to_json(const SearchReport& report) {
  Json doc;
  doc["eta"] = report.eta;
  doc["k"] = report.k;
  doc["dim"] = report.dim;
  doc["seed"] = report.seed;
  doc["families"] = report.families;
  doc["budget"] = report.budget;
  doc["candidates_evaluated"] = report.candidates_evaluated;
  doc["candidates_skipped"] = report.candidates_skipped;
  doc["best_entropy_bits"] = rounded(report.best_entropy.bits());
  doc["target_entropy_bits"] = rounded(report.target_entropy.bits());
  doc["gap"] = rounded(report.gap);
  doc["constraint_residual"] = rounded(report.constraint_residual);
  doc["thermal_entropy_bits"] = rounded(report.thermal_entropy_bits);
  doc["thermal_gap"] = rounded(report.thermal_gap);
  Json best;
  best["id"] = report.best_state.id;
  best["family"] = report.best_state.family;
  Json params = Json::object();
  for (const auto& [name, value] : report.best_state.params) params[name] = rounded(value);
  best["params"] = std::move(params);
  best["input_entropy_bits"] = rounded(report.best_state.input_entropy_bits);
  best["mean_photon_number"] = rounded(report.best_state.mean_photon_number);
  best["tail_mass"] = rounded(report.best_state.tail_mass);
  doc["best_state_descriptor"] = std::move(best);
  doc["mode_coverage"] = report.mode_coverage;
  return doc;
}

Json to_json(const LocalCheckReport& report) {
  Json doc;
  doc["eta"] = report.eta;
  doc["k"] = report.k;
  doc["dim"] = report.dim;
  doc["seed"] = report.seed;
  doc["vacuum_entropy_bits"] = rounded(report.vacuum_entropy_bits);
  doc["baseline_bits"] = rounded(report.baseline_bits);
  doc["min_excess_bits"] = rounded(report.min_excess_bits);
  doc["vacuum_is_local_minimum"] = report.vacuum_is_local_minimum;
  Json probes = Json::array();
  for (const LocalProbe& p : report.probes) {
    probes.push_back({{"kind", p.kind},
                      {"magnitude", rounded(p.magnitude)},
                      {"entropy_bits", rounded(p.entropy_bits)},
                      {"excess_bits", rounded(p.excess_bits)}});
  }
  doc["probes"] = std::move(probes);
  return doc;
}

Json to_json(const CoherentRegionResult& result) {
  Json doc;
  doc["r_b_numeric"] = rounded(result.r_b_numeric);
  doc["r_c_numeric"] = rounded(result.r_c_numeric);
  doc["r_b_closed"] = rounded(result.r_b_closed);
  doc["r_c_closed"] = rounded(result.r_c_closed);
  doc["convergence_delta"] = rounded(result.convergence_delta);
  doc["max_tail"] = rounded(result.max_tail);
  return doc;
}

}  // namespace bosoncast
