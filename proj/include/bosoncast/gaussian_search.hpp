#pragma once

// Gaussian-restricted minimum output entropy: vacuum on the a port, an n-mode
// Gaussian state with entropy n g(K) on the b port, minimize S(c) for
// c = sqrt(eta) a + sqrt(1 - eta) b. The reference minimum is the thermal
// product, n g((1 - eta) K).

#include <cstdint>
#include <string>
#include <vector>

#include "bosoncast/gaussian.hpp"

namespace bosoncast {

enum class GaussianFamily { squeezed_thermal, symplectic_conjugation, lambda_split };

std::string_view to_string(GaussianFamily family);
GaussianFamily parse_gaussian_family(std::string_view text);

struct GaussianSearchConfig {
  int budget = 600;
  std::uint64_t seed = 1;
  std::vector<GaussianFamily> families{GaussianFamily::squeezed_thermal,
                                       GaussianFamily::symplectic_conjugation,
                                       GaussianFamily::lambda_split};
  double max_squeeze = 1.0;
  double tolerance = 1e-9;  // bits; gap and thermal-optimality slack
};

struct GaussianCandidate {
  int id = 0;
  std::string family;               // "thermal" for the reference candidate
  std::vector<double> lambdas;      // symplectic eigenvalues of the b input
  std::vector<double> squeezes;     // per-mode r (squeezed_thermal only)
  double output_entropy_bits = 0.0;
  double constraint_residual = 0.0; // |sum g(lambda_i) - n g(K)|, recomputed
};

struct GaussianSearchReport {
  double eta = 0.0;
  double k = 0.0;
  int n_modes = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> families;
  int candidates_evaluated = 0;
  double best_entropy_bits = 0.0;
  double target_entropy_bits = 0.0;  // n g((1 - eta) K)
  double gap = 0.0;                  // best - target
  double thermal_entropy_bits = 0.0;
  double max_constraint_residual = 0.0;
  bool thermal_is_minimizer = false; // thermal - best <= tolerance
  GaussianCandidate best;
};

/// Candidates are generated sequentially from the seed and evaluated in
/// parallel; the minimum is chosen by (entropy, id), so the report does not
/// depend on the thread schedule. Candidate 0 is the thermal product. With
/// k == 0 the only feasible input is vacuum and the trivial report is returned.
GaussianSearchReport min_output_entropy_gaussian(double eta, double k, int n,
                                                 const GaussianSearchConfig& config);

/// Output entropy of vacuum (x) b through the beam splitter, bits.
double gaussian_output_entropy(const GaussianState& b, double eta);

/// Multipliers xi_i = (1-eta) g'((1-eta) lambda_i) / g'(lambda_i) from the
/// first-order conditions of min sum g((1-eta) lambda_i) s.t. sum g(lambda_i) fixed.
std::vector<double> lagrange_multipliers(double eta, std::span<const double> lambdas);

/// max_i |xi_i - xi_0|; zero at a stationary point of the constrained problem.
double lagrange_stationarity_residual(double eta, std::span<const double> lambdas);

}  // namespace bosoncast
