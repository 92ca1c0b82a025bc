#pragma once

// Numerical probes of the minimum-output-entropy conjectures on one mode.
// The a port carries vacuum (search) or a perturbed vacuum (local check), the
// b port a state with entropy g(K), and the c = sqrt(eta) a + sqrt(1-eta) b
// output entropy is compared with g((1-eta) K).

#include <cstdint>
#include <string>
#include <vector>

#include "bosoncast/fock.hpp"

namespace bosoncast {

enum class ConjectureFamily { diagonal, low_rank, thermal_perturbation };

std::string_view to_string(ConjectureFamily family);
ConjectureFamily parse_conjecture_family(std::string_view text);

struct Conjecture2Config {
  int budget = 2000;
  std::uint64_t seed = 1;
  std::vector<ConjectureFamily> families{ConjectureFamily::diagonal, ConjectureFamily::low_rank,
                                         ConjectureFamily::thermal_perturbation};
  double constraint_tolerance = 1e-9;  // |S(rho_b) - g(K)|, bits
  double tail_budget = kDefaultTailBudget;
};

struct StateDescriptor {
  int id = 0;
  std::string family;  // "thermal" for candidate 0
  std::vector<std::pair<std::string, double>> params;
  double input_entropy_bits = 0.0;
  double mean_photon_number = 0.0;
  double tail_mass = 0.0;
};

struct SearchReport {
  double eta = 0.0;
  double k = 0.0;
  int dim = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> families;
  int budget = 0;
  int candidates_evaluated = 0;
  int candidates_skipped = 0;  // constraint could not be met
  EntropyValue best_entropy;
  EntropyValue target_entropy;  // g((1 - eta) K)
  double gap = 0.0;             // best - target
  double constraint_residual = 0.0;  // largest over evaluated candidates
  double thermal_entropy_bits = 0.0;
  double thermal_gap = 0.0;
  StateDescriptor best_state;
  std::string mode_coverage = "single-mode only: the weak form with n = 1 is searched";
};

/// Candidate 0 is thermal(K); the rest cycle through the selected families.
/// Candidate parameters are drawn sequentially from the seed, each candidate's
/// free temperature-like scalar is bisected onto S(rho_b) = g(K), and the
/// output entropies are computed in parallel and reduced by (entropy, id).
SearchReport conjecture2_search(double eta, double k, int dim, const Conjecture2Config& config);

/// Output entropy in bits of vacuum (x) rho_b.
double vacuum_output_entropy(const FockDensityMatrix& rho_b, double eta);

struct LocalProbe {
  std::string kind;  // coherent, squeezed, fock_admixture, random_pure, single_photon
  double magnitude = 0.0;
  double entropy_bits = 0.0;
  double excess_bits = 0.0;  // entropy - vacuum entropy
};

struct LocalCheckReport {
  double eta = 0.0;
  double k = 0.0;
  int dim = 0;
  std::uint64_t seed = 0;
  double vacuum_entropy_bits = 0.0;
  double baseline_bits = 0.0;  // g((1 - eta) K)
  double min_excess_bits = 0.0;
  bool vacuum_is_local_minimum = false;  // every excess >= -1e-9
  std::vector<LocalProbe> probes;
};

LocalCheckReport conjecture1_local_check(double eta, double k, int dim,
                                         std::span<const double> magnitudes,
                                         std::uint64_t seed);

}  // namespace bosoncast
