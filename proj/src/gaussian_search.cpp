#include "bosoncast/gaussian_search.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <tuple>

#include "bosoncast/parallel.hpp"

namespace bosoncast {

std::string_view to_string(GaussianFamily family) {
  switch (family) {
    case GaussianFamily::squeezed_thermal: return "squeezed_thermal";
    case GaussianFamily::symplectic_conjugation: return "symplectic_conjugation";
    case GaussianFamily::lambda_split: return "lambda_split";
  }
  return "unknown";
}

GaussianFamily parse_gaussian_family(std::string_view text) {
  if (text == "squeezed_thermal") return GaussianFamily::squeezed_thermal;
  if (text == "symplectic_conjugation") return GaussianFamily::symplectic_conjugation;
  if (text == "lambda_split") return GaussianFamily::lambda_split;
  throw DomainError("unknown Gaussian search family '" + std::string(text) + "'");
}

double gaussian_output_entropy(const GaussianState& b, double eta) {
  const GaussianState vacuum = make_vacuum<double>(b.n_modes());
  return von_neumann_entropy(beam_splitter(vacuum, b, eta).out_c).bits();
}

std::vector<double> lagrange_multipliers(double eta, std::span<const double> lambdas) {
  const double loss = 1.0 - eta;
  std::vector<double> xi;
  xi.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw DomainError("lagrange: lambda must be > 0");
    xi.push_back(loss * g_prime_nats(loss * lambda) / g_prime_nats(lambda));
  }
  return xi;
}

double lagrange_stationarity_residual(double eta, std::span<const double> lambdas) {
  const std::vector<double> xi = lagrange_multipliers(eta, lambdas);
  double worst = 0.0;
  for (double x : xi) worst = std::max(worst, std::abs(x - xi.front()));
  return worst;
}

namespace {

struct Recipe {
  std::string family;
  std::vector<double> lambdas;
  std::vector<double> squeezes;
  ComplexMatrix<double> symplectic;  // applied to the thermal product
};

// Random point on sum g(lambda_i) = n g(K); the last eigenvalue absorbs the
// remainder exactly.
std::vector<double> random_split(int n, double k, std::mt19937_64& rng) {
  std::vector<double> lambdas(static_cast<std::size_t>(n), k);
  if (n == 1) return lambdas;
  const double total = n * g_bits(k);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double wsum = 0.0;
  for (auto& x : w) wsum += (x = expo(rng));
  double used = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double lambda = g_inv_bits(total * w[static_cast<std::size_t>(i)] / wsum);
    lambdas[static_cast<std::size_t>(i)] = lambda;
    used += g_bits(lambda);
  }
  lambdas.back() = g_inv_bits(std::max(0.0, total - used));
  return lambdas;
}

}  // namespace

GaussianSearchReport min_output_entropy_gaussian(double eta, double k, int n,
                                                 const GaussianSearchConfig& config) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("gaussian search: eta must lie in (0, 1)");
  if (!std::isfinite(k) || k < 0.0) throw DomainError("gaussian search: k must be >= 0");
  if (n < 1) throw DomainError("gaussian search: n must be >= 1");
  if (config.budget < 1) throw DomainError("gaussian search: budget must be >= 1");
  if (config.families.empty()) throw DomainError("gaussian search: no families selected");

  GaussianSearchReport report;
  report.eta = eta;
  report.k = k;
  report.n_modes = n;
  report.seed = config.seed;
  for (GaussianFamily f : config.families) report.families.emplace_back(to_string(f));
  report.target_entropy_bits = n * g_bits((1.0 - eta) * k);

  const ComplexMatrix<double> identity = ComplexMatrix<double>::Identity(2 * n, 2 * n);
  std::vector<Recipe> recipes;
  recipes.push_back({"thermal", std::vector<double>(static_cast<std::size_t>(n), k), {}, identity});

  if (k > 0.0) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int id = 1; id < config.budget; ++id) {
      const GaussianFamily family =
          config.families[static_cast<std::size_t>(id - 1) % config.families.size()];
      Recipe recipe;
      recipe.family = std::string(to_string(family));
      switch (family) {
        case GaussianFamily::squeezed_thermal: {
          recipe.lambdas.assign(static_cast<std::size_t>(n), k);
          std::vector<double> phases(static_cast<std::size_t>(n));
          recipe.squeezes.resize(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) {
            recipe.squeezes[static_cast<std::size_t>(i)] = config.max_squeeze * unit(rng);
            phases[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * unit(rng);
          }
          recipe.symplectic = squeezer<double>(recipe.squeezes, phases);
          break;
        }
        case GaussianFamily::symplectic_conjugation: {
          recipe.lambdas = unit(rng) < 0.5 ? std::vector<double>(static_cast<std::size_t>(n), k)
                                         : random_split(n, k, rng);
          recipe.symplectic = random_symplectic<double>(n, rng, config.max_squeeze);
          break;
        }
        case GaussianFamily::lambda_split: {
          recipe.lambdas = random_split(n, k, rng);
          recipe.symplectic = identity;
          break;
        }
      }
      recipes.push_back(std::move(recipe));
    }
  }

  const double constraint = n * g_bits(k);
  std::vector<GaussianCandidate> results(recipes.size());
  parallel_for(recipes.size(), [&](std::size_t i) {
    const Recipe& recipe = recipes[i];
    const GaussianState b =
        apply_symplectic(recipe.symplectic, make_thermal<double>(std::span<const double>(recipe.lambdas)));
    GaussianCandidate c;
    c.id = static_cast<int>(i);
    c.family = recipe.family;
    c.lambdas = recipe.lambdas;
    c.squeezes = recipe.squeezes;
    c.output_entropy_bits = gaussian_output_entropy(b, eta);
    c.constraint_residual = std::abs(von_neumann_entropy(b).bits() - constraint);
    results[i] = std::move(c);
  });

  const auto best = std::min_element(
      results.begin(), results.end(), [](const GaussianCandidate& a, const GaussianCandidate& b) {
        return std::tie(a.output_entropy_bits, a.id) < std::tie(b.output_entropy_bits, b.id);
      });
  report.candidates_evaluated = static_cast<int>(results.size());
  report.best = *best;
  report.best_entropy_bits = best->output_entropy_bits;
  report.gap = report.best_entropy_bits - report.target_entropy_bits;
  report.thermal_entropy_bits = results.front().output_entropy_bits;
  for (const GaussianCandidate& c : results) {
    report.max_constraint_residual = std::max(report.max_constraint_residual, c.constraint_residual);
  }
  report.thermal_is_minimizer =
      report.thermal_entropy_bits - report.best_entropy_bits <= config.tolerance;
  return report;
}

}  // namespace bosoncast
