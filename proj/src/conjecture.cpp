#include "bosoncast/conjecture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>

#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include "bosoncast/fock_channels.hpp"
#include "bosoncast/parallel.hpp"

namespace bosoncast {

std::string_view to_string(ConjectureFamily family) {
  switch (family) {
    case ConjectureFamily::diagonal: return "diagonal";
    case ConjectureFamily::low_rank: return "low_rank";
    case ConjectureFamily::thermal_perturbation: return "thermal_perturbation";
  }
  return "unknown";
}

ConjectureFamily parse_conjecture_family(std::string_view text) {
  if (text == "diagonal") return ConjectureFamily::diagonal;
  if (text == "low_rank") return ConjectureFamily::low_rank;
  if (text == "thermal_perturbation") return ConjectureFamily::thermal_perturbation;
  throw DomainError("unknown conjecture family '" + std::string(text) + "'");
}

double vacuum_output_entropy(const FockDensityMatrix& rho_b, double eta) {
  const FockDensityMatrix vacuum = make_fock_thermal(0.0, rho_b.dim());
  return von_neumann_entropy_fock(propagate(vacuum, rho_b, eta).rho_c).bits();
}

namespace {

constexpr int kBisectionSteps = 200;
constexpr int kExtraLevels = 30;

// Weights exp(tau * logw_i), normalized.
std::vector<double> tempered(const std::vector<double>& logw, double tau) {
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> p(logw.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += (p[i] = std::exp(tau * (logw[i] - top)));
  for (double& x : p) x /= total;
  return p;
}

// Solves f(x) = target for f monotone on [lo, hi] with f(lo) and f(hi) on
// opposite sides; `increasing` gives the direction.
template <typename F>
std::optional<double> bisect(F f, double lo, double hi, double target, bool increasing,
                             double tol) {
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < kBisectionSteps; ++i) {
    x = 0.5 * (lo + hi);
    const double v = f(x);
    if (std::abs(v - target) <= 0.01 * tol) return x;
    if ((v < target) == increasing) lo = x; else hi = x;
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(hi))) break;
  }
  if (std::abs(f(x) - target) <= tol) return x;
  return std::nullopt;
}

// Entropy-decreasing tempering: find tau >= 0 with H(tempered(logw, tau)) = target.
std::optional<double> solve_tau(const std::vector<double>& logw, double target, double tol) {
  auto h = [&](double tau) { return shannon_entropy_bits(tempered(logw, tau)); };
  if (h(0.0) <= target) return std::nullopt;
  double hi = 1.0;
  for (int i = 0; i < 60 && h(hi) > target; ++i) hi *= 2.0;
  if (h(hi) > target) return std::nullopt;
  return bisect(h, 0.0, hi, target, false, tol);
}

struct Recipe {
  ConjectureFamily family;
  // diagonal
  std::vector<int> support;
  std::vector<double> logw;
  bool contiguous = false;
  double noise = 0.0;
  // low_rank
  FockMatrix basis;  // orthonormal columns
  // thermal_perturbation
  std::complex<double> alpha;
  double squeeze_r = 0.0;
  double squeeze_phase = 0.0;
  double epsilon = 0.0;
  int admixed_level = 0;
};

struct Built {
  FockDensityMatrix rho;
  StateDescriptor descriptor;
};

int entropy_floor_support(double k) {
  return static_cast<int>(std::floor(std::exp2(g_bits(k)))) + 1;
}

Recipe draw(ConjectureFamily family, double k, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Recipe recipe;
  recipe.family = family;
  const int s_min = std::min(entropy_floor_support(k), dim);
  switch (family) {
    case ConjectureFamily::diagonal: {
      const int s = std::uniform_int_distribution<int>(s_min, dim)(rng);
      recipe.contiguous = unit(rng) < 0.5;
      if (recipe.contiguous) {
        const double slope = std::log((k + 1.0) / k);
        recipe.noise = unit(rng);
        for (int n = 0; n < s; ++n) {
          recipe.support.push_back(n);
          recipe.logw.push_back(-slope * n + recipe.noise * normal(rng));
        }
      } else {
        std::vector<int> levels(static_cast<std::size_t>(dim));
        std::iota(levels.begin(), levels.end(), 0);
        std::shuffle(levels.begin(), levels.end(), rng);
        recipe.support.assign(levels.begin(), levels.begin() + s);
        std::sort(recipe.support.begin(), recipe.support.end());
        for (int i = 0; i < s; ++i) recipe.logw.push_back(-3.0 * unit(rng));
      }
      break;
    }
    case ConjectureFamily::low_rank: {
      const int r = std::uniform_int_distribution<int>(s_min, std::max(s_min, std::min(dim, 16)))(rng);
      const int m = std::uniform_int_distribution<int>(r, dim)(rng);
      FockMatrix g = FockMatrix::Zero(dim, r);
      for (int j = 0; j < r; ++j) {
        for (int i = 0; i < m; ++i) g(i, j) = {normal(rng), normal(rng)};
      }
      Eigen::HouseholderQR<FockMatrix> qr(g);
      recipe.basis = qr.householderQ() * FockMatrix::Identity(dim, r);
      for (int j = 0; j < r; ++j) recipe.logw.push_back(-3.0 * unit(rng));
      break;
    }
    case ConjectureFamily::thermal_perturbation: {
      recipe.alpha = std::polar(0.5 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
      recipe.squeeze_r = 0.3 * unit(rng);
      recipe.squeeze_phase = 2.0 * std::numbers::pi * unit(rng);
      recipe.epsilon = 0.2 * unit(rng);
      recipe.admixed_level = std::uniform_int_distribution<int>(0, std::min(5, dim - 1))(rng);
      break;
    }
  }
  return recipe;
}

// D(alpha) S(zeta) restricted to the first `size` levels, built with room
// to spare so the cut columns are accurate.
FockMatrix displaced_squeezer(std::complex<double> alpha, double r, double phase, int size) {
  const int big = size + 40;
  FockMatrix a = FockMatrix::Zero(big, big);
  for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const FockMatrix ad = a.adjoint();
  const std::complex<double> zeta = std::polar(r, phase);
  const FockMatrix sq_gen = 0.5 * (std::conj(zeta) * a * a - zeta * ad * ad);
  const FockMatrix disp_gen = alpha * ad - std::conj(alpha) * a;
  const FockMatrix u = FockMatrix(disp_gen.exp()) * FockMatrix(sq_gen.exp());
  return u.topLeftCorner(size, size);
}

std::optional<Built> build(const Recipe& recipe, double k, int dim, double target,
                           const Conjecture2Config& config) {
  const double tol = config.constraint_tolerance;
  StateDescriptor d;
  d.family = std::string(to_string(recipe.family));
  switch (recipe.family) {
    case ConjectureFamily::diagonal: {
      const std::optional<double> tau = solve_tau(recipe.logw, target, tol);
      if (!tau) return std::nullopt;
      const std::vector<double> p = tempered(recipe.logw, *tau);
      std::vector<double> probs(static_cast<std::size_t>(dim), 0.0);
      for (std::size_t i = 0; i < p.size(); ++i) probs[static_cast<std::size_t>(recipe.support[i])] = p[i];
      d.params = {{"support_size", static_cast<double>(p.size())},
                  {"contiguous", recipe.contiguous ? 1.0 : 0.0},
                  {"noise", recipe.noise},
                  {"tau", *tau}};
      return Built{make_fock_diagonal(probs, dim, config.tail_budget), d};
    }
    case ConjectureFamily::low_rank: {
      const std::optional<double> tau = solve_tau(recipe.logw, target, tol);
      if (!tau) return std::nullopt;
      const std::vector<double> p = tempered(recipe.logw, *tau);
      FockMatrix rho = FockMatrix::Zero(dim, dim);
      for (std::size_t j = 0; j < p.size(); ++j) {
        const auto col = recipe.basis.col(static_cast<Eigen::Index>(j));
        rho.noalias() += p[j] * col * col.adjoint();
      }
      rho /= rho.trace().real();
      d.params = {{"rank", static_cast<double>(p.size())}, {"tau", *tau}};
      return Built{FockDensityMatrix(0.5 * (rho + rho.adjoint()), dim, 1, 0.0), d};
    }
    case ConjectureFamily::thermal_perturbation: {
      const int work = dim + kExtraLevels;
      const FockMatrix u =
          displaced_squeezer(recipe.alpha, recipe.squeeze_r, recipe.squeeze_phase, work);
      auto full = [&](double kp) {
        Eigen::VectorXd w(work);
        const double q = kp / (kp + 1.0);
        double x = 1.0 / (kp + 1.0);
        for (int n = 0; n < work; ++n, x *= q) w(n) = x;
        FockMatrix rho = (1.0 - recipe.epsilon) * u * w.cast<std::complex<double>>().asDiagonal() *
                         u.adjoint();
        rho(recipe.admixed_level, recipe.admixed_level) += recipe.epsilon;
        return FockMatrix(0.5 * (rho + rho.adjoint()));
      };
      auto cut = [&](double kp) {
        const FockMatrix rho = full(kp);
        FockMatrix block = rho.topLeftCorner(dim, dim);
        block /= block.trace().real();
        return FockDensityMatrix(std::move(block), dim, 1, 0.0);
      };
      auto entropy = [&](double kp) { return von_neumann_entropy_fock(cut(kp)).bits(); };
      if (entropy(0.0) >= target) return std::nullopt;
      double hi = std::max(k, 1e-3);
      for (int i = 0; i < 40 && entropy(hi) < target; ++i) hi *= 2.0;
      if (entropy(hi) < target) return std::nullopt;
      const std::optional<double> kp = bisect(entropy, 0.0, hi, target, true, tol);
      if (!kp) return std::nullopt;
      FockMatrix rho = full(*kp);
      try {
        FockDensityMatrix state = truncate(rho, dim, 0.0, config.tail_budget);
        d.params = {{"alpha_re", recipe.alpha.real()},
                    {"alpha_im", recipe.alpha.imag()},
                    {"squeeze_r", recipe.squeeze_r},
                    {"squeeze_phase", recipe.squeeze_phase},
                    {"epsilon", recipe.epsilon},
                    {"admixed_level", static_cast<double>(recipe.admixed_level)},
                    {"k_prime", *kp}};
        return Built{std::move(state), d};
      } catch (const TruncationError&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

struct Outcome {
  bool ok = false;
  double output_bits = 0.0;
  double residual = 0.0;
  StateDescriptor descriptor;
};

}  // namespace

SearchReport conjecture2_search(double eta, double k, int dim, const Conjecture2Config& config) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("conjecture search: eta must lie in (0, 1)");
  if (!std::isfinite(k) || !(k > 0.0)) throw DomainError("conjecture search: k must be > 0");
  if (dim < 2) throw DomainError("conjecture search: dim must be >= 2");
  if (config.budget < 1) throw DomainError("conjecture search: budget must be >= 1");
  if (config.families.empty()) throw DomainError("conjecture search: no families selected");

  SearchReport report;
  report.eta = eta;
  report.k = k;
  report.dim = dim;
  report.seed = config.seed;
  report.budget = config.budget;
  for (ConjectureFamily f : config.families) report.families.emplace_back(to_string(f));
  const double target = g_bits(k);
  report.target_entropy = {g_bits((1.0 - eta) * k), EntropyBase::bits};

  std::mt19937_64 rng(config.seed);
  std::vector<Recipe> recipes;
  for (int id = 1; id < config.budget; ++id) {
    const ConjectureFamily family =
        config.families[static_cast<std::size_t>(id - 1) % config.families.size()];
    recipes.push_back(draw(family, k, dim, rng));
  }

  const BeamSplitterUnitary unitary(eta, dim);
  const FockDensityMatrix vacuum = make_fock_thermal(0.0, dim);
  PropagateOptions options;
  options.tail_budget = config.tail_budget;

  std::vector<Outcome> outcomes(static_cast<std::size_t>(config.budget));
  parallel_for(outcomes.size(), [&](std::size_t i) {
    std::optional<Built> built;
    if (i == 0) {
      StateDescriptor d;
      d.family = "thermal";
      d.params = {{"k", k}};
      built = Built{make_fock_thermal(k, dim, config.tail_budget), d};
    } else {
      built = build(recipes[i - 1], k, dim, target, config);
    }
    Outcome& out = outcomes[i];
    if (!built) return;
    const double s_in = von_neumann_entropy_fock(built->rho).bits();
    out.residual = std::abs(s_in - target);
    if (out.residual > config.constraint_tolerance) return;
    out.output_bits =
        von_neumann_entropy_fock(propagate(vacuum, built->rho, unitary, options).rho_c).bits();
    out.descriptor = std::move(built->descriptor);
    out.descriptor.id = static_cast<int>(i);
    out.descriptor.input_entropy_bits = s_in;
    out.descriptor.mean_photon_number = mean_photon_number(built->rho);
    out.descriptor.tail_mass = built->rho.tail_mass();
    out.ok = true;
  });

  if (!outcomes.front().ok) {
    throw NumericError("thermal reference candidate failed the entropy constraint; increase dim");
  }
  const Outcome* best = nullptr;
  for (const Outcome& o : outcomes) {
    if (!o.ok) {
      ++report.candidates_skipped;
      continue;
    }
    ++report.candidates_evaluated;
    report.constraint_residual = std::max(report.constraint_residual, o.residual);
    if (!best || std::tie(o.output_bits, o.descriptor.id) <
                     std::tie(best->output_bits, best->descriptor.id)) {
      best = &o;
    }
  }
  report.best_entropy = {best->output_bits, EntropyBase::bits};
  report.best_state = best->descriptor;
  report.gap = best->output_bits - report.target_entropy.bits();
  report.thermal_entropy_bits = outcomes.front().output_bits;
  report.thermal_gap = report.thermal_entropy_bits - report.target_entropy.bits();
  return report;
}

LocalCheckReport conjecture1_local_check(double eta, double k, int dim,
                                         std::span<const double> magnitudes,
                                         std::uint64_t seed) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("local check: eta must lie in (0, 1)");
  detail::require_photon_number(k, "local check");
  if (dim < 2) throw DomainError("local check: dim must be >= 2");
  for (double m : magnitudes) {
    if (!(m > 0.0 && m <= 1.0)) throw DomainError("local check: magnitudes must lie in (0, 1]");
  }

  LocalCheckReport report;
  report.eta = eta;
  report.k = k;
  report.dim = dim;
  report.seed = seed;
  report.baseline_bits = g_bits((1.0 - eta) * k);

  const FockDensityMatrix rho_b = make_fock_thermal(k, dim);
  const BeamSplitterUnitary unitary(eta, dim);
  auto output = [&](const FockDensityMatrix& rho_a) {
    return von_neumann_entropy_fock(propagate(rho_a, rho_b, unitary).rho_c).bits();
  };
  report.vacuum_entropy_bits = output(make_fock_thermal(0.0, dim));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::pair<std::string, FockDensityMatrix>> inputs;
  std::vector<double> sizes;
  for (double m : magnitudes) {
    inputs.emplace_back("coherent", make_fock_coherent(m, dim));
    inputs.emplace_back("squeezed", make_fock_squeezed_vacuum(m, 0.0, dim));
    const std::vector<double> mix{1.0 - m, m};
    inputs.emplace_back("fock_admixture", make_fock_diagonal(mix, dim));
    FockVector psi = FockVector::Zero(dim);
    const int span_levels = std::min(dim, 6);
    FockVector dir = FockVector::Zero(dim);
    for (int n = 0; n < span_levels; ++n) dir(n) = {normal(rng), normal(rng)};
    dir.normalize();
    psi(0) = 1.0;
    psi += m * dir;
    inputs.emplace_back("random_pure", make_fock_pure(psi));
    sizes.insert(sizes.end(), 4, m);
  }
  const std::vector<double> one{0.0, 1.0};
  inputs.emplace_back("single_photon", make_fock_diagonal(one, dim));
  sizes.push_back(1.0);

  report.probes.resize(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    LocalProbe& p = report.probes[i];
    p.kind = inputs[i].first;
    p.magnitude = sizes[i];
    p.entropy_bits = output(inputs[i].second);
    p.excess_bits = p.entropy_bits - report.vacuum_entropy_bits;
  });
  report.min_excess_bits = report.probes.empty() ? 0.0 : report.probes.front().excess_bits;
  for (const LocalProbe& p : report.probes) report.min_excess_bits = std::min(report.min_excess_bits, p.excess_bits);
  report.vacuum_is_local_minimum = report.min_excess_bits >= -1e-9;
  return report;
}

}  // namespace bosoncast
