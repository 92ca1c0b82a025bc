#include "bosoncast/coherent_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "bosoncast/parallel.hpp"
#include "bosoncast/quadrature.hpp"

namespace bosoncast {

namespace {

struct Node {
  std::complex<double> z;
  double weight;
};

// Product Gauss-Hermite nodes for z ~ CN(centre, variance).
std::vector<Node> complex_gaussian_nodes(std::complex<double> centre, double variance,
                                         const QuadratureRule& rule, double prune) {
  std::vector<Node> nodes;
  const double s = std::sqrt(variance);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double w = rule.weights[i] * rule.weights[j] / std::numbers::pi;
      if (w < prune) continue;
      nodes.push_back({centre + s * std::complex<double>(rule.nodes[i], rule.nodes[j]), w});
    }
  }
  return nodes;
}

// Mixture of |sqrt(eta_r) alpha> over alpha ~ CN(mu, sigma2). The coherent-state
// envelope exp(-eta_r |alpha|^2) is folded into the Gaussian so the nodes
// integrate the remaining polynomial exactly up to degree 2n - 1 per axis.
// Returns K * sum_k g_k v_k v_k^dagger with
// K = exp(-eta_r |mu|^2 / (1 + eta_r sigma2)) / (1 + eta_r sigma2), i.e. the
// mixture itself up to quadrature error.
FockMatrix conditional_mixture(std::complex<double> mu, double sigma2, double eta_r,
                               const QuadratureRule& rule, int dim) {
  const double root = std::sqrt(eta_r);
  if (sigma2 == 0.0) {
    const FockVector c = coherent_amplitudes(root * mu, dim);
    return c * c.adjoint();
  }
  const double spread = 1.0 + eta_r * sigma2;
  const double k_log = -eta_r * std::norm(mu) / spread - std::log(spread);
  const std::vector<Node> nodes = complex_gaussian_nodes(mu / spread, sigma2 / spread, rule, 0.0);
  FockMatrix phi(dim, static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::complex<double> amp = root * nodes[k].z;
    const double scale = std::exp(0.5 * (k_log + std::norm(amp))) * std::sqrt(nodes[k].weight);
    phi.col(static_cast<Eigen::Index>(k)) = scale * coherent_amplitudes(amp, dim);
  }
  return phi * phi.adjoint();
}

struct NodeEntropy {
  double bits = 0.0;
  double tail = 0.0;
};

NodeEntropy normalized_entropy(const FockMatrix& m) {
  const double tr = m.trace().real();
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(m / tr, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (double p : es.eigenvalues()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return {h, std::abs(1.0 - tr)};
}

struct Rates2 {
  double r_b, r_c, tail;
};

Rates2 evaluate(const ChannelParams& params, double beta, int t_nodes, int alpha_nodes,
                const QuadratureGridConfig& grid) {
  const double eta_b = params.eta;
  const double eta_c = 1.0 - params.eta;
  const double nbar = params.nbar;
  const double sigma2 = beta * nbar;
  const double shrink = std::sqrt(1.0 - beta);
  const QuadratureRule alpha_rule = gauss_hermite(alpha_nodes);
  const QuadratureRule t_rule = gauss_hermite(t_nodes);

  // Nodes for averaging conditional entropies over t ~ CN(0, nbar).
  std::vector<Node> plain;
  // Nodes for Charlie's unconditional mixture, drawn from CN(0, nbar) times
  // the t-dependence of the conditional normalisation K_C(t).
  std::vector<Node> mixing;
  double z_mix = 1.0;
  if (beta == 1.0 || nbar == 0.0) {
    plain.push_back({0.0, 1.0});
    mixing.push_back({0.0, 1.0});
  } else {
    plain = complex_gaussian_nodes(0.0, nbar, t_rule, grid.prune);
    const double c0 = 1.0 / (1.0 + eta_c * sigma2);
    const double a = eta_c * (1.0 - beta) * c0;
    z_mix = c0 / (1.0 + a * nbar);
    mixing = complex_gaussian_nodes(0.0, nbar / (1.0 + a * nbar), t_rule, grid.prune);
    for (Node& n : mixing) n.weight *= z_mix / (c0 * std::exp(-a * std::norm(n.z)));
  }

  double plain_total = 0.0;
  for (const Node& n : plain) plain_total += n.weight;

  std::vector<NodeEntropy> bob(plain.size()), charlie(plain.size());
  parallel_for(plain.size(), [&](std::size_t i) {
    const std::complex<double> mu = shrink * plain[i].z;
    bob[i] = normalized_entropy(conditional_mixture(mu, sigma2, eta_b, alpha_rule, grid.dim));
    charlie[i] = normalized_entropy(conditional_mixture(mu, sigma2, eta_c, alpha_rule, grid.dim));
  });
  std::vector<FockMatrix> parts(mixing.size());
  parallel_for(mixing.size(), [&](std::size_t i) {
    parts[i] = mixing[i].weight *
               conditional_mixture(shrink * mixing[i].z, sigma2, eta_c, alpha_rule, grid.dim);
  });

  Rates2 out{0.0, 0.0, 0.0};
  double charlie_conditional = 0.0;
  for (std::size_t i = 0; i < plain.size(); ++i) {
    out.r_b += plain[i].weight * bob[i].bits;
    charlie_conditional += plain[i].weight * charlie[i].bits;
    out.tail = std::max({out.tail, bob[i].tail, charlie[i].tail});
  }
  out.r_b /= plain_total;
  charlie_conditional /= plain_total;
  FockMatrix average = FockMatrix::Zero(grid.dim, grid.dim);
  for (const FockMatrix& p : parts) average += p;
  const NodeEntropy unconditional = normalized_entropy(average);
  out.tail = std::max(out.tail, unconditional.tail);
  out.r_c = unconditional.bits - charlie_conditional;
  return out;
}

}  // namespace

CoherentRegionResult coherent_region_quadrature(const ChannelParams& params, double beta,
                                                const QuadratureGridConfig& grid) {
  validate(params, true);
  detail::require_beta(beta);
  if (grid.dim < 2 || grid.t_nodes < 1 || grid.alpha_nodes < 1 || grid.refine < 1) {
    throw DomainError("quadrature grid needs dim >= 2 and positive node counts");
  }
  const Rates2 coarse = evaluate(params, beta, grid.t_nodes, grid.alpha_nodes, grid);
  const Rates2 fine =
      evaluate(params, beta, grid.t_nodes + grid.refine, grid.alpha_nodes + grid.refine, grid);

  CoherentRegionResult result;
  result.r_b_numeric = fine.r_b;
  result.r_c_numeric = fine.r_c;
  const Rates<double> closed = ultimate_rates(params, beta);
  result.r_b_closed = closed.r_b;
  result.r_c_closed = closed.r_c;
  result.convergence_delta = std::max(std::abs(fine.r_b - coarse.r_b), std::abs(fine.r_c - coarse.r_c));
  result.max_tail = fine.tail;
  if (result.convergence_delta > grid.tolerance) {
    throw QuadratureError("coherent-region quadrature did not converge (delta " +
                          std::to_string(result.convergence_delta) +
                          " bits); raise node counts or dim");
  }
  return result;
}

FockEnsemble coherent_gaussian_ensemble(double nbar, int dim, int nodes_per_axis) {
  detail::require_photon_number(nbar, "coherent ensemble");
  if (dim < 2 || nodes_per_axis < 1) throw DomainError("ensemble needs dim >= 2 and nodes >= 1");
  FockEnsemble ensemble;
  if (nbar == 0.0) {
    ensemble.emplace_back(1.0, make_fock_coherent(0.0, dim));
    return ensemble;
  }
  // Same envelope folding as the region quadrature: nodes from
  // CN(0, nbar / (1 + nbar)), probabilities K g_k e^{|alpha_k|^2}.
  const QuadratureRule rule = gauss_hermite(nodes_per_axis);
  const std::vector<Node> nodes = complex_gaussian_nodes(0.0, nbar / (1.0 + nbar), rule, 0.0);
  std::vector<double> probs;
  double total = 0.0;
  for (const Node& n : nodes) {
    probs.push_back(n.weight * std::exp(std::norm(n.z)) / (1.0 + nbar));
    total += probs.back();
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    ensemble.emplace_back(probs[k] / total, make_fock_coherent(nodes[k].z, dim, 1.0));
  }
  return ensemble;
}

}  // namespace bosoncast
