#pragma once

// Numerical check of the coherent-state superposition code on the broadcast
// channel. Alice sends |alpha> with t ~ CN(0, nbar) (Charlie's cloud centre)
// and alpha | t ~ CN(sqrt(1-beta) t, beta nbar). Then
//   R_B = E_t S(rho_B(t)),  R_C = S(E_t rho_C(t)) - E_t S(rho_C(t)),
// with rho_X(t) the mixture of |sqrt(eta_X) alpha> over alpha | t.

#include "bosoncast/capacity.hpp"
#include "bosoncast/fock.hpp"

namespace bosoncast {

struct QuadratureGridConfig {
  int dim = 50;
  int t_nodes = 20;       // Gauss-Hermite nodes per real axis of t
  int alpha_nodes = 30;   // Gauss-Hermite nodes per real axis of alpha | t
  int refine = 6;         // extra nodes per axis for the convergence rerun
  double tolerance = 1e-4;  // bits; allowed coarse/fine disagreement
  double prune = 1e-12;     // t weights below this are dropped
};

struct CoherentRegionResult {
  double r_b_numeric = 0.0;
  double r_c_numeric = 0.0;
  double r_b_closed = 0.0;
  double r_c_closed = 0.0;
  double convergence_delta = 0.0;  // max coarse/fine rate difference, bits
  double max_tail = 0.0;           // largest trace deficit of a node state
};

/// Throws QuadratureError when the refined rerun moves either rate by more
/// than grid.tolerance. Requires eta > 1/2.
CoherentRegionResult coherent_region_quadrature(const ChannelParams& params, double beta,
                                                const QuadratureGridConfig& grid = {});

/// Isotropic Gaussian ensemble of coherent states with <|alpha|^2> = nbar,
/// discretized on a product Gauss-Hermite grid, probabilities renormalized.
FockEnsemble coherent_gaussian_ensemble(double nbar, int dim, int nodes_per_axis);

}  // namespace bosoncast
