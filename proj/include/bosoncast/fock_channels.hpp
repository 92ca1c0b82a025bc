#pragma once

// Beam splitter on two truncated modes. The unitary is exp(theta (a^dag b - a b^dag))
// with theta = arccos(sqrt(eta)); it maps the output modes to
// c = sqrt(eta) a + sqrt(1-eta) b on the first arm and -d on the second, where
// d = sqrt(1-eta) a - sqrt(eta) b. propagate() undoes that sign with the
// photon-number parity so the second output is d itself.

#include <vector>

#include "bosoncast/fock.hpp"

namespace bosoncast {

class BeamSplitterUnitary {
 public:
  BeamSplitterUnitary(double eta, int dim);

  double eta() const { return eta_; }
  int dim() const { return dim_; }

  /// Block on total photon number N over the basis |n, N-n>, n ascending from
  /// first_index(N). Blocks with N >= dim act on a cut subspace and are only
  /// the truncated generator's exponential.
  const Eigen::MatrixXd& block(int total) const { return blocks_[static_cast<std::size_t>(total)]; }
  int first_index(int total) const;
  int block_count() const { return static_cast<int>(blocks_.size()); }

  /// U psi for psi indexed n1 * dim + n2.
  FockVector apply(const FockVector& psi) const;
  /// Squared norm of psi on total photon numbers >= dim.
  double leaked_weight(const FockVector& psi) const;
  /// Dense dim^2 x dim^2 matrix.
  FockMatrix dense() const;

 private:
  double eta_;
  int dim_;
  std::vector<Eigen::MatrixXd> blocks_;
};

struct PropagateOptions {
  double tail_budget = kDefaultTailBudget;
  double weight_cutoff = 1e-20;  // spectral products below this are dropped
};

struct ChannelOutputs {
  FockDensityMatrix rho_c;
  FockDensityMatrix rho_d;
  double leaked = 0.0;  // weight on total photon numbers >= dim
};

/// Applies the beam splitter to rho_a (x) rho_b via their spectral
/// decompositions and returns the reduced output states. Output tails carry
/// the input tails, the leak and the dropped weight.
ChannelOutputs propagate(const FockDensityMatrix& rho_a, const FockDensityMatrix& rho_b,
                         double eta, const PropagateOptions& options = {});
ChannelOutputs propagate(const FockDensityMatrix& rho_a, const FockDensityMatrix& rho_b,
                         const BeamSplitterUnitary& unitary,
                         const PropagateOptions& options = {});

/// Full two-mode output U (rho_a (x) rho_b) U^dag; dense, for small dims.
FockDensityMatrix propagate_joint(const FockDensityMatrix& rho_a, const FockDensityMatrix& rho_b,
                                  double eta);

}  // namespace bosoncast
