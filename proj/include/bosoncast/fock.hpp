#pragma once

// Truncated Fock-space density matrices. Basis index n1 * dim + n2 for two
// modes.

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bosoncast/entropy.hpp"
#include "bosoncast/errors.hpp"

namespace bosoncast {

using FockMatrix = Eigen::MatrixXcd;
using FockVector = Eigen::VectorXcd;

inline constexpr double kDefaultTailBudget = 1e-8;

class FockDensityMatrix {
 public:
  /// Checks shape, Hermiticity (1e-12 of scale) and unit trace (1e-12).
  FockDensityMatrix(FockMatrix matrix, int dim, int n_modes, double tail_mass);

  int dim() const { return dim_; }
  int n_modes() const { return n_modes_; }
  const FockMatrix& matrix() const { return matrix_; }
  double tail_mass() const { return tail_mass_; }

 private:
  FockMatrix matrix_;
  int dim_;
  int n_modes_;
  double tail_mass_;
};

/// Smallest dim with thermal tail (K/(K+1))^dim below `budget`.
int default_thermal_dim(double k, double budget = kDefaultTailBudget);
/// ceil(|alpha|^2 + 10 |alpha| + 20).
int default_coherent_dim(std::complex<double> alpha);

FockDensityMatrix make_fock_thermal(double k, int dim, double budget = kDefaultTailBudget);
FockDensityMatrix make_fock_coherent(std::complex<double> alpha, int dim,
                                     double budget = kDefaultTailBudget);
/// probs[n] is the weight of |n>; entries past dim count as tail.
FockDensityMatrix make_fock_diagonal(std::span<const double> probs, int dim,
                                     double budget = kDefaultTailBudget);
/// |psi><psi| / <psi|psi>; psi.size() must equal dim.
FockDensityMatrix make_fock_pure(const FockVector& psi);
/// Squeezed vacuum S(r e^{i phi})|0> with <a a> = -e^{i phi} sinh r cosh r.
FockDensityMatrix make_fock_squeezed_vacuum(double r, double phase, int dim,
                                            double budget = kDefaultTailBudget);
/// Keep the leading dim x dim block of a single-mode matrix with unit trace,
/// renormalize, and add the discarded weight to the tail.
FockDensityMatrix truncate(const FockMatrix& rho, int dim, double prior_tail,
                           double budget = kDefaultTailBudget);

/// Throws InvalidStateError if an eigenvalue is below -1e-12 of scale.
void validate_spectrum(const FockDensityMatrix& rho);

/// Eigenvalues in [-1e-9, 0) count as 0; anything lower is an InvalidStateError.
EntropyValue von_neumann_entropy_fock(const FockDensityMatrix& rho,
                                      EntropyBase base = EntropyBase::bits);
double shannon_entropy_bits(std::span<const double> probs);

using FockEnsemble = std::vector<std::pair<double, FockDensityMatrix>>;
EntropyValue holevo_chi(const FockEnsemble& ensemble, EntropyBase base = EntropyBase::bits);

double mean_photon_number(const FockDensityMatrix& rho);
double purity(const FockDensityMatrix& rho);
/// Half the trace norm of the difference.
double trace_distance(const FockDensityMatrix& a, const FockDensityMatrix& b);
FockDensityMatrix tensor(const FockDensityMatrix& a, const FockDensityMatrix& b);
/// Reduced state of mode `keep` (0 or 1) of a two-mode matrix.
FockDensityMatrix partial_trace(const FockDensityMatrix& joint, int keep);

/// Coherent-state Fock amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!), n < dim.
FockVector coherent_amplitudes(std::complex<double> alpha, int dim);

}  // namespace bosoncast
