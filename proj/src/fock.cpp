#include "bosoncast/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace bosoncast {

namespace {

void require_dim(int dim) {
  if (dim < 2) throw DomainError("Fock truncation dim must be >= 2");
}

void require_tail(double tail, double budget, int dim) {
  if (tail > budget) {
    throw TruncationError("truncation tail " + std::to_string(tail) + " exceeds budget " +
                          std::to_string(budget) + " at dim " + std::to_string(dim) +
                          "; increase dim");
  }
}

FockMatrix diagonal_matrix(const Eigen::VectorXd& p) {
  return p.cast<std::complex<double>>().asDiagonal();
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(FockMatrix matrix, int dim, int n_modes, double tail_mass)
    : matrix_(std::move(matrix)), dim_(dim), n_modes_(n_modes), tail_mass_(tail_mass) {
  require_dim(dim);
  if (n_modes != 1 && n_modes != 2) throw DomainError("Fock state must have 1 or 2 modes");
  const Eigen::Index size = n_modes == 1 ? dim : static_cast<Eigen::Index>(dim) * dim;
  if (matrix_.rows() != size || matrix_.cols() != size) {
    throw InvalidStateError("density matrix shape does not match dim^n_modes");
  }
  if (!matrix_.allFinite()) throw InvalidStateError("density matrix has non-finite entries");
  if (!(tail_mass >= 0.0)) throw InvalidStateError("tail mass must be >= 0");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidStateError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - 1.0) > 1e-12) {
    throw InvalidStateError("density matrix trace differs from 1");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
}

int default_thermal_dim(double k, double budget) {
  detail::require_photon_number(k, "thermal");
  if (!(budget > 0.0 && budget < 1.0)) throw DomainError("tail budget must lie in (0, 1)");
  if (k == 0.0) return 2;
  const double q = k / (k + 1.0);
  return std::max(2, static_cast<int>(std::floor(std::log(budget) / std::log(q))) + 1);
}

int default_coherent_dim(std::complex<double> alpha) {
  const double n = std::norm(alpha);
  return static_cast<int>(std::ceil(n + 10.0 * std::sqrt(n) + 20.0));
}

FockDensityMatrix make_fock_thermal(double k, int dim, double budget) {
  detail::require_photon_number(k, "thermal");
  require_dim(dim);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
  if (k == 0.0) {
    p(0) = 1.0;
    return {diagonal_matrix(p), dim, 1, 0.0};
  }
  const double q = k / (k + 1.0);
  double w = 1.0 / (k + 1.0);
  for (int n = 0; n < dim; ++n, w *= q) p(n) = w;
  const double tail = std::pow(q, dim);
  require_tail(tail, budget, dim);
  p /= p.sum();
  return {diagonal_matrix(p), dim, 1, tail};
}

FockVector coherent_amplitudes(std::complex<double> alpha, int dim) {
  FockVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

FockDensityMatrix make_fock_coherent(std::complex<double> alpha, int dim, double budget) {
  require_dim(dim);
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("coherent amplitude must be finite");
  }
  FockVector c = coherent_amplitudes(alpha, dim);
  const double kept = c.squaredNorm();
  const double tail = std::max(0.0, 1.0 - kept);
  require_tail(tail, budget, dim);
  c /= std::sqrt(kept);
  return {c * c.adjoint(), dim, 1, tail};
}

FockDensityMatrix make_fock_diagonal(std::span<const double> probs, int dim, double budget) {
  require_dim(dim);
  if (probs.empty()) throw DomainError("diagonal weights are empty");
  double total = 0.0;
  double tail = 0.0;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
  for (std::size_t n = 0; n < probs.size(); ++n) {
    if (!(probs[n] >= 0.0) || !std::isfinite(probs[n])) {
      throw DomainError("diagonal weights must be finite and >= 0");
    }
    total += probs[n];
    if (n < static_cast<std::size_t>(dim)) p(static_cast<Eigen::Index>(n)) = probs[n];
    else tail += probs[n];
  }
  if (!(total > 0.0)) throw DomainError("diagonal weights sum to zero");
  tail /= total;
  require_tail(tail, budget, dim);
  p /= p.sum();
  return {diagonal_matrix(p), dim, 1, tail};
}

FockDensityMatrix make_fock_pure(const FockVector& psi) {
  const double norm = psi.squaredNorm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("pure state vector has zero norm");
  const FockVector v = psi / std::sqrt(norm);
  return {v * v.adjoint(), static_cast<int>(psi.size()), 1, 0.0};
}

FockDensityMatrix make_fock_squeezed_vacuum(double r, double phase, int dim, double budget) {
  require_dim(dim);
  if (!std::isfinite(r) || !std::isfinite(phase)) throw DomainError("squeezing must be finite");
  FockVector c = FockVector::Zero(dim);
  const std::complex<double> ratio = -std::polar(std::tanh(r), phase);
  std::complex<double> amp = 1.0 / std::sqrt(std::cosh(r));
  c(0) = amp;
  for (int m = 1; 2 * m < dim; ++m) {
    amp *= ratio * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
    c(2 * m) = amp;
  }
  const double kept = c.squaredNorm();
  const double tail = std::max(0.0, 1.0 - kept);
  require_tail(tail, budget, dim);
  c /= std::sqrt(kept);
  return {c * c.adjoint(), dim, 1, tail};
}

FockDensityMatrix truncate(const FockMatrix& rho, int dim, double prior_tail, double budget) {
  require_dim(dim);
  if (rho.rows() < dim || rho.rows() != rho.cols()) {
    throw DomainError("truncate: matrix smaller than target dim");
  }
  FockMatrix block = rho.topLeftCorner(dim, dim);
  const double kept = block.trace().real();
  const double total = rho.trace().real();
  const double tail = prior_tail + std::max(0.0, (total - kept) / total);
  require_tail(tail, budget, dim);
  block /= kept;
  return {std::move(block), dim, 1, tail};
}

namespace {

Eigen::VectorXd spectrum(const FockDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("density-matrix eigensolver failed");
  return es.eigenvalues();
}

}  // namespace

void validate_spectrum(const FockDensityMatrix& rho) {
  if (spectrum(rho).minCoeff() < -1e-12) {
    throw InvalidStateError("density matrix has a negative eigenvalue");
  }
}

double shannon_entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

EntropyValue von_neumann_entropy_fock(const FockDensityMatrix& rho, EntropyBase base) {
  const Eigen::VectorXd ev = spectrum(rho);
  if (ev.minCoeff() < -1e-9) {
    throw InvalidStateError("density matrix eigenvalue below -1e-9");
  }
  double nats = 0.0;
  for (double p : ev) {
    if (p > 0.0) nats -= p * std::log(p);
  }
  const EntropyValue value{nats, EntropyBase::nats};
  return value.in(base);
}

EntropyValue holevo_chi(const FockEnsemble& ensemble, EntropyBase base) {
  if (ensemble.empty()) throw DomainError("Holevo ensemble is empty");
  const FockDensityMatrix& first = ensemble.front().second;
  double total = 0.0;
  double mixed_tail = 0.0;
  double conditional = 0.0;
  FockMatrix average = FockMatrix::Zero(first.matrix().rows(), first.matrix().cols());
  for (const auto& [p, sigma] : ensemble) {
    if (!(p >= 0.0)) throw DomainError("ensemble probabilities must be >= 0");
    if (sigma.dim() != first.dim() || sigma.n_modes() != first.n_modes()) {
      throw DomainError("ensemble members must share dim and mode count");
    }
    total += p;
    if (p == 0.0) continue;
    average += p * sigma.matrix();
    mixed_tail += p * sigma.tail_mass();
    conditional += p * von_neumann_entropy_fock(sigma, EntropyBase::nats).nats();
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("ensemble probabilities must sum to 1 within 1e-12");
  }
  average /= total;
  const FockDensityMatrix mixed(std::move(average), first.dim(), first.n_modes(), mixed_tail);
  const double chi = von_neumann_entropy_fock(mixed, EntropyBase::nats).nats() - conditional;
  if (chi < -1e-10) throw NumericError("Holevo information came out negative");
  const EntropyValue value{std::max(chi, 0.0), EntropyBase::nats};
  return value.in(base);
}

double mean_photon_number(const FockDensityMatrix& rho) {
  if (rho.n_modes() != 1) throw DomainError("mean_photon_number needs a single-mode state");
  double n = 0.0;
  for (int i = 0; i < rho.dim(); ++i) n += i * rho.matrix()(i, i).real();
  return n;
}

double purity(const FockDensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double trace_distance(const FockDensityMatrix& a, const FockDensityMatrix& b) {
  if (a.matrix().rows() != b.matrix().rows()) throw DomainError("trace_distance: shape mismatch");
  const FockMatrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

FockDensityMatrix tensor(const FockDensityMatrix& a, const FockDensityMatrix& b) {
  if (a.n_modes() != 1 || b.n_modes() != 1 || a.dim() != b.dim()) {
    throw DomainError("tensor: need two single-mode states of equal dim");
  }
  const int d = a.dim();
  FockMatrix m(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m.block(i * d, j * d, d, d) = a.matrix()(i, j) * b.matrix();
  }
  const double tail = a.tail_mass() + b.tail_mass();
  return {std::move(m), d, 2, tail};
}

FockDensityMatrix partial_trace(const FockDensityMatrix& joint, int keep) {
  if (joint.n_modes() != 2) throw DomainError("partial_trace needs a two-mode state");
  if (keep != 0 && keep != 1) throw DomainError("partial_trace: keep must be 0 or 1");
  const int d = joint.dim();
  FockMatrix out = FockMatrix::Zero(d, d);
  const FockMatrix& m = joint.matrix();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < d; ++k) {
        s += keep == 0 ? m(i * d + k, j * d + k) : m(k * d + i, k * d + j);
      }
      out(i, j) = s;
    }
  }
  return {std::move(out), d, 1, joint.tail_mass()};
}

}  // namespace bosoncast
