#include "bosoncast/fock_channels.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace bosoncast {

BeamSplitterUnitary::BeamSplitterUnitary(double eta, int dim) : eta_(eta), dim_(dim) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("beam splitter: eta must lie in [0, 1]");
  if (dim < 2) throw DomainError("beam splitter: dim must be >= 2");
  const double theta = std::acos(std::sqrt(eta));
  blocks_.reserve(static_cast<std::size_t>(2 * dim - 1));
  for (int total = 0; total <= 2 * dim - 2; ++total) {
    const int lo = first_index(total);
    const int hi = std::min(total, dim - 1);
    const int size = hi - lo + 1;
    // a^dag b |n, m> = sqrt((n+1) m) |n+1, m-1>, a b^dag |n, m> = sqrt(n (m+1)) |n-1, m+1>
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i + 1 < size; ++i) {
      const double n = lo + i;
      const double m = total - n;
      const double amp = std::sqrt((n + 1.0) * m);
      gen(i + 1, i) = amp;
      gen(i, i + 1) = -amp;
    }
    blocks_.push_back(theta == 0.0 ? Eigen::MatrixXd::Identity(size, size)
                                   : Eigen::MatrixXd((theta * gen).exp()));
  }
}

int BeamSplitterUnitary::first_index(int total) const { return std::max(0, total - dim_ + 1); }

FockVector BeamSplitterUnitary::apply(const FockVector& psi) const {
  const Eigen::Index d = dim_;
  if (psi.size() != d * d) throw DomainError("beam splitter: state size must be dim^2");
  FockVector out(psi.size());
  FockVector slice;
  for (int total = 0; total < block_count(); ++total) {
    const int lo = first_index(total);
    const Eigen::MatrixXd& u = block(total);
    const Eigen::Index size = u.rows();
    slice.resize(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const Eigen::Index n = lo + i;
      slice(i) = psi(n * d + (total - n));
    }
    slice = u * slice;
    for (Eigen::Index i = 0; i < size; ++i) {
      const Eigen::Index n = lo + i;
      out(n * d + (total - n)) = slice(i);
    }
  }
  return out;
}

double BeamSplitterUnitary::leaked_weight(const FockVector& psi) const {
  double w = 0.0;
  for (int n1 = 0; n1 < dim_; ++n1) {
    for (int n2 = std::max(0, dim_ - n1); n2 < dim_; ++n2) w += std::norm(psi(n1 * dim_ + n2));
  }
  return w;
}

FockMatrix BeamSplitterUnitary::dense() const {
  const Eigen::Index d = dim_;
  FockMatrix u = FockMatrix::Zero(d * d, d * d);
  for (int total = 0; total < block_count(); ++total) {
    const int lo = first_index(total);
    const Eigen::MatrixXd& b = block(total);
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        const Eigen::Index ni = lo + i;
        const Eigen::Index nj = lo + j;
        u(ni * d + (total - ni), nj * d + (total - nj)) = b(i, j);
      }
    }
  }
  return u;
}

namespace {

void require_pair(const FockDensityMatrix& a, const FockDensityMatrix& b, int dim) {
  if (a.n_modes() != 1 || b.n_modes() != 1) {
    throw DomainError("propagate: inputs must be single-mode states");
  }
  if (a.dim() != b.dim() || a.dim() != dim) throw DomainError("propagate: dimension mismatch");
}

void flip_parity(FockMatrix& rho) {
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if ((i + j) % 2 == 1) rho(i, j) = -rho(i, j);
    }
  }
}

}  // namespace

ChannelOutputs propagate(const FockDensityMatrix& rho_a, const FockDensityMatrix& rho_b,
                         double eta, const PropagateOptions& options) {
  return propagate(rho_a, rho_b, BeamSplitterUnitary(eta, rho_a.dim()), options);
}

ChannelOutputs propagate(const FockDensityMatrix& rho_a, const FockDensityMatrix& rho_b,
                         const BeamSplitterUnitary& unitary, const PropagateOptions& options) {
  const int dim = unitary.dim();
  require_pair(rho_a, rho_b, dim);
  Eigen::SelfAdjointEigenSolver<FockMatrix> ea(rho_a.matrix());
  Eigen::SelfAdjointEigenSolver<FockMatrix> eb(rho_b.matrix());
  if (ea.info() != Eigen::Success || eb.info() != Eigen::Success) {
    throw NumericError("propagate: eigensolver failed");
  }

  FockMatrix c_acc = FockMatrix::Zero(dim, dim);
  FockMatrix d_acc = FockMatrix::Zero(dim, dim);
  double kept = 0.0;
  double leaked = 0.0;
  FockVector psi(static_cast<Eigen::Index>(dim) * dim);
  for (Eigen::Index i = dim - 1; i >= 0; --i) {
    const double p = ea.eigenvalues()(i);
    if (p <= 0.0) continue;
    const FockVector u = ea.eigenvectors().col(i);
    for (Eigen::Index j = dim - 1; j >= 0; --j) {
      const double w = p * eb.eigenvalues()(j);
      if (!(w >= options.weight_cutoff)) continue;
      const FockVector v = eb.eigenvectors().col(j);
      for (Eigen::Index n1 = 0; n1 < dim; ++n1) psi.segment(n1 * dim, dim) = u(n1) * v;
      leaked += w * unitary.leaked_weight(psi);
      const FockVector out = unitary.apply(psi);
      const Eigen::Map<const FockMatrix> c(out.data(), dim, dim);  // c(n2, n1)
      c_acc.noalias() += w * c.transpose() * c.conjugate();
      d_acc.noalias() += w * c * c.adjoint();
      kept += w;
    }
  }
  if (!(kept > 0.0)) throw InvalidStateError("propagate: input spectra carry no weight");
  if (leaked > options.tail_budget) {
    throw TruncationError("beam splitter leaks " + std::to_string(leaked) +
                          " of the input weight past dim " + std::to_string(dim) +
                          "; increase dim");
  }
  const double tail = rho_a.tail_mass() + rho_b.tail_mass() + leaked + std::max(0.0, 1.0 - kept);
  c_acc /= c_acc.trace().real();
  d_acc /= d_acc.trace().real();
  flip_parity(d_acc);
  FockMatrix c_herm = 0.5 * (c_acc + c_acc.adjoint());
  FockMatrix d_herm = 0.5 * (d_acc + d_acc.adjoint());
  return {FockDensityMatrix(std::move(c_herm), dim, 1, tail),
          FockDensityMatrix(std::move(d_herm), dim, 1, tail), leaked};
}

FockDensityMatrix propagate_joint(const FockDensityMatrix& rho_a, const FockDensityMatrix& rho_b,
                                  double eta) {
  require_pair(rho_a, rho_b, rho_a.dim());
  const BeamSplitterUnitary bs(eta, rho_a.dim());
  const FockMatrix u = bs.dense();
  const FockDensityMatrix input = tensor(rho_a, rho_b);
  FockMatrix out = u * input.matrix() * u.adjoint();
  out /= out.trace().real();
  out = 0.5 * (out + out.adjoint()).eval();
  return {std::move(out), rho_a.dim(), 2, input.tail_mass()};
}

}  // namespace bosoncast
