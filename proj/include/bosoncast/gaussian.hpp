#pragma once

// Multimode Gaussian states in the annihilation-operator picture.
//
// For modes a_1..a_n and v = [a; a^dagger] the correlation matrix is
// R = <dv dv^dagger> over the fluctuations dv = v - <v>:
//
//   R = [ conj(N) + I    M       ]      N_ij = <da_i^dagger da_j>
//       [ conj(M)        N       ]      M_ij = <da_i da_j>
//
// The upper-left block is the transpose of the photon-number matrix N; for
// real N this is the familiar [[N + I, M], [M*, N]] layout. A linear
// canonical map v -> S v sends R to S R S^dagger, with S^dagger Q S = Q for
// Q = diag(I, -I). Quadratures follow a = q + i p, so vacuum has
// <q^2> = <p^2> = 1/4.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bosoncast/entropy.hpp"
#include "bosoncast/errors.hpp"

namespace bosoncast {

template <std::floating_point Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <std::floating_point Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <std::floating_point Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <std::floating_point Scalar>
struct GaussianStateT {
  ComplexVector<Scalar> mean;  // <a_i>
  ComplexMatrix<Scalar> corr;  // 2n x 2n, see header comment

  Eigen::Index n_modes() const { return mean.size(); }
};
using GaussianState = GaussianStateT<double>;

template <std::floating_point Scalar>
struct SymplecticDecompositionT {
  ComplexMatrix<Scalar> s;          // R = S diag(lambda + 1, lambda) S^dagger
  std::vector<Scalar> lambdas;      // descending, >= 0
};
using SymplecticDecomposition = SymplecticDecompositionT<double>;

template <std::floating_point Scalar>
inline constexpr Scalar kStateTolerance = Scalar(1e-10);

// Symplectic eigenvalues below this count as a pure mode for entropy.
template <std::floating_point Scalar>
inline constexpr Scalar kPureModeThreshold = Scalar(1e-9);

// ---------------------------------------------------------------------------
// Fixed matrices

template <std::floating_point Scalar>
ComplexMatrix<Scalar> q_metric(Eigen::Index n) {
  ComplexMatrix<Scalar> q = ComplexMatrix<Scalar>::Zero(2 * n, 2 * n);
  q.topLeftCorner(n, n).setIdentity();
  q.bottomRightCorner(n, n) = -ComplexMatrix<Scalar>::Identity(n, n);
  return q;
}

// Real symplectic form on (q_1..q_n, p_1..p_n).
template <std::floating_point Scalar>
RealMatrix<Scalar> omega(Eigen::Index n) {
  RealMatrix<Scalar> w = RealMatrix<Scalar>::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n).setIdentity();
  w.bottomLeftCorner(n, n) = -RealMatrix<Scalar>::Identity(n, n);
  return w;
}

// v = U x for x = (q, p).
template <std::floating_point Scalar>
ComplexMatrix<Scalar> quadrature_transform(Eigen::Index n) {
  using C = std::complex<Scalar>;
  ComplexMatrix<Scalar> u(2 * n, 2 * n);
  const auto id = ComplexMatrix<Scalar>::Identity(n, n);
  u << id, C(0, 1) * id, id, C(0, -1) * id;
  return u;
}

// ---------------------------------------------------------------------------
// Constructors

template <std::floating_point Scalar = double>
GaussianStateT<Scalar> make_thermal(std::span<const Scalar> k_per_mode) {
  const auto n = static_cast<Eigen::Index>(k_per_mode.size());
  if (n < 1) throw DomainError("thermal state needs at least one mode");
  GaussianStateT<Scalar> st;
  st.mean = ComplexVector<Scalar>::Zero(n);
  st.corr = ComplexMatrix<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar k = k_per_mode[static_cast<std::size_t>(i)];
    if (!std::isfinite(k) || k < Scalar(0)) {
      throw DomainError("thermal mean photon number must be >= 0");
    }
    st.corr(i, i) = k + Scalar(1);
    st.corr(n + i, n + i) = k;
  }
  return st;
}

template <std::floating_point Scalar = double>
GaussianStateT<Scalar> make_thermal(Eigen::Index n, Scalar k) {
  if (n < 1) throw DomainError("thermal state needs at least one mode");
  std::vector<Scalar> ks(static_cast<std::size_t>(n), k);
  return make_thermal<Scalar>(std::span<const Scalar>(ks));
}

template <std::floating_point Scalar = double>
GaussianStateT<Scalar> make_vacuum(Eigen::Index n) {
  return make_thermal<Scalar>(n, Scalar(0));
}

/// Single-mode squeezed vacuum: <a^dagger a> = sinh^2 r,
/// <a a> = -e^{i phase} sinh r cosh r.
template <std::floating_point Scalar = double>
GaussianStateT<Scalar> make_squeezed_vacuum(Scalar r, Scalar phase) {
  if (!std::isfinite(r) || !std::isfinite(phase)) {
    throw DomainError("squeezing parameters must be finite");
  }
  using C = std::complex<Scalar>;
  GaussianStateT<Scalar> st = make_vacuum<Scalar>(1);
  const Scalar sh = std::sinh(r);
  const Scalar ch = std::cosh(r);
  const C m = -std::polar(Scalar(1), phase) * (sh * ch);
  st.corr(0, 0) = sh * sh + Scalar(1);
  st.corr(1, 1) = sh * sh;
  st.corr(0, 1) = m;
  st.corr(1, 0) = std::conj(m);
  return st;
}

template <std::floating_point Scalar = double>
GaussianStateT<Scalar> make_coherent(std::span<const std::complex<Scalar>> alphas) {
  GaussianStateT<Scalar> st = make_vacuum<Scalar>(static_cast<Eigen::Index>(alphas.size()));
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    st.mean(static_cast<Eigen::Index>(i)) = alphas[i];
  }
  return st;
}

/// Independent joint state, modes of `a` first.
template <std::floating_point Scalar>
GaussianStateT<Scalar> tensor(const GaussianStateT<Scalar>& a,
                              const GaussianStateT<Scalar>& b) {
  const Eigen::Index na = a.n_modes();
  const Eigen::Index nb = b.n_modes();
  const Eigen::Index n = na + nb;
  GaussianStateT<Scalar> st;
  st.mean.resize(n);
  st.mean << a.mean, b.mean;
  st.corr = ComplexMatrix<Scalar>::Zero(2 * n, 2 * n);
  // Four blocks of each input land in the (a, b) and (a^dag, b^dag) slots.
  for (int bi = 0; bi < 2; ++bi) {
    for (int bj = 0; bj < 2; ++bj) {
      st.corr.block(bi * n, bj * n, na, na) = a.corr.block(bi * na, bj * na, na, na);
      st.corr.block(bi * n + na, bj * n + na, nb, nb) =
          b.corr.block(bi * nb, bj * nb, nb, nb);
    }
  }
  return st;
}

/// Marginal on the listed modes, in the given order.
template <std::floating_point Scalar>
GaussianStateT<Scalar> reduce(const GaussianStateT<Scalar>& st,
                              std::span<const Eigen::Index> modes) {
  const Eigen::Index n = st.n_modes();
  const auto m = static_cast<Eigen::Index>(modes.size());
  GaussianStateT<Scalar> out;
  out.mean.resize(m);
  out.corr.resize(2 * m, 2 * m);
  std::vector<Eigen::Index> rows(2 * static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index mode = modes[static_cast<std::size_t>(i)];
    if (mode < 0 || mode >= n) throw DomainError("reduce: mode index out of range");
    out.mean(i) = st.mean(mode);
    rows[static_cast<std::size_t>(i)] = mode;
    rows[static_cast<std::size_t>(m + i)] = n + mode;
  }
  for (Eigen::Index i = 0; i < 2 * m; ++i) {
    for (Eigen::Index j = 0; j < 2 * m; ++j) {
      out.corr(i, j) = st.corr(rows[static_cast<std::size_t>(i)],
                               rows[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

/// <a_i^dagger a_i> including the displacement.
template <std::floating_point Scalar>
std::vector<Scalar> mean_photon_numbers(const GaussianStateT<Scalar>& st) {
  const Eigen::Index n = st.n_modes();
  std::vector<Scalar> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = st.corr(n + i, n + i).real() + std::norm(st.mean(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation and quadrature picture

/// Throws InvalidStateError unless corr is Hermitian, has the bosonic block
/// structure and is positive semidefinite, all to `tol` relative to its scale.
template <std::floating_point Scalar>
void validate(const GaussianStateT<Scalar>& st, Scalar tol = kStateTolerance<Scalar>) {
  const Eigen::Index n = st.n_modes();
  if (n < 1) throw InvalidStateError("Gaussian state has no modes");
  if (st.corr.rows() != 2 * n || st.corr.cols() != 2 * n) {
    throw InvalidStateError("correlation matrix must be 2n x 2n");
  }
  if (!st.corr.allFinite() || !st.mean.allFinite()) {
    throw InvalidStateError("Gaussian state has non-finite entries");
  }
  const Scalar scale = std::max(Scalar(1), st.corr.cwiseAbs().maxCoeff());
  const Scalar limit = tol * scale;
  if ((st.corr - st.corr.adjoint()).cwiseAbs().maxCoeff() > limit) {
    throw InvalidStateError("correlation matrix is not Hermitian");
  }
  const auto tl = st.corr.topLeftCorner(n, n);
  const auto br = st.corr.bottomRightCorner(n, n);
  const auto tr = st.corr.topRightCorner(n, n);
  const auto bl = st.corr.bottomLeftCorner(n, n);
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(n, n);
  if ((tl - id - br.conjugate()).cwiseAbs().maxCoeff() > limit) {
    throw InvalidStateError(
        "upper-left block must equal conj(lower-right block) + I");
  }
  if ((bl - tr.conjugate()).cwiseAbs().maxCoeff() > limit ||
      (tr - tr.transpose()).cwiseAbs().maxCoeff() > limit) {
    throw InvalidStateError("pairing blocks must be symmetric conjugates");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(st.corr, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -limit) {
    throw InvalidStateError("correlation matrix is not positive semidefinite");
  }
}

/// Real symmetrized covariance of (q, p): V = Re(U^dagger R U) / 4.
template <std::floating_point Scalar>
RealMatrix<Scalar> quadrature_covariance(const GaussianStateT<Scalar>& st) {
  const ComplexMatrix<Scalar> u = quadrature_transform<Scalar>(st.n_modes());
  const ComplexMatrix<Scalar> full = u.adjoint() * st.corr * u / Scalar(4);
  RealMatrix<Scalar> v = full.real();
  return Scalar(0.5) * (v + v.transpose());
}

/// Complex form of a real symplectic map on (q, p): S = U S_r U^dagger / 2.
template <std::floating_point Scalar>
ComplexMatrix<Scalar> complex_symplectic(const RealMatrix<Scalar>& s_real) {
  const Eigen::Index n = s_real.rows() / 2;
  const ComplexMatrix<Scalar> u = quadrature_transform<Scalar>(n);
  return u * s_real.template cast<std::complex<Scalar>>() * u.adjoint() / Scalar(2);
}

// ---------------------------------------------------------------------------
// Williamson decomposition

/// Symplectic eigenvalues (photon-number form), descending. Computed as the
/// positive spectrum of the Hermitian matrix i V^{1/2} Omega V^{1/2}, which is
/// similar to i Omega V.
template <std::floating_point Scalar>
std::vector<Scalar> symplectic_eigenvalues(const GaussianStateT<Scalar>& st) {
  validate(st);
  const Eigen::Index n = st.n_modes();
  const RealMatrix<Scalar> v = quadrature_covariance(st);
  Eigen::SelfAdjointEigenSolver<RealMatrix<Scalar>> ves(v);
  if (ves.eigenvalues().minCoeff() <= Scalar(0)) {
    throw InvalidStateError("quadrature covariance is not positive definite");
  }
  const RealMatrix<Scalar> root = ves.operatorSqrt();
  const ComplexMatrix<Scalar> h =
      std::complex<Scalar>(0, 1) * (root * omega<Scalar>(n) * root).template cast<std::complex<Scalar>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> hes(h, Eigen::EigenvaluesOnly);
  std::vector<Scalar> lambdas(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar nu = hes.eigenvalues()(2 * n - 1 - k);
    Scalar lambda = Scalar(2) * nu - Scalar(0.5);
    if (lambda < -kStateTolerance<Scalar> * std::max(Scalar(1), nu)) {
      throw InvalidStateError("state violates the uncertainty principle");
    }
    lambdas[static_cast<std::size_t>(k)] = std::max(lambda, Scalar(0));
  }
  return lambdas;
}

/// R = S Lambda S^dagger with S symplectic and Lambda = diag(lambda + 1, lambda).
/// The quadrature covariance is decomposed as V = S_r D S_r^T with
/// S_r = V^{1/2} O D^{-1/2}; the orthogonal O comes from the eigenvectors of
/// the Hermitian i V^{-1/2} Omega V^{-1/2}. Degenerate eigenvalues yield some
/// valid S among many.
template <std::floating_point Scalar>
SymplecticDecompositionT<Scalar> williamson(const GaussianStateT<Scalar>& st) {
  using C = std::complex<Scalar>;
  validate(st);
  const Eigen::Index n = st.n_modes();
  const RealMatrix<Scalar> v = quadrature_covariance(st);
  Eigen::SelfAdjointEigenSolver<RealMatrix<Scalar>> ves(v);
  if (ves.eigenvalues().minCoeff() <= Scalar(0)) {
    throw InvalidStateError("quadrature covariance is not positive definite");
  }
  const RealMatrix<Scalar> root = ves.operatorSqrt();
  const RealMatrix<Scalar> inv_root = ves.operatorInverseSqrt();
  const RealMatrix<Scalar> a = inv_root * omega<Scalar>(n) * inv_root;
  const ComplexMatrix<Scalar> h = C(0, 1) * a.template cast<C>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> hes(h);

  // Eigenvalues ascend; the top n are +1/nu, smallest first = largest nu first.
  RealMatrix<Scalar> o(2 * n, 2 * n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nu(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index col = n + k;
    const Scalar w = hes.eigenvalues()(col);
    if (w <= Scalar(0)) throw NumericError("williamson: spectrum not split by sign");
    nu(k) = Scalar(1) / w;
    const ComplexVector<Scalar> e = hes.eigenvectors().col(col);
    o.col(k) = std::sqrt(Scalar(2)) * e.imag();
    o.col(n + k) = std::sqrt(Scalar(2)) * e.real();
  }
  RealMatrix<Scalar> d_inv_root = RealMatrix<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    d_inv_root(k, k) = d_inv_root(n + k, n + k) = Scalar(1) / std::sqrt(nu(k));
  }
  const RealMatrix<Scalar> s_real = root * o * d_inv_root;

  SymplecticDecompositionT<Scalar> dec;
  dec.s = complex_symplectic(s_real);
  dec.lambdas.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar lambda = Scalar(2) * nu(k) - Scalar(0.5);
    if (lambda < -kStateTolerance<Scalar> * std::max(Scalar(1), nu(k))) {
      throw InvalidStateError("state violates the uncertainty principle");
    }
    dec.lambdas[static_cast<std::size_t>(k)] = std::max(lambda, Scalar(0));
  }
  return dec;
}

template <std::floating_point Scalar>
ComplexMatrix<Scalar> lambda_matrix(std::span<const Scalar> lambdas) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  ComplexMatrix<Scalar> m = ComplexMatrix<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = lambdas[static_cast<std::size_t>(i)] + Scalar(1);
    m(n + i, n + i) = lambdas[static_cast<std::size_t>(i)];
  }
  return m;
}

template <std::floating_point Scalar>
ComplexMatrix<Scalar> reconstruct(const SymplecticDecompositionT<Scalar>& dec) {
  return dec.s * lambda_matrix<Scalar>(dec.lambdas) * dec.s.adjoint();
}

/// max(||S^dag Q S - Q||_F, ||S Q S^dag - Q||_F)
template <std::floating_point Scalar>
Scalar symplectic_residual(const ComplexMatrix<Scalar>& s) {
  const ComplexMatrix<Scalar> q = q_metric<Scalar>(s.rows() / 2);
  return std::max((s.adjoint() * q * s - q).norm(), (s * q * s.adjoint() - q).norm());
}

template <std::floating_point Scalar>
Scalar reconstruction_residual(const GaussianStateT<Scalar>& st,
                               const SymplecticDecompositionT<Scalar>& dec) {
  return (st.corr - reconstruct(dec)).norm();
}

// ---------------------------------------------------------------------------
// Dynamics and entropy

/// v -> S v: R -> S R S^dagger and <a> -> alpha <a> + beta conj(<a>).
template <std::floating_point Scalar>
GaussianStateT<Scalar> apply_symplectic(const ComplexMatrix<Scalar>& s,
                                        const GaussianStateT<Scalar>& st) {
  const Eigen::Index n = st.n_modes();
  if (s.rows() != 2 * n || s.cols() != 2 * n) {
    throw DomainError("apply_symplectic: dimension mismatch");
  }
  GaussianStateT<Scalar> out;
  out.corr = s * st.corr * s.adjoint();
  out.mean = s.topLeftCorner(n, n) * st.mean + s.topRightCorner(n, n) * st.mean.conjugate();
  return out;
}

/// Product of single-mode squeezers a_i -> cosh(r_i) a_i - e^{i phi_i} sinh(r_i) a_i^dagger.
template <std::floating_point Scalar>
ComplexMatrix<Scalar> squeezer(std::span<const Scalar> r, std::span<const Scalar> phase) {
  if (r.size() != phase.size()) throw DomainError("squeezer: parameter size mismatch");
  const auto n = static_cast<Eigen::Index>(r.size());
  ComplexMatrix<Scalar> s = ComplexMatrix<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar ri = r[static_cast<std::size_t>(i)];
    const std::complex<Scalar> b =
        -std::polar(Scalar(1), phase[static_cast<std::size_t>(i)]) * std::sinh(ri);
    s(i, i) = s(n + i, n + i) = std::cosh(ri);
    s(i, n + i) = b;
    s(n + i, i) = std::conj(b);
  }
  return s;
}

template <std::floating_point Scalar>
EntropyValue von_neumann_entropy(const GaussianStateT<Scalar>& st,
                                 EntropyBase base = EntropyBase::bits) {
  double total = 0.0;
  for (Scalar lambda : symplectic_eigenvalues(st)) {
    if (lambda < kPureModeThreshold<Scalar>) continue;
    total += static_cast<double>(g<Scalar>(lambda, base));
  }
  return {total, base};
}

template <std::floating_point Scalar>
struct BeamSplitterOutputT {
  GaussianStateT<Scalar> joint;  // modes (c_1..c_n, d_1..d_n)
  GaussianStateT<Scalar> out_c;  // c = sqrt(eta) a + sqrt(1-eta) b
  GaussianStateT<Scalar> out_d;  // d = sqrt(1-eta) a - sqrt(eta) b
};
using BeamSplitterOutput = BeamSplitterOutputT<double>;

/// Mode-wise lossless beam splitter on independent inputs of equal size.
template <std::floating_point Scalar>
BeamSplitterOutputT<Scalar> beam_splitter(const GaussianStateT<Scalar>& a,
                                          const GaussianStateT<Scalar>& b, Scalar eta) {
  if (a.n_modes() != b.n_modes()) {
    throw DomainError("beam_splitter: inputs must have the same mode count");
  }
  if (!(eta >= Scalar(0) && eta <= Scalar(1))) {
    throw DomainError("beam_splitter: eta must lie in [0, 1]");
  }
  const Eigen::Index n = a.n_modes();
  const Scalar t = std::sqrt(eta);
  const Scalar r = std::sqrt(Scalar(1) - eta);
  ComplexMatrix<Scalar> mix(2 * n, 2 * n);
  const ComplexMatrix<Scalar> id = ComplexMatrix<Scalar>::Identity(n, n);
  mix << t * id, r * id, r * id, -t * id;
  ComplexMatrix<Scalar> s = ComplexMatrix<Scalar>::Zero(4 * n, 4 * n);
  s.topLeftCorner(2 * n, 2 * n) = mix;
  s.bottomRightCorner(2 * n, 2 * n) = mix;  // real, so conj(mix) = mix

  BeamSplitterOutputT<Scalar> out;
  out.joint = apply_symplectic(s, tensor(a, b));
  std::vector<Eigen::Index> c_modes(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> d_modes(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    c_modes[static_cast<std::size_t>(i)] = i;
    d_modes[static_cast<std::size_t>(i)] = n + i;
  }
  out.out_c = reduce(out.joint, std::span<const Eigen::Index>(c_modes));
  out.out_d = reduce(out.joint, std::span<const Eigen::Index>(d_modes));
  return out;
}

/// Wehrl entropy of an n-mode thermal product, n (1 + ln(K + 1)) nats.
template <std::floating_point Scalar = double>
EntropyValue wehrl_entropy_gaussian_thermal(Eigen::Index n, Scalar k) {
  if (n < 1) throw DomainError("wehrl: need at least one mode");
  detail::require_photon_number(k, "wehrl");
  return {static_cast<double>(n) * (1.0 + std::log1p(static_cast<double>(k))),
          EntropyBase::nats};
}

// ---------------------------------------------------------------------------
// Random generators (tests and searches)

/// Haar-random unitary from the QR of a complex Ginibre matrix.
template <std::floating_point Scalar, typename Rng>
ComplexMatrix<Scalar> random_unitary(Eigen::Index n, Rng& rng) {
  std::normal_distribution<Scalar> normal;
  ComplexMatrix<Scalar> z(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<ComplexMatrix<Scalar>> qr(z);
  ComplexMatrix<Scalar> q = qr.householderQ();
  const ComplexMatrix<Scalar> rr = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<Scalar> d = rr(j, j);
    if (std::abs(d) > Scalar(0)) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Passive unitary on a as an orthogonal symplectic map on (q, p).
template <std::floating_point Scalar>
RealMatrix<Scalar> passive_real(const ComplexMatrix<Scalar>& u) {
  const Eigen::Index n = u.rows();
  RealMatrix<Scalar> o(2 * n, 2 * n);
  o << u.real(), -u.imag(), u.imag(), u.real();
  return o;
}

/// Random real symplectic matrix O1 diag(e^{-r}, e^{r}) O2 with |r_i| <= max_squeeze.
template <std::floating_point Scalar, typename Rng>
RealMatrix<Scalar> random_symplectic_real(Eigen::Index n, Rng& rng, Scalar max_squeeze) {
  std::uniform_real_distribution<Scalar> squeeze(-max_squeeze, max_squeeze);
  RealMatrix<Scalar> z = RealMatrix<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar r = squeeze(rng);
    z(i, i) = std::exp(-r);
    z(n + i, n + i) = std::exp(r);
  }
  return passive_real<Scalar>(random_unitary<Scalar>(n, rng)) * z *
         passive_real<Scalar>(random_unitary<Scalar>(n, rng));
}

template <std::floating_point Scalar, typename Rng>
ComplexMatrix<Scalar> random_symplectic(Eigen::Index n, Rng& rng, Scalar max_squeeze) {
  return complex_symplectic<Scalar>(random_symplectic_real<Scalar>(n, rng, max_squeeze));
}

/// S diag(lambda + 1, lambda) S^dagger for random S and random lambda in [0, max_lambda].
template <std::floating_point Scalar, typename Rng>
GaussianStateT<Scalar> random_gaussian_state(Eigen::Index n, Rng& rng, Scalar max_lambda,
                                             Scalar max_squeeze) {
  std::uniform_real_distribution<Scalar> lam(Scalar(0), max_lambda);
  std::vector<Scalar> lambdas(static_cast<std::size_t>(n));
  for (auto& l : lambdas) l = lam(rng);
  const GaussianStateT<Scalar> thermal = make_thermal<Scalar>(std::span<const Scalar>(lambdas));
  return apply_symplectic(random_symplectic<Scalar>(n, rng, max_squeeze), thermal);
}

}  // namespace bosoncast
