#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "bosoncast/coherent_quadrature.hpp"
#include "bosoncast/fock.hpp"
#include "bosoncast/fock_channels.hpp"
#include "bosoncast/gaussian.hpp"
#include "bosoncast/quadrature.hpp"
#include "bosoncast/wehrl.hpp"
#include "oracles.hpp"

using namespace bosoncast;

namespace {

double s_bits(const FockDensityMatrix& rho) { return von_neumann_entropy_fock(rho).bits(); }

FockDensityMatrix number_state(int n, int dim) {
  FockVector psi = FockVector::Zero(dim);
  psi(n) = 1.0;
  return make_fock_pure(psi);
}

// Weight a thermal state puts on n >= dim.
double thermal_tail(double k, int dim) { return std::pow(k / (k + 1), dim); }

}  // namespace

TEST_CASE("constructors") {
  const FockDensityMatrix vac = make_fock_thermal(0.0, 10);
  CHECK(std::abs(vac.matrix()(0, 0) - 1.0) < 1e-15);
  CHECK(s_bits(vac) == 0.0);

  const FockDensityMatrix t1 = make_fock_thermal(1.0, 60);
  CHECK(std::abs(s_bits(t1) - 2.0) < 1e-9);
  CHECK(std::abs(t1.tail_mass() - thermal_tail(1.0, 60)) < 1e-25);
  CHECK(std::abs(s_bits(make_fock_thermal(2.0, 80)) - oracle::g_bits(2.0)) < 1e-8);

  const FockDensityMatrix coh = make_fock_coherent({2.0, 0.0}, 60);
  CHECK(std::abs(purity(coh) - 1.0) < 1e-9);
  CHECK(std::abs(mean_photon_number(coh) - 4.0) < 1e-9);
  CHECK(std::abs(s_bits(coh)) < 1e-10);

  const std::vector<double> flat(8, 1.0);
  CHECK(std::abs(s_bits(make_fock_diagonal(std::span<const double>(flat), 8)) - 3.0) < 1e-12);

  const FockDensityMatrix sq = make_fock_squeezed_vacuum(0.5, 0.0, 60);
  CHECK(std::abs(mean_photon_number(sq) - std::pow(std::sinh(0.5), 2)) < 1e-9);
  CHECK(std::abs(s_bits(sq)) < 1e-9);
}

TEST_CASE("truncation errors") {
  CHECK_THROWS_AS(make_fock_thermal(5.0, 20), TruncationError);
  CHECK_NOTHROW(make_fock_thermal(5.0, 20, 0.1));
  CHECK_THROWS_AS(make_fock_coherent({4.0, 0.0}, 10), TruncationError);
  const std::vector<double> wide{0.5, 0.0, 0.0, 0.5};
  CHECK_THROWS_AS(make_fock_diagonal(std::span<const double>(wide), 3), TruncationError);
  CHECK_THROWS_AS(make_fock_thermal(1.0, 1), DomainError);
  CHECK_THROWS_AS(make_fock_thermal(-1.0, 10), DomainError);
  CHECK(default_thermal_dim(1.0) == 27);
  CHECK(thermal_tail(1.0, default_thermal_dim(1.0)) < kDefaultTailBudget);
}

TEST_CASE("invalid density matrices") {
  FockMatrix m = FockMatrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(FockDensityMatrix(m, 3, 1, 0.0), InvalidStateError);  // not Hermitian
  m(1, 0) = 0.1;
  m(2, 2) = 0.1;
  CHECK_THROWS_AS(FockDensityMatrix(m, 3, 1, 0.0), InvalidStateError);  // trace 1.1
  FockMatrix neg = FockMatrix::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  const FockDensityMatrix bad(neg, 2, 1, 0.0);
  CHECK_THROWS_AS(von_neumann_entropy_fock(bad), InvalidStateError);
  CHECK_THROWS_AS(validate_spectrum(bad), InvalidStateError);
}

TEST_CASE("truncated thermal entropy against a mean-matched Gibbs oracle") {
  const std::vector<double> p = oracle::mean_matched_gibbs(12.0, 200);
  double s = 0.0;
  for (double x : p) if (x > 0) s -= x * std::log2(x);
  CHECK(std::abs(s - oracle::g_bits(12.0)) < 1e-6);
  const FockDensityMatrix rho = make_fock_diagonal(std::span<const double>(p), 200);
  CHECK(std::abs(s_bits(rho) - s) < 1e-10);
}

TEST_CASE("beam-splitter unitary against the binomial expansion") {
  for (double eta : {0.8, 0.3}) {
    const int dim = 8;
    const BeamSplitterUnitary u(eta, dim);
    for (int n = 0; n < dim; ++n) {
      for (int m = 0; n + m < dim; ++m) {
        FockVector in = FockVector::Zero(dim * dim);
        in(n * dim + m) = 1.0;
        CHECK((u.apply(in) - oracle::beam_splitter_column(n, m, eta, dim)).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("beam-splitter unitary properties") {
  const int dim = 10;
  const BeamSplitterUnitary id(1.0, dim);
  CHECK((id.dense() - FockMatrix::Identity(dim * dim, dim * dim)).norm() < 1e-14);

  const BeamSplitterUnitary u(0.7, dim);
  FockVector one = FockVector::Zero(dim * dim);
  one(1 * dim + 0) = 1.0;
  const FockVector out = u.apply(one);
  CHECK(std::abs(std::norm(out(1 * dim + 0)) - 0.7) < 1e-12);
  CHECK(std::abs(std::norm(out(0 * dim + 1)) - 0.3) < 1e-12);

  const FockMatrix dense = u.dense();
  CHECK((dense.adjoint() * dense - FockMatrix::Identity(dim * dim, dim * dim)).norm() < 1e-10);
  Eigen::VectorXd total(dim * dim);
  for (int i = 0; i < dim; ++i) for (int j = 0; j < dim; ++j) total(i * dim + j) = i + j;
  const FockMatrix number = total.cast<std::complex<double>>().asDiagonal();
  CHECK((number * dense - dense * number).norm() < 1e-12);
  CHECK(u.block_count() == 2 * dim - 1);
  CHECK(u.first_index(dim + 2) == 3);

  CHECK_THROWS_AS(BeamSplitterUnitary(1.1, 5), DomainError);
  CHECK_THROWS_AS(BeamSplitterUnitary(0.5, 1), DomainError);
}

TEST_CASE("propagate: reference inputs") {
  const ChannelOutputs th = propagate(make_fock_thermal(0.0, 60), make_fock_thermal(1.0, 60), 0.8);
  CHECK(std::abs(s_bits(th.rho_c) - oracle::g_bits(0.2)) < 1e-6);
  CHECK(std::abs(s_bits(th.rho_d) - oracle::g_bits(0.8)) < 1e-6);
  CHECK(std::abs(th.rho_c.matrix().trace().real() - 1.0) < 1e-10);
  CHECK(std::abs(th.rho_d.matrix().trace().real() - 1.0) < 1e-10);

  const std::complex<double> alpha{1.0, 0.5};
  const ChannelOutputs coh = propagate(make_fock_coherent(alpha, 40), make_fock_thermal(0.0, 40), 0.8);
  CHECK(std::abs(s_bits(coh.rho_c)) < 1e-8);
  CHECK(trace_distance(coh.rho_c, make_fock_coherent(std::sqrt(0.8) * alpha, 40)) < 1e-8);
  CHECK(trace_distance(coh.rho_d, make_fock_coherent(std::sqrt(0.2) * alpha, 40)) < 1e-8);

  // d = sqrt(1-eta) a - sqrt(eta) b: a coherent b input appears with a minus sign.
  const ChannelOutputs rev = propagate(make_fock_thermal(0.0, 40), make_fock_coherent(alpha, 40), 0.8);
  CHECK(trace_distance(rev.rho_d, make_fock_coherent(-std::sqrt(0.8) * alpha, 40)) < 1e-8);
  CHECK(trace_distance(rev.rho_c, make_fock_coherent(std::sqrt(0.2) * alpha, 40)) < 1e-8);

  const double k = 1.5;
  const int dim = 70;
  const ChannelOutputs tt = propagate(make_fock_thermal(k, dim), make_fock_thermal(k, dim), 0.5);
  CHECK(trace_distance(tt.rho_c, make_fock_thermal(k, dim)) < 1e-8);
  CHECK(trace_distance(tt.rho_d, make_fock_thermal(k, dim)) < 1e-8);

  CHECK_THROWS_AS(propagate(make_fock_thermal(0.0, 10), make_fock_thermal(0.0, 12), 0.5), DomainError);
}

TEST_CASE("propagate: photon bookkeeping and leakage") {
  const ChannelOutputs out = propagate(make_fock_coherent({1.0, 0.0}, 30), number_state(2, 30), 0.6);
  CHECK(std::abs(mean_photon_number(out.rho_c) + mean_photon_number(out.rho_d) - 3.0) < 1e-9);
  CHECK(out.leaked < 1e-12);
  // Total photon number reaches dim: the cut block leaks.
  CHECK_THROWS_AS(propagate(number_state(5, 8), number_state(5, 8), 0.5), TruncationError);
}

TEST_CASE("joint output entropy equals input entropy") {
  const int dim = 12;
  const FockDensityMatrix a = make_fock_thermal(0.4, dim, 1e-4);
  const FockDensityMatrix b = make_fock_thermal(0.7, dim, 1e-3);
  const FockDensityMatrix joint = propagate_joint(a, b, 0.35);
  CHECK(std::abs(s_bits(joint) - s_bits(a) - s_bits(b)) < 1e-9);
  // Exact on states with total photon number below dim.
  const FockDensityMatrix c = make_fock_squeezed_vacuum(0.0, 0.0, dim);
  FockVector psi = FockVector::Zero(dim);
  psi(0) = 0.6;
  psi(3) = std::complex<double>(0.0, 0.8);
  const FockDensityMatrix p = make_fock_pure(psi);
  CHECK(std::abs(s_bits(propagate_joint(p, number_state(4, dim), 0.35))) < 1e-9);
  CHECK(std::abs(s_bits(propagate_joint(c, p, 0.5))) < 1e-9);
}

TEST_CASE("Gaussian and Fock engines agree") {
  struct Case {
    double k_a, k_b, r_a, eta;
  };
  for (const Case& cs : {Case{0.0, 1.0, 0.0, 0.8}, Case{0.5, 2.0, 0.0, 0.3}, Case{0.0, 1.0, 0.4, 0.7},
                         Case{0.0, 0.5, 0.6, 0.5}}) {
    const int dim = 60;
    const FockDensityMatrix fa = cs.r_a > 0 ? make_fock_squeezed_vacuum(cs.r_a, 0.0, dim)
                                            : make_fock_thermal(cs.k_a, dim);
    const ChannelOutputs f = propagate(fa, make_fock_thermal(cs.k_b, dim), cs.eta);
    const GaussianState ga = cs.r_a > 0 ? make_squeezed_vacuum<double>(cs.r_a, 0.0)
                                        : make_thermal<double>(1, cs.k_a);
    const BeamSplitterOutput g = beam_splitter(ga, make_thermal<double>(1, cs.k_b), cs.eta);
    CHECK(std::abs(s_bits(f.rho_c) - von_neumann_entropy(g.out_c).bits()) < 1e-6);
    CHECK(std::abs(s_bits(f.rho_d) - von_neumann_entropy(g.out_d).bits()) < 1e-6);
    CHECK(std::abs(mean_photon_number(f.rho_c) - mean_photon_numbers(g.out_c)[0]) < 1e-6);
  }
}

TEST_CASE("truncation convergence for thermal inputs") {
  auto output_entropy = [](double k, int d) {
    return s_bits(propagate(make_fock_thermal(0.0, d), make_fock_thermal(k, d), 0.6).rho_c);
  };
  for (double k : {0.5, 1.0, 3.0}) {
    // A tail T costs about T log(1/T) of entropy, so right at T ~ 1e-8 the
    // gap is a few 1e-7; it drops below 1e-7 one decade later.
    const int d = default_thermal_dim(k);
    const double tail = thermal_tail(k, d);
    CHECK(std::abs(output_entropy(k, d) - output_entropy(k, 2 * d)) < 3 * tail * std::log2(1 / tail));
    const int d9 = default_thermal_dim(k, 1e-9);
    CHECK(std::abs(output_entropy(k, d9) - output_entropy(k, 2 * d9)) < 1e-7);
  }
}

TEST_CASE("Holevo information") {
  const FockDensityMatrix t = make_fock_thermal(0.5, 30);
  CHECK(std::abs(holevo_chi({{1.0, t}}).bits()) < 1e-12);
  CHECK(std::abs(holevo_chi({{0.3, t}, {0.7, t}}).bits()) < 1e-12);
  CHECK(std::abs(holevo_chi({{0.5, number_state(0, 4)}, {0.5, number_state(1, 4)}}).bits() - 1.0) < 1e-12);
  CHECK(holevo_chi({{0.5, make_fock_coherent(0.3, 20)}, {0.5, make_fock_coherent(-0.3, 20)}}).bits() > 0.0);

  const FockEnsemble cloud = coherent_gaussian_ensemble(1.0, 40, 24);
  double total = 0.0;
  for (const auto& [p, rho] : cloud) total += p;
  CHECK(std::abs(total - 1.0) < 1e-12);
  CHECK(std::abs(holevo_chi(cloud).bits() - oracle::g_bits(1.0)) < 1e-3);

  CHECK_THROWS_AS(holevo_chi({}), DomainError);
  CHECK_THROWS_AS(holevo_chi({{0.5, t}, {0.4, t}}), DomainError);
  CHECK_THROWS_AS(holevo_chi({{0.5, t}, {0.5, make_fock_thermal(0.5, 31)}}), DomainError);
}

TEST_CASE("Wehrl entropy numerics") {
  CHECK(std::abs(wehrl_entropy_numeric(make_fock_thermal(0.0, 30)).entropy.nats() - 1.0) < 1e-3);
  CHECK(std::abs(wehrl_entropy_numeric(make_fock_thermal(1.0, 60)).entropy.nats() - (1 + std::log(2.0))) <
        1e-3);
  const ChannelOutputs out = propagate(make_fock_thermal(0.0, 60), make_fock_thermal(1.0, 60), 0.5);
  const WehrlResult w = wehrl_entropy_numeric(out.rho_c);
  CHECK(std::abs(w.entropy.nats() - (1 + std::log(1.5))) < 1e-3);
  CHECK(std::abs(w.normalization - 1.0) < 1e-4);
  CHECK(w.radius >= 6.0 * std::sqrt(1.5) - 1e-12);

  // Coherent states are Wehrl minimizers regardless of amplitude.
  CHECK(std::abs(wehrl_entropy_numeric(make_fock_coherent({1.0, 1.0}, 40)).entropy.nats() - 1.0) < 1e-3);
  // Number states exceed the coherent value.
  CHECK(wehrl_entropy_numeric(number_state(1, 10)).entropy.nats() > 1.0 + 1e-3);

  WehrlGridConfig tight;
  tight.radius_scale = 0.5;
  CHECK_THROWS_AS(wehrl_entropy_numeric(make_fock_thermal(1.0, 60), tight), QuadratureError);
  WehrlGridConfig empty;
  empty.radial_nodes = 1;
  CHECK_THROWS_AS(wehrl_entropy_numeric(make_fock_thermal(1.0, 60), empty), DomainError);
}

TEST_CASE("Gauss rules integrate polynomials exactly") {
  const QuadratureRule gl = gauss_legendre(10);
  for (int p = 0; p < 20; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(std::abs(s - exact) < 1e-13);
  }
  const QuadratureRule ab = gauss_legendre(5, 1.0, 3.0);
  double s3 = 0.0;
  for (std::size_t i = 0; i < ab.nodes.size(); ++i) s3 += ab.weights[i] * std::pow(ab.nodes[i], 3);
  CHECK(std::abs(s3 - 20.0) < 1e-12);

  const QuadratureRule gh = gauss_hermite(12);
  // \int x^{2m} e^{-x^2} dx = Gamma(m + 1/2)
  for (int m = 0; m < 12; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) s += gh.weights[i] * std::pow(gh.nodes[i], 2 * m);
    CHECK(std::abs(s - std::tgamma(m + 0.5)) < 1e-11 * std::tgamma(m + 0.5));
  }
  CHECK_THROWS_AS(gauss_hermite(0), DomainError);
}

TEST_CASE("coherent-region quadrature on a small grid") {
  QuadratureGridConfig grid;
  grid.dim = 30;
  grid.t_nodes = 12;
  grid.alpha_nodes = 16;
  grid.refine = 4;
  grid.tolerance = 1e-3;
  const ChannelParams params{0.8, 1.0};
  for (double beta : {0.0, 0.5, 1.0}) {
    const CoherentRegionResult r = coherent_region_quadrature(params, beta, grid);
    CHECK(std::abs(r.r_b_numeric - r.r_b_closed) < 1e-3);
    CHECK(std::abs(r.r_c_numeric - r.r_c_closed) < 1e-3);
    CHECK(r.r_c_numeric <= oracle::g_bits(0.2) + 1e-9);
    CHECK(std::abs(r.r_b_closed - oracle::g_bits(0.8 * beta)) < 1e-12);
  }
  CHECK_THROWS_AS(coherent_region_quadrature({0.5, 1.0}, 0.5, grid), UnsupportedRegimeError);
  QuadratureGridConfig coarse = grid;
  coarse.alpha_nodes = 1;
  coarse.t_nodes = 2;
  coarse.refine = 6;
  coarse.tolerance = 1e-9;
  CHECK_THROWS_AS(coherent_region_quadrature(params, 0.5, coarse), QuadratureError);
}
