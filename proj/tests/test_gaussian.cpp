#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "bosoncast/gaussian.hpp"
#include "bosoncast/gaussian_search.hpp"
#include "bosoncast/io.hpp"
#include "oracles.hpp"

using namespace bosoncast;

namespace {

double entropy_bits(const GaussianState& st) { return von_neumann_entropy(st).bits(); }

// Q R is similar to Q Lambda = diag(lambda + 1, -lambda) whenever R = S Lambda S^dagger
// with S symplectic, so the positive eigenvalues of Q R are lambda_i + 1.
std::vector<double> lambdas_from_qr(const GaussianState& st) {
  const Eigen::Index n = st.n_modes();
  const Eigen::MatrixXcd qr = q_metric<double>(n) * st.corr;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(qr);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const double v = es.eigenvalues()(i).real();
    if (v > 0.5) out.push_back(v - 1.0);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

double total_photons(const GaussianState& st) {
  double s = 0.0;
  for (double x : mean_photon_numbers(st)) s += x;
  return s;
}

}  // namespace

TEST_CASE("state constructors") {
  const GaussianState t = make_thermal<double>(1, 2.5);
  CHECK(t.corr(0, 0).real() == 3.5);
  CHECK(t.corr(1, 1).real() == 2.5);
  CHECK(std::abs(t.corr(0, 1)) == 0.0);
  CHECK(std::abs(symplectic_eigenvalues(t)[0] - 2.5) < 1e-12);

  const GaussianState v = make_vacuum<double>(3);
  for (double l : symplectic_eigenvalues(v)) CHECK(std::abs(l) < 1e-12);
  CHECK(entropy_bits(v) == 0.0);

  const GaussianState sq = make_squeezed_vacuum<double>(1.0, 0.0);
  CHECK(std::abs(mean_photon_numbers(sq)[0] - 1.381097845541816) < 1e-12);
  CHECK(std::abs(sq.corr(0, 1) - std::complex<double>(-std::sinh(1.0) * std::cosh(1.0), 0)) < 1e-12);
  CHECK(std::abs(symplectic_eigenvalues(sq)[0]) < 1e-9);
  CHECK(entropy_bits(sq) == 0.0);

  const std::vector<double> ks{1.0, 0.0, 4.0};
  CHECK(std::abs(entropy_bits(make_thermal<double>(std::span<const double>(ks))) -
                 (oracle::g_bits(1.0) + oracle::g_bits(4.0))) < 1e-12);
  CHECK(std::abs(entropy_bits(make_thermal<double>(4, 3.0)) - 4 * oracle::g_bits(3.0)) < 1e-12);

  CHECK_THROWS_AS(make_thermal<double>(1, -1.0), DomainError);
  CHECK_THROWS_AS(make_vacuum<double>(0), DomainError);
}

TEST_CASE("validate rejects malformed correlation matrices") {
  GaussianState st = make_thermal<double>(2, 1.0);
  CHECK_NOTHROW(validate(st));
  GaussianState bad = st;
  bad.corr(0, 2) = {0.3, 0.0};
  CHECK_THROWS_AS(validate(bad), InvalidStateError);  // not Hermitian
  bad = st;
  bad.corr(2, 2) = {0.5, 0.0};
  CHECK_THROWS_AS(validate(bad), InvalidStateError);  // blocks inconsistent
  bad = make_thermal<double>(1, 0.0);
  bad.corr(0, 1) = bad.corr(1, 0) = {0.5, 0.0};
  CHECK_THROWS_AS(validate(bad), InvalidStateError);  // violates uncertainty
  bad = st;
  bad.mean.resize(3);
  CHECK_THROWS_AS(validate(bad), InvalidStateError);
}

TEST_CASE("williamson on simple states") {
  const SymplecticDecomposition d = williamson(make_thermal<double>(1, 2.0));
  REQUIRE(d.lambdas.size() == 1);
  CHECK(std::abs(d.lambdas[0] - 2.0) < 1e-12);
  CHECK(std::abs(std::abs(d.s(0, 0)) - 1.0) < 1e-10);
  CHECK(std::abs(d.s(0, 1)) < 1e-10);

  // Two-mode squeezer applied to a known thermal product.
  const double r = 0.7;
  Eigen::MatrixXcd s0 = Eigen::MatrixXcd::Zero(4, 4);
  s0(0, 0) = s0(1, 1) = s0(2, 2) = s0(3, 3) = std::cosh(r);
  s0(0, 3) = s0(1, 2) = s0(2, 1) = s0(3, 0) = std::sinh(r);
  CHECK(symplectic_residual<double>(s0) < 1e-12);
  const std::vector<double> l0{0.4, 1.7};
  const GaussianState st = apply_symplectic<double>(s0, make_thermal<double>(std::span<const double>(l0)));
  const SymplecticDecomposition dec = williamson(st);
  CHECK(std::abs(dec.lambdas[0] - 1.7) < 1e-10);
  CHECK(std::abs(dec.lambdas[1] - 0.4) < 1e-10);
  CHECK(reconstruction_residual(st, dec) < 1e-10);
  CHECK(symplectic_residual(dec.s) < 1e-10);
}

TEST_CASE("williamson round trip on random states") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> modes(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const GaussianState st = random_gaussian_state<double>(modes(rng), rng, 5.0, 0.8);
    CHECK_NOTHROW(validate(st));
    const SymplecticDecomposition dec = williamson(st);
    CHECK(reconstruction_residual(st, dec) < 1e-10);
    CHECK(symplectic_residual(dec.s) < 1e-10);
    CHECK(std::is_sorted(dec.lambdas.rbegin(), dec.lambdas.rend()));
    const std::vector<double> oracle_l = lambdas_from_qr(st);
    REQUIRE(oracle_l.size() == dec.lambdas.size());
    for (std::size_t i = 0; i < oracle_l.size(); ++i) {
      CHECK(std::abs(oracle_l[i] - dec.lambdas[i]) < 1e-8);
    }
  }
}

TEST_CASE("entropy is invariant under symplectic maps and displacement") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 1 + trial % 3;
    const GaussianState st = random_gaussian_state<double>(n, rng, 3.0, 0.6);
    const double s0 = entropy_bits(st);
    for (int k = 0; k < 10; ++k) {
      const Eigen::MatrixXcd s = random_symplectic<double>(n, rng, 0.6);
      CHECK(std::abs(entropy_bits(apply_symplectic(s, st)) - s0) < 1e-9);
    }
    GaussianState shifted = st;
    shifted.mean.setConstant({1.5, -0.25});
    CHECK(std::abs(entropy_bits(shifted) - s0) < 1e-12);
  }
}

TEST_CASE("beam splitter examples") {
  for (double eta : {0.0, 0.3, 0.8, 1.0}) {
    const BeamSplitterOutput out =
        beam_splitter(make_vacuum<double>(1), make_thermal<double>(1, 2.0), eta);
    CHECK(std::abs(mean_photon_numbers(out.out_c)[0] - (1 - eta) * 2.0) < 1e-12);
    CHECK(std::abs(entropy_bits(out.out_c) - oracle::g_bits((1 - eta) * 2.0)) < 1e-10);
  }
  const GaussianState a = make_squeezed_vacuum<double>(0.5, 0.3);
  const BeamSplitterOutput same = beam_splitter(a, make_thermal<double>(1, 1.0), 1.0);
  CHECK((same.out_c.corr - a.corr).norm() == 0.0);

  const std::vector<std::complex<double>> alpha{{1.0, -2.0}};
  const BeamSplitterOutput coh = beam_splitter(
      make_coherent<double>(std::span<const std::complex<double>>(alpha)), make_vacuum<double>(1), 0.8);
  CHECK(std::abs(coh.out_c.mean(0) - std::sqrt(0.8) * alpha[0]) < 1e-12);
  CHECK(std::abs(coh.out_d.mean(0) - std::sqrt(0.2) * alpha[0]) < 1e-12);
  CHECK(entropy_bits(coh.out_c) == 0.0);

  CHECK_THROWS_AS(beam_splitter(make_vacuum<double>(1), make_vacuum<double>(2), 0.5), DomainError);
  CHECK_THROWS_AS(beam_splitter(make_vacuum<double>(1), make_vacuum<double>(1), 1.5), DomainError);
}

TEST_CASE("beam splitter conserves photon number") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + trial % 3;
    const GaussianState a = random_gaussian_state<double>(n, rng, 2.0, 0.5);
    const GaussianState b = random_gaussian_state<double>(n, rng, 2.0, 0.5);
    const BeamSplitterOutput out = beam_splitter(a, b, u(rng));
    CHECK(std::abs(total_photons(out.out_c) + total_photons(out.out_d) - total_photons(a) -
                   total_photons(b)) < 1e-10);
    CHECK_NOTHROW(validate(out.joint));
    // The joint output is a unitary image of the product input.
    CHECK(std::abs(entropy_bits(out.joint) - entropy_bits(a) - entropy_bits(b)) < 1e-9);
  }
}

TEST_CASE("Gaussian-restricted vacuum optimality on the signal port") {
  const GaussianState b = make_thermal<double>(1, 1.0);
  double prev = -1.0;
  for (double r : {0.0, 0.1, 0.3, 0.6, 1.0, 1.5}) {
    const double s = entropy_bits(beam_splitter(make_squeezed_vacuum<double>(r, 0.0), b, 0.8).out_c);
    if (r == 0.0) CHECK(std::abs(s - oracle::g_bits(0.2)) < 1e-10);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("Lagrange stationarity at equal lambdas") {
  for (double eta : {0.2, 0.5, 0.9}) {
    for (double k : {0.1, 1.0, 10.0}) {
      const std::vector<double> eq{k, k, k};
      CHECK(lagrange_stationarity_residual(eta, eq) < 1e-8);
      const std::vector<double> xi = lagrange_multipliers(eta, eq);
      CHECK(xi.size() == 3);
    }
  }
  const std::vector<double> uneven{0.5, 3.0};
  CHECK(lagrange_stationarity_residual(0.5, uneven) > 1e-3);
}

TEST_CASE("Gaussian search: single mode") {
  GaussianSearchConfig cfg;
  cfg.budget = 200;
  cfg.families = {GaussianFamily::squeezed_thermal};
  const GaussianSearchReport r = min_output_entropy_gaussian(0.7, 1.0, 1, cfg);
  CHECK(r.candidates_evaluated == 200);
  CHECK(std::abs(r.target_entropy_bits - oracle::g_bits(0.3)) < 1e-12);
  CHECK(r.gap >= -cfg.tolerance);
  CHECK(r.thermal_is_minimizer);
  CHECK(r.best.family == "thermal");
  CHECK(r.max_constraint_residual < 1e-9);
}

TEST_CASE("Gaussian search: two modes over every family") {
  GaussianSearchConfig cfg;
  cfg.budget = 300;
  cfg.seed = 3;
  const GaussianSearchReport r = min_output_entropy_gaussian(0.6, 2.0, 2, cfg);
  CHECK(std::abs(r.target_entropy_bits - 2 * oracle::g_bits(0.8)) < 1e-12);
  CHECK(r.gap >= -cfg.tolerance);
  CHECK(r.thermal_is_minimizer);
  REQUIRE(r.best.lambdas.size() == 2);
  CHECK(std::abs(r.best.lambdas[0] - 2.0) < 1e-6);
  CHECK(std::abs(r.best.lambdas[1] - 2.0) < 1e-6);
  CHECK(r.max_constraint_residual < 1e-9);
}

TEST_CASE("Gaussian search: edge cases") {
  GaussianSearchConfig cfg;
  cfg.budget = 50;
  const GaussianSearchReport zero = min_output_entropy_gaussian(0.5, 0.0, 2, cfg);
  CHECK(zero.candidates_evaluated == 1);
  CHECK(zero.best_entropy_bits == 0.0);
  CHECK(zero.gap == 0.0);
  CHECK(zero.thermal_is_minimizer);

  const GaussianSearchReport clear = min_output_entropy_gaussian(1.0 - 1e-12, 1.0, 1, cfg);
  CHECK(std::abs(clear.gap) < 1e-9);
  CHECK(clear.best_entropy_bits < 1e-8);

  CHECK_THROWS_AS(min_output_entropy_gaussian(0.0, 1.0, 1, cfg), DomainError);
  CHECK_THROWS_AS(min_output_entropy_gaussian(0.5, 1.0, 0, cfg), DomainError);
  CHECK_THROWS_AS(parse_gaussian_family("spiral"), DomainError);
  CHECK(parse_gaussian_family(to_string(GaussianFamily::lambda_split)) == GaussianFamily::lambda_split);
}

TEST_CASE("Gaussian search is deterministic across thread counts") {
  GaussianSearchConfig cfg;
  cfg.budget = 120;
  cfg.seed = 17;
  setenv("BOSONCAST_THREADS", "1", 1);
  const std::string one = to_json(min_output_entropy_gaussian(0.75, 1.5, 2, cfg)).dump();
  setenv("BOSONCAST_THREADS", "4", 1);
  const std::string four = to_json(min_output_entropy_gaussian(0.75, 1.5, 2, cfg)).dump();
  unsetenv("BOSONCAST_THREADS");
  const std::string dflt = to_json(min_output_entropy_gaussian(0.75, 1.5, 2, cfg)).dump();
  CHECK(one == four);
  CHECK(one == dflt);
  cfg.seed = 18;
  CHECK(to_json(min_output_entropy_gaussian(0.75, 1.5, 2, cfg)).dump() != one);
}

TEST_CASE("Wehrl closed form") {
  CHECK(wehrl_entropy_gaussian_thermal(1, 0.0).nats() == 1.0);
  CHECK(std::abs(wehrl_entropy_gaussian_thermal(1, 1.0).nats() - (1 + std::log(2.0))) < 1e-15);
  CHECK(std::abs(wehrl_entropy_gaussian_thermal(1, 0.5).nats() - (1 + std::log(1.5))) < 1e-15);
  CHECK(std::abs(wehrl_entropy_gaussian_thermal(3, 1.0).nats() - 3 * (1 + std::log(2.0))) < 1e-14);
  CHECK_THROWS_AS(wehrl_entropy_gaussian_thermal(0, 1.0), DomainError);
  CHECK_THROWS_AS(wehrl_entropy_gaussian_thermal(1, -1.0), DomainError);
}

TEST_CASE("state JSON round trip") {
  std::mt19937_64 rng(5);
  GaussianState st = random_gaussian_state<double>(3, rng, 2.0, 0.5);
  st.mean << std::complex<double>(0.1, 0.2), 0.0, std::complex<double>(-3.0, 1e-7);
  const Json doc = to_json(st);
  CHECK(doc["n_modes"] == 3);
  const GaussianState back = gaussian_state_from_json(doc);
  CHECK((back.corr - st.corr).norm() == 0.0);
  CHECK((back.mean - st.mean).norm() == 0.0);
  const GaussianState reparsed = gaussian_state_from_json(Json::parse(doc.dump()));
  CHECK((reparsed.corr - st.corr).norm() == 0.0);

  Json broken = doc;
  broken["n_modes"] = 2;
  CHECK_THROWS_AS(gaussian_state_from_json(broken), ValidationError);
  broken = doc;
  broken["corr"][0] = Json::array({-5.0, 0.0});
  CHECK_THROWS_AS(gaussian_state_from_json(broken), ValidationError);
}

TEST_CASE("long double path agrees with double") {
  const GaussianStateT<long double> t = make_thermal<long double>(2, 1.25L);
  CHECK(std::abs(von_neumann_entropy(t).bits() - 2 * oracle::g_bits(1.25)) < 1e-12);
}
