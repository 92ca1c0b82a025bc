#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "bosoncast/capacity.hpp"
#include "oracles.hpp"

using namespace bosoncast;

TEST_CASE("optimum region endpoints") {
  const ChannelParams p{0.8, 15.0};
  const Rates<double> top = ultimate_rates(p, 1.0);
  CHECK(std::abs(top.r_b - 5.086166327180324) < 1e-12);
  CHECK(top.r_c == 0.0);
  const Rates<double> bottom = ultimate_rates(p, 0.0);
  CHECK(bottom.r_b == 0.0);
  CHECK(std::abs(bottom.r_c - 3.245112497836531) < 1e-12);
  const Rates<double> mid = ultimate_rates(ChannelParams{0.8, 2.0}, 0.5);
  CHECK(std::abs(mid.r_b - 1.783936907708800) < 1e-12);
  CHECK(std::abs(mid.r_c - 0.4283418900152583) < 1e-12);
}

TEST_CASE("coherent detection closed forms") {
  CHECK(std::abs(homodyne_rates(ChannelParams{0.8, 15.0}, 1.0).r_b - 2.807354922057604) < 1e-12);
  CHECK(std::abs(homodyne_rates(ChannelParams{0.8, 1.0}, 1.0).r_b - 1.035194663945699) < 1e-12);
  CHECK(std::abs(heterodyne_rates(ChannelParams{0.8, 15.0}, 1.0).r_b - 3.700439718141092) < 1e-12);
  CHECK(std::abs(heterodyne_rates(ChannelParams{0.8, 1.0}, 1.0).r_b - 0.8479969065549501) < 1e-12);
}

TEST_CASE("coherent detection matches Gaussian broadcast-channel formulas") {
  for (double nbar : {0.0, 1.0, 5.0, 15.0}) {
    for (double eta : {0.55, 0.8, 0.95}) {
      for (double beta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const ChannelParams p{eta, nbar};
        const auto hom = oracle::homodyne(eta, nbar, beta);
        const auto het = oracle::heterodyne(eta, nbar, beta);
        const Rates<double> h = homodyne_rates(p, beta);
        const Rates<double> t = heterodyne_rates(p, beta);
        CHECK(std::abs(h.r_b - hom.first) < 1e-12);
        CHECK(std::abs(h.r_c - hom.second) < 1e-12);
        CHECK(std::abs(t.r_b - het.first) < 1e-12);
        CHECK(std::abs(t.r_c - het.second) < 1e-12);
      }
    }
  }
}

TEST_CASE("templated rates in long double agree with double") {
  const ChannelParamsT<long double> pl{0.8L, 5.0L};
  const Rates<long double> rl = ultimate_rates(pl, 0.3L);
  const Rates<double> rd = ultimate_rates(ChannelParams{0.8, 5.0}, 0.3);
  CHECK(std::abs(static_cast<double>(rl.r_b) - rd.r_b) < 1e-13);
  CHECK(std::abs(static_cast<double>(rl.r_c) - rd.r_c) < 1e-13);
}

TEST_CASE("parameter validation") {
  const std::vector<double> grid = uniform_grid(5);
  CHECK_THROWS_AS(ultimate_boundary({0.4, 1.0}, grid), UnsupportedRegimeError);
  CHECK_THROWS_AS(ultimate_boundary({0.5, 1.0}, grid), UnsupportedRegimeError);
  CHECK_THROWS_AS(ultimate_boundary({1.0, 1.0}, grid), DomainError);
  CHECK_THROWS_AS(homodyne_boundary({0.8, -1.0}, grid), DomainError);
  CHECK_THROWS_AS(ultimate_rates(ChannelParams{0.8, 1.0}, 1.5), DomainError);
  CHECK_THROWS_AS(uniform_grid(1), DomainError);
  CHECK_THROWS_AS(parse_scheme("optical"), DomainError);
  CHECK_THROWS_AS(mac_coherent_envelope(0.8, -1.0, 1.0, grid), DomainError);
  // The MAC side has no degradedness requirement.
  CHECK_NOTHROW(mac_coherent_envelope(0.3, 1.0, 1.0, grid));
}

TEST_CASE("zero budget gives zero rates") {
  const RegionCurve c = homodyne_boundary({0.8, 0.0}, uniform_grid(kDefaultBetaPoints));
  REQUIRE(c.points.size() == 257);
  for (const RatePair& p : c.points) {
    CHECK(p.r_b == 0.0);
    CHECK(p.r_c == 0.0);
  }
}

TEST_CASE("figure-3 orderings") {
  const std::vector<double> grid = uniform_grid(kDefaultBetaPoints);
  CHECK(homodyne_rates(ChannelParams{0.8, 1.0}, 1.0).r_b >
        heterodyne_rates(ChannelParams{0.8, 1.0}, 1.0).r_b);
  CHECK(heterodyne_rates(ChannelParams{0.8, 15.0}, 1.0).r_b >
        homodyne_rates(ChannelParams{0.8, 15.0}, 1.0).r_b);
  for (double nbar : {1.0, 5.0, 15.0}) {
    const RegionCurve opt = ultimate_boundary({0.8, nbar}, grid);
    const RegionCurve hom = homodyne_boundary({0.8, nbar}, grid);
    const RegionCurve het = heterodyne_boundary({0.8, nbar}, grid);
    CHECK(region_dominates(opt, hom, 0.0));
    CHECK(region_dominates(opt, het, 0.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(opt.points[i].r_b >= hom.points[i].r_b);
      CHECK(opt.points[i].r_b >= het.points[i].r_b);
      CHECK(opt.points[i].r_c >= hom.points[i].r_c);
      CHECK(opt.points[i].r_c >= het.points[i].r_c);
    }
  }
}

TEST_CASE("boundary is monotone in beta") {
  const RegionCurve c = ultimate_boundary({0.8, 5.0}, uniform_grid(65));
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    CHECK(c.points[i].r_b > c.points[i - 1].r_b);
    CHECK(c.points[i].r_c < c.points[i - 1].r_c);
  }
}

// Upper boundary of the full-budget pentagon.
static double pentagon(double eta, double na, double nb, double r_a) {
  return std::min(oracle::g_bits((1 - eta) * nb),
                  oracle::g_bits(eta * na + (1 - eta) * nb) - r_a);
}

TEST_CASE("MAC envelope equals the full-budget pentagon") {
  const std::vector<double> grid = uniform_grid(kDefaultBetaPoints);
  for (auto [na, nb] : {std::pair{15.0, 15.0}, std::pair{1.0, 5.0}, std::pair{5.0, 0.5}}) {
    const RegionCurve mac = mac_coherent_envelope(0.8, na, nb, grid);
    REQUIRE(mac.nbar_secondary.has_value());
    for (const RatePair& p : mac.points) {
      CHECK(std::abs(p.r_c - pentagon(0.8, na, nb, p.r_b)) < 1e-12);
    }
    CHECK(std::abs(mac.points.back().r_b - oracle::g_bits(0.8 * na)) < 1e-12);
  }
}

TEST_CASE("MAC envelope dominates the broadcast boundary") {
  const std::vector<double> grid = uniform_grid(kDefaultBetaPoints);
  const RegionCurve bc = ultimate_boundary({0.8, 15.0}, grid);
  const RegionCurve mac = mac_coherent_envelope(0.8, 15.0, 15.0, grid);
  CHECK(region_dominates(mac, bc));
  // Analytic version at every broadcast sample point.
  for (const RatePair& p : bc.points) CHECK(p.r_c <= pentagon(0.8, 15.0, 15.0, p.r_b) + 1e-12);
  // Not the other way round.
  CHECK_FALSE(region_dominates(bc, mac));
}

TEST_CASE("boundary height uses time-sharing chords") {
  RegionCurve c;
  c.points = {{0.0, 2.0, 0.0}, {2.0, 0.0, 1.0}};
  CHECK(boundary_height(c, 1.0).value() == doctest::Approx(1.0));
  CHECK(boundary_height(c, 0.0).value() == doctest::Approx(2.0));
  CHECK_FALSE(boundary_height(c, 2.5).has_value());
}

TEST_CASE("CSV round trip") {
  const RegionCurve c = heterodyne_boundary({0.8, 5.0}, uniform_grid(9));
  std::ostringstream out;
  write_csv(out, c, "{\"k\":1}");
  const std::string text = out.str();
  CHECK(text.rfind("# scheme=heterodyne eta=0.8 nbar=5\n# config={\"k\":1}\nbeta,r_b_bits,r_c_bits\n", 0) == 0);
  std::istringstream in(text);
  const RegionCurve back = read_csv(in);
  CHECK(back.scheme == Scheme::heterodyne);
  CHECK(back.params.eta == 0.8);
  REQUIRE(back.points.size() == c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    CHECK(std::abs(back.points[i].r_b - c.points[i].r_b) <= 1e-11 * std::max(1.0, c.points[i].r_b));
    CHECK(back.points[i].beta == c.points[i].beta);
  }
  std::istringstream bad("beta,rb\n");
  CHECK_THROWS_AS(read_csv(bad), ValidationError);
}
