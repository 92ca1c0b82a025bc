#pragma once

// Rate-region boundaries for the single-mode pure-loss bosonic broadcast
// channel (Bob at the eta port, Charlie at the 1 - eta port), plus the
// coherent-state multiple-access envelope on the same beam splitter.

#include <cmath>
#include <concepts>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bosoncast/entropy.hpp"
#include "bosoncast/errors.hpp"

namespace bosoncast {

template <std::floating_point Scalar>
struct ChannelParamsT {
  Scalar eta = Scalar(0.8);
  Scalar nbar = Scalar(1);
};
using ChannelParams = ChannelParamsT<double>;

template <std::floating_point Scalar>
struct Rates {
  Scalar r_b = 0;
  Scalar r_c = 0;
};

enum class Scheme { optimum, homodyne, heterodyne, mac_envelope };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

struct RatePair {
  double r_b = 0.0;
  double r_c = 0.0;
  double beta = 0.0;
};

struct RegionCurve {
  std::vector<RatePair> points;
  Scheme scheme = Scheme::optimum;
  ChannelParams params;
  // Second transmitter's budget, only for mac_envelope (params.nbar is the
  // eta-port transmitter's budget there).
  std::optional<double> nbar_secondary;
};

/// Throws unless 0 < eta < 1 and nbar >= 0; degraded operations also need
/// eta > 1/2.
void validate(const ChannelParams& params, bool degraded);

namespace detail {

template <std::floating_point Scalar>
void require_beta(Scalar beta) {
  if (!(beta >= Scalar(0) && beta <= Scalar(1))) {
    throw DomainError("beta must lie in [0, 1]");
  }
}

}  // namespace detail

// Optimum reception with coherent-state superposition coding.
template <std::floating_point Scalar>
Rates<Scalar> ultimate_rates(const ChannelParamsT<Scalar>& p, Scalar beta) {
  detail::require_beta(beta);
  const Scalar loss = Scalar(1) - p.eta;
  Rates<Scalar> r;
  r.r_b = g_bits(p.eta * beta * p.nbar);
  r.r_c = g_bits(loss * p.nbar) - g_bits(loss * beta * p.nbar);
  if (r.r_c < Scalar(0)) r.r_c = Scalar(0);  // rounding at beta = 1
  return r;
}

// Real-quadrature homodyne reception: scalar Gaussian broadcast channel with
// noise variance 1/4.
template <std::floating_point Scalar>
Rates<Scalar> homodyne_rates(const ChannelParamsT<Scalar>& p, Scalar beta) {
  detail::require_beta(beta);
  const Scalar loss = Scalar(1) - p.eta;
  Rates<Scalar> r;
  r.r_b = Scalar(0.5) * std::log2(Scalar(1) + Scalar(4) * p.eta * beta * p.nbar);
  r.r_c = Scalar(0.5) *
          std::log2(Scalar(1) + Scalar(4) * loss * (Scalar(1) - beta) * p.nbar /
                                    (Scalar(1) + Scalar(4) * loss * beta * p.nbar));
  return r;
}

// Heterodyne reception: complex Gaussian broadcast channel.
template <std::floating_point Scalar>
Rates<Scalar> heterodyne_rates(const ChannelParamsT<Scalar>& p, Scalar beta) {
  detail::require_beta(beta);
  const Scalar loss = Scalar(1) - p.eta;
  Rates<Scalar> r;
  r.r_b = std::log2(Scalar(1) + p.eta * beta * p.nbar);
  r.r_c = std::log2(Scalar(1) + loss * (Scalar(1) - beta) * p.nbar /
                                    (Scalar(1) + loss * beta * p.nbar));
  return r;
}

inline constexpr int kDefaultBetaPoints = 257;

std::vector<double> uniform_grid(int points);

RegionCurve ultimate_boundary(const ChannelParams& params,
                              std::span<const double> beta_grid);
RegionCurve homodyne_boundary(const ChannelParams& params,
                              std::span<const double> beta_grid);
RegionCurve heterodyne_boundary(const ChannelParams& params,
                                std::span<const double> beta_grid);
RegionCurve broadcast_boundary(Scheme scheme, const ChannelParams& params,
                               std::span<const double> beta_grid);

/// Coherent-state MAC on the same beam splitter. For per-transmitter photon
/// allocations (u nbar_a, v nbar_b) the Holevo region is the pentagon
///   R_A <= g(eta u nbar_a), R_B <= g((1-eta) v nbar_b),
///   R_A + R_B <= g(eta u nbar_a + (1-eta) v nbar_b).
/// The envelope is the upper boundary of the union over an allocation grid
/// (u, v) in [0,1]^2, sampled at R_A = s * g(eta nbar_a) for s in `grid`. The
/// pentagon corners are added to the samples. `beta` on each point holds the
/// normalized R_A coordinate. R_A is reported as r_b and R_B as r_c so the
/// curve lines up with the broadcast receivers at the same ports.
///
/// The formulas follow the coherent-state MAC capacity literature; only the
/// qualitative comparison with the broadcast boundary is checked here.
RegionCurve mac_coherent_envelope(double eta, double nbar_a, double nbar_b,
                                  std::span<const double> grid,
                                  int allocation_points = 33);

/// Upper boundary R_C(R_B) implied by `curve` under time sharing: the larger
/// of the staircase through the samples and the chords between neighbours.
/// Returns nullopt when r_b lies beyond the curve.
std::optional<double> boundary_height(const RegionCurve& curve, double r_b);

/// True iff every inner point is Pareto-dominated by the outer region.
bool region_dominates(const RegionCurve& outer, const RegionCurve& inner,
                      double tolerance = 1e-12);

/// `# scheme=... eta=... nbar=...`, optional `# config=...`, then
/// `beta,r_b_bits,r_c_bits` rows at 12 significant digits.
void write_csv(std::ostream& out, const RegionCurve& curve,
               std::string_view config_json = {});

RegionCurve read_csv(std::istream& in);

}  // namespace bosoncast
