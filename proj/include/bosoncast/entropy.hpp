#pragma once

// Entropy of the Bose-Einstein distribution, g(x) = (x+1)log(x+1) - x log x,
// its inverse, and the averaged-scaling property the broadcast converse uses.

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <string_view>

#include "bosoncast/errors.hpp"

namespace bosoncast {

enum class EntropyBase { bits, nats };

std::string_view to_string(EntropyBase base);
EntropyBase parse_entropy_base(std::string_view text);

struct EntropyValue {
  double value = 0.0;
  EntropyBase base = EntropyBase::bits;

  double bits() const {
    return base == EntropyBase::bits ? value : value / std::numbers::ln2;
  }
  double nats() const {
    return base == EntropyBase::nats ? value : value * std::numbers::ln2;
  }
  EntropyValue in(EntropyBase target) const {
    return {target == EntropyBase::bits ? bits() : nats(), target};
  }
};

namespace detail {

template <std::floating_point Scalar>
void require_photon_number(Scalar x, const char* what) {
  if (!std::isfinite(x) || x < Scalar(0)) {
    throw DomainError(std::string(what) +
                      ": mean photon number must be finite and >= 0");
  }
}

}  // namespace detail

// Below this the x log x term underflows; g is continuous with g(0) = 0.
template <std::floating_point Scalar>
inline constexpr Scalar g_zero_threshold = Scalar(1e-300);

/// g(x) in nats. Uses log1p(x) + x*log1p(1/x), which keeps full relative
/// precision for large x where the naive difference cancels.
template <std::floating_point Scalar>
Scalar g_nats(Scalar x) {
  detail::require_photon_number(x, "g");
  if (x < g_zero_threshold<Scalar>) return Scalar(0);
  return std::log1p(x) + x * std::log1p(Scalar(1) / x);
}

template <std::floating_point Scalar>
Scalar g_bits(Scalar x) {
  return g_nats(x) / std::numbers::ln2_v<Scalar>;
}

/// g'(x) = log((x+1)/x), nats per photon. Infinite at x = 0.
template <std::floating_point Scalar>
Scalar g_prime_nats(Scalar x) {
  detail::require_photon_number(x, "g'");
  if (x < g_zero_threshold<Scalar>) return std::numeric_limits<Scalar>::infinity();
  return std::log1p(Scalar(1) / x);
}

template <std::floating_point Scalar>
Scalar g(Scalar x, EntropyBase base) {
  return base == EntropyBase::bits ? g_bits(x) : g_nats(x);
}

inline EntropyValue g(double x, EntropyBase base = EntropyBase::bits) {
  return {g<double>(x, base), base};
}

/// Inverse of g for y given in bits. Bracket [0, 2^y] refined by safeguarded
/// Newton steps; the result satisfies |g(x) - y| <= 1e-12 bits.
template <std::floating_point Scalar>
Scalar g_inv_bits(Scalar y) {
  if (!std::isfinite(y) || y < Scalar(0)) {
    throw DomainError("g_inv: entropy must be finite and >= 0");
  }
  if (y == Scalar(0)) return Scalar(0);

  Scalar lo = 0;
  Scalar hi = std::exp2(y);  // g(x) > log2(x + 1), so g(2^y) > y
  if (!std::isfinite(hi)) throw NumericError("g_inv: bracket overflow");

  const Scalar ln2 = std::numbers::ln2_v<Scalar>;
  auto residual = [&](Scalar x) { return g_bits(x) - y; };

  // Large-x asymptote g(x) ~ log2(x + 1/2) + log2(e) gives a close start.
  Scalar x = std::exp2(y - Scalar(1) / ln2) - Scalar(0.5);
  if (!(x > lo && x < hi)) x = Scalar(0.5) * (lo + hi);

  for (int iter = 0; iter < 200; ++iter) {
    const Scalar f = residual(x);
    if (f > 0) hi = x; else lo = x;
    if (f == Scalar(0)) return x;

    const Scalar slope = g_prime_nats(x) / ln2;
    Scalar next = x - f / slope;
    if (!(next > lo && next < hi)) next = Scalar(0.5) * (lo + hi);

    const Scalar step = std::abs(next - x);
    x = next;
    if (step <= Scalar(4) * std::numeric_limits<Scalar>::epsilon() * x ||
        hi - lo <= Scalar(4) * std::numeric_limits<Scalar>::epsilon() * hi) {
      break;
    }
  }
  if (std::abs(residual(x)) > Scalar(1e-12)) {
    throw NumericError("g_inv: Newton iteration did not converge");
  }
  return x;
}

inline double g_inv(EntropyValue y) {
  if (!std::isfinite(y.value) || y.value < 0.0) {
    throw DomainError("g_inv: entropy must be finite and >= 0");
  }
  return g_inv_bits(y.bits());
}

struct ScalingCheckReport {
  double x0 = 0.0;   // g(x0) = mean of g(x_k)
  double lhs = 0.0;  // mean of g(eta x_k), bits
  double rhs = 0.0;  // g(eta x0), bits
  bool holds = false;
};

/// For x0 defined by g(x0) = mean g(x_k), checks mean g(eta x_k) >= g(eta x0).
ScalingCheckReport g_scaling_inequality_check(std::span<const double> xs,
                                              double eta);

}  // namespace bosoncast
