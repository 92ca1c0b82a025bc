#include "bosoncast/entropy.hpp"

namespace bosoncast {

std::string_view to_string(EntropyBase base) {
  return base == EntropyBase::bits ? "bits" : "nats";
}

EntropyBase parse_entropy_base(std::string_view text) {
  if (text == "bits") return EntropyBase::bits;
  if (text == "nats") return EntropyBase::nats;
  throw DomainError("unknown entropy base '" + std::string(text) +
                    "' (expected bits or nats)");
}

ScalingCheckReport g_scaling_inequality_check(std::span<const double> xs,
                                              double eta) {
  if (xs.empty()) throw DomainError("scaling check: empty list");
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
    throw DomainError("scaling check: eta must lie in [0, 1]");
  }
  double mean_g = 0.0;
  double mean_scaled = 0.0;
  for (double x : xs) {
    mean_g += g_bits(x);
    mean_scaled += g_bits(eta * x);
  }
  const double n = static_cast<double>(xs.size());
  mean_g /= n;
  mean_scaled /= n;

  ScalingCheckReport report;
  report.x0 = g_inv_bits(mean_g);
  report.lhs = mean_scaled;
  report.rhs = g_bits(eta * report.x0);
  report.holds = report.lhs >= report.rhs - 1e-12;
  return report;
}

}  // namespace bosoncast
