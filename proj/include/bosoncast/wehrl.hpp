#pragma once

#include "bosoncast/fock.hpp"

namespace bosoncast {

struct WehrlGridConfig {
  int radial_nodes = 200;   // Gauss-Legendre in |mu|
  int angular_nodes = 128;  // uniform in arg(mu)
  double radius_scale = 6.0;  // radius = radius_scale * sqrt(<n> + 1)
  double normalization_tolerance = 1e-4;
};

struct WehrlResult {
  EntropyValue entropy;  // nats
  double normalization = 0.0;
  double radius = 0.0;
};

/// -\int Q ln(pi Q) d^2 mu with Q(mu) = <mu|rho|mu> / pi on a polar grid.
/// Throws QuadratureError when \int Q misses 1 by more than the tolerance.
WehrlResult wehrl_entropy_numeric(const FockDensityMatrix& rho, const WehrlGridConfig& grid = {});

}  // namespace bosoncast
