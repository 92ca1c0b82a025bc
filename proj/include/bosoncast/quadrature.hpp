#pragma once

#include <vector>

namespace bosoncast {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre on [-1, 1] by Golub-Welsch.
QuadratureRule gauss_legendre(int n);

/// Gauss-Hermite for the weight exp(-x^2) on the real line; weights sum to sqrt(pi).
QuadratureRule gauss_hermite(int n);

/// Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace bosoncast
