#include "bosoncast/wehrl.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bosoncast/quadrature.hpp"

namespace bosoncast {

WehrlResult wehrl_entropy_numeric(const FockDensityMatrix& rho, const WehrlGridConfig& grid) {
  if (rho.n_modes() != 1) throw DomainError("Wehrl entropy needs a single-mode state");
  if (grid.radial_nodes < 2 || grid.angular_nodes < 2 || !(grid.radius_scale > 0.0)) {
    throw DomainError("Wehrl grid needs >= 2 nodes per axis and a positive radius");
  }
  const double pi = std::numbers::pi;
  const int dim = rho.dim();
  const double radius = grid.radius_scale * std::sqrt(mean_photon_number(rho) + 1.0);
  const QuadratureRule radial = gauss_legendre(grid.radial_nodes, 0.0, radius);
  const int m = grid.angular_nodes;
  const double dphi = 2.0 * pi / m;

  // Phase factors e^{i n phi_j}, shared by every radius.
  FockMatrix phases(dim, m);
  for (int j = 0; j < m; ++j) {
    for (int n = 0; n < dim; ++n) phases(n, j) = std::polar(1.0, n * j * dphi);
  }

  double norm = 0.0;
  double entropy = 0.0;
  Eigen::VectorXd radial_amp(dim);
  for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
    const double r = radial.nodes[k];
    radial_amp(0) = std::exp(-0.5 * r * r);
    for (int n = 1; n < dim; ++n) radial_amp(n) = radial_amp(n - 1) * r / std::sqrt(double(n));
    const FockMatrix coh = radial_amp.asDiagonal() * phases;  // columns |mu_j>
    const FockMatrix rc = rho.matrix() * coh;
    const double w = radial.weights[k] * r * dphi;
    for (int j = 0; j < m; ++j) {
      const double q = std::max(0.0, coh.col(j).dot(rc.col(j)).real()) / pi;
      norm += w * q;
      if (q > 0.0) entropy -= w * q * std::log(pi * q);
    }
  }
  if (std::abs(norm - 1.0) > grid.normalization_tolerance) {
    throw QuadratureError("Husimi function integrates to " + std::to_string(norm) +
                          "; refine the Wehrl grid");
  }
  return {{entropy, EntropyBase::nats}, norm, radius};
}

}  // namespace bosoncast
