#include "bosoncast/capacity.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "bosoncast/io.hpp"

namespace bosoncast {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::optimum: return "optimum";
    case Scheme::homodyne: return "homodyne";
    case Scheme::heterodyne: return "heterodyne";
    case Scheme::mac_envelope: return "mac_envelope";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "optimum") return Scheme::optimum;
  if (text == "homodyne") return Scheme::homodyne;
  if (text == "heterodyne") return Scheme::heterodyne;
  if (text == "mac_envelope" || text == "mac") return Scheme::mac_envelope;
  throw DomainError("unknown scheme '" + std::string(text) + "'");
}

void validate(const ChannelParams& params, bool degraded) {
  if (!std::isfinite(params.eta) || params.eta <= 0.0 || params.eta >= 1.0) {
    throw DomainError("eta must lie in (0, 1)");
  }
  if (!std::isfinite(params.nbar) || params.nbar < 0.0) {
    throw DomainError("nbar must be finite and >= 0");
  }
  if (degraded && params.eta <= 0.5) {
    throw UnsupportedRegimeError(
        "broadcast boundary requires eta > 1/2 (degraded regime)");
  }
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = 1.0;
  return grid;
}

namespace {

template <typename RateFn>
RegionCurve sweep(Scheme scheme, const ChannelParams& params,
                  std::span<const double> beta_grid, RateFn rates) {
  validate(params, true);
  if (beta_grid.empty()) throw DomainError("beta grid is empty");
  std::vector<double> betas(beta_grid.begin(), beta_grid.end());
  std::sort(betas.begin(), betas.end());

  RegionCurve curve;
  curve.scheme = scheme;
  curve.params = params;
  curve.points.reserve(betas.size());
  for (double beta : betas) {
    const Rates<double> r = rates(params, beta);
    curve.points.push_back({r.r_b, r.r_c, beta});
  }
  return curve;
}

}  // namespace

RegionCurve ultimate_boundary(const ChannelParams& params,
                              std::span<const double> beta_grid) {
  return sweep(Scheme::optimum, params, beta_grid, ultimate_rates<double>);
}

RegionCurve homodyne_boundary(const ChannelParams& params,
                              std::span<const double> beta_grid) {
  return sweep(Scheme::homodyne, params, beta_grid, homodyne_rates<double>);
}

RegionCurve heterodyne_boundary(const ChannelParams& params,
                                std::span<const double> beta_grid) {
  return sweep(Scheme::heterodyne, params, beta_grid, heterodyne_rates<double>);
}

RegionCurve broadcast_boundary(Scheme scheme, const ChannelParams& params,
                               std::span<const double> beta_grid) {
  switch (scheme) {
    case Scheme::optimum: return ultimate_boundary(params, beta_grid);
    case Scheme::homodyne: return homodyne_boundary(params, beta_grid);
    case Scheme::heterodyne: return heterodyne_boundary(params, beta_grid);
    case Scheme::mac_envelope: break;
  }
  throw DomainError("mac_envelope is not a broadcast scheme");
}

RegionCurve mac_coherent_envelope(double eta, double nbar_a, double nbar_b,
                                  std::span<const double> grid,
                                  int allocation_points) {
  validate(ChannelParams{eta, nbar_a}, false);
  validate(ChannelParams{eta, nbar_b}, false);
  if (grid.empty()) throw DomainError("MAC grid is empty");
  for (double s : grid) detail::require_beta(s);
  if (allocation_points < 2) throw DomainError("allocation grid needs >= 2 points");

  RegionCurve curve;
  curve.scheme = Scheme::mac_envelope;
  curve.params = {eta, nbar_a};
  curve.nbar_secondary = nbar_b;

  const double loss = 1.0 - eta;
  const double max_a = g_bits(eta * nbar_a);
  if (max_a == 0.0 && nbar_b == 0.0) {
    curve.points.push_back({0.0, 0.0, 0.0});
    return curve;
  }

  struct Pentagon {
    double a_max, b_max, sum_max;
  };
  std::vector<Pentagon> pentagons;
  const std::vector<double> alloc = uniform_grid(allocation_points);
  pentagons.reserve(alloc.size() * alloc.size());
  for (double u : alloc) {
    for (double v : alloc) {
      const double pa = eta * u * nbar_a;
      const double pb = loss * v * nbar_b;
      pentagons.push_back({g_bits(pa), g_bits(pb), g_bits(pa + pb)});
    }
  }

  std::vector<double> samples(grid.begin(), grid.end());
  if (max_a > 0.0) {
    const double sum_full = g_bits(eta * nbar_a + loss * nbar_b);
    const double corner_left = sum_full - g_bits(loss * nbar_b);
    samples.push_back(std::clamp(corner_left / max_a, 0.0, 1.0));
    samples.push_back(1.0);
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  for (double s : samples) {
    const double r_a = s * max_a;
    double best = 0.0;
    for (const Pentagon& p : pentagons) {
      if (p.a_max < r_a) continue;
      best = std::max(best, std::min(p.b_max, p.sum_max - r_a));
    }
    const RatePair point{r_a, std::max(best, 0.0), s};
    if (!curve.points.empty() && curve.points.back().r_b == point.r_b &&
        curve.points.back().r_c == point.r_c) {
      continue;
    }
    curve.points.push_back(point);
  }
  return curve;
}

std::optional<double> boundary_height(const RegionCurve& curve, double r_b) {
  if (curve.points.empty()) throw ValidationError("boundary_height: empty curve");
  std::vector<RatePair> pts = curve.points;
  std::sort(pts.begin(), pts.end(), [](const RatePair& a, const RatePair& b) {
    return a.r_b < b.r_b || (a.r_b == b.r_b && a.r_c > b.r_c);
  });
  if (r_b > pts.back().r_b) return std::nullopt;

  double height = 0.0;
  bool found = false;
  for (const RatePair& p : pts) {
    if (p.r_b >= r_b) {
      height = found ? std::max(height, p.r_c) : p.r_c;
      found = true;
    }
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const RatePair& a = pts[i];
    const RatePair& b = pts[i + 1];
    if (a.r_b <= r_b && r_b <= b.r_b && b.r_b > a.r_b) {
      const double t = (r_b - a.r_b) / (b.r_b - a.r_b);
      height = std::max(height, a.r_c + t * (b.r_c - a.r_c));
    }
  }
  return height;
}

bool region_dominates(const RegionCurve& outer, const RegionCurve& inner,
                      double tolerance) {
  if (outer.points.empty() || inner.points.empty()) {
    throw ValidationError("region_dominates: curves must be non-empty");
  }
  double outer_max_b = 0.0;
  for (const RatePair& p : outer.points) outer_max_b = std::max(outer_max_b, p.r_b);

  for (const RatePair& p : inner.points) {
    if (p.r_b > outer_max_b + tolerance) return false;
    const std::optional<double> h =
        boundary_height(outer, std::min(p.r_b, outer_max_b));
    if (!h || p.r_c > *h + tolerance) return false;
  }
  return true;
}

void write_csv(std::ostream& out, const RegionCurve& curve,
               std::string_view config_json) {
  out << "# scheme=" << to_string(curve.scheme)
      << " eta=" << format_number(curve.params.eta)
      << " nbar=" << format_number(curve.params.nbar);
  if (curve.nbar_secondary) out << " nbar_b=" << format_number(*curve.nbar_secondary);
  out << '\n';
  if (!config_json.empty()) out << "# config=" << config_json << '\n';
  out << "beta,r_b_bits,r_c_bits\n";
  for (const RatePair& p : curve.points) {
    out << format_number(p.beta) << ',' << format_number(p.r_b) << ','
        << format_number(p.r_c) << '\n';
  }
}

RegionCurve read_csv(std::istream& in) {
  RegionCurve curve;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.starts_with("# scheme=")) {
      std::istringstream fields(line.substr(2));
      std::string field;
      while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "scheme") curve.scheme = parse_scheme(value);
        else if (key == "eta") curve.params.eta = parse_number(value);
        else if (key == "nbar") curve.params.nbar = parse_number(value);
        else if (key == "nbar_b") curve.nbar_secondary = parse_number(value);
      }
      continue;
    }
    if (line.starts_with('#')) continue;
    if (!header_seen) {
      if (line != "beta,r_b_bits,r_c_bits") {
        throw ValidationError("region CSV: unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string beta, rb, rc;
    if (!std::getline(row, beta, ',') || !std::getline(row, rb, ',') ||
        !std::getline(row, rc)) {
      throw ValidationError("region CSV: malformed row '" + line + "'");
    }
    curve.points.push_back({parse_number(rb), parse_number(rc), parse_number(beta)});
  }
  if (!header_seen) throw ValidationError("region CSV: missing header");
  return curve;
}

}  // namespace bosoncast
