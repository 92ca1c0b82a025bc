#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bosoncast/capacity.hpp"
#include "bosoncast/coherent_quadrature.hpp"
#include "bosoncast/conjecture.hpp"
#include "bosoncast/entropy.hpp"
#include "bosoncast/fock_channels.hpp"
#include "bosoncast/gaussian.hpp"
#include "bosoncast/gaussian_search.hpp"
#include "bosoncast/io.hpp"
#include "bosoncast/wehrl.hpp"

namespace fs = std::filesystem;
using namespace bosoncast;

namespace {

enum class Kind { number, integer, text, flag, numbers, texts };

struct Key {
  std::string name;
  Kind kind;
  Json fallback;
  std::string help;
  std::string raw;  // flag text
  CLI::Option* option = nullptr;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

Json convert(const Key& key, const std::string& text) {
  switch (key.kind) {
    case Kind::number: return parse_number(text);
    case Kind::integer: {
      const double v = parse_number(text);
      if (v != std::floor(v)) throw ValidationError(key.name + " must be an integer");
      return static_cast<long long>(v);
    }
    case Kind::text: return text;
    case Kind::flag:
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ValidationError(key.name + " must be true or false");
    case Kind::numbers: {
      Json list = Json::array();
      for (const std::string& s : split_list(text)) list.push_back(parse_number(s));
      return list;
    }
    case Kind::texts: {
      Json list = Json::array();
      for (const std::string& s : split_list(text)) list.push_back(s);
      return list;
    }
  }
  return nullptr;
}

void check_type(const Key& key, const Json& value) {
  bool ok = false;
  switch (key.kind) {
    case Kind::number: ok = value.is_number(); break;
    case Kind::integer: ok = value.is_number_integer(); break;
    case Kind::text: ok = value.is_string(); break;
    case Kind::flag: ok = value.is_boolean(); break;
    case Kind::numbers:
      ok = value.is_array() && std::all_of(value.begin(), value.end(),
                                           [](const Json& v) { return v.is_number(); });
      break;
    case Kind::texts:
      ok = value.is_array() && std::all_of(value.begin(), value.end(),
                                           [](const Json& v) { return v.is_string(); });
      break;
  }
  if (!ok) throw ValidationError("config key '" + key.name + "' has the wrong type");
}

class Command {
 public:
  Command(CLI::App& parent, const std::string& name, const std::string& description)
      : app_(parent.add_subcommand(name, description)) {}

  Command& key(const std::string& name, Kind kind, Json fallback, const std::string& help) {
    keys_.push_back({name, kind, std::move(fallback), help, {}, nullptr});
    return *this;
  }

  Command& positional(const std::string& name) {
    positional_ = name;
    return *this;
  }

  // Binds options to members, so call once the Command has its final address.
  void finalize() {
    app_->add_option("--config", config_path_, "JSON config file (flags override it)");
    for (Key& k : keys_) {
      const std::string flag = k.name == positional_ ? k.name : "--" + dashed(k.name);
      k.option = k.kind == Kind::flag ? app_->add_flag(flag, k.raw, k.help)
                                      : app_->add_option(flag, k.raw, k.help);
    }
  }

  CLI::App* app() const { return app_; }

  /// defaults < config file < flags
  Json resolve() const {
    Json resolved = Json::object();
    for (const Key& k : keys_) resolved[k.name] = k.fallback;
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw ValidationError("cannot read config file " + config_path_);
      Json file;
      try {
        file = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw ValidationError("config file is not valid JSON: " + std::string(e.what()));
      }
      if (!file.is_object()) throw ValidationError("config file must hold a JSON object");
      for (const auto& [name, value] : file.items()) {
        const Key* k = find(name);
        if (!k) throw ValidationError("unknown config key '" + name + "'");
        Json v = value;
        if (k->kind == Kind::number && v.is_number()) v = v.get<double>();
        check_type(*k, v);
        resolved[name] = v;
      }
    }
    for (const Key& k : keys_) {
      if (k.option->count() > 0) resolved[k.name] = convert(k, k.raw);
    }
    return resolved;
  }

 private:
  static std::string dashed(std::string s) {
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
  }
  const Key* find(const std::string& name) const {
    for (const Key& k : keys_) {
      if (k.name == name) return &k;
    }
    return nullptr;
  }

  CLI::App* app_;
  std::string config_path_;
  std::string positional_;
  std::vector<Key> keys_;
};

double num(const Json& cfg, const char* key) { return cfg.at(key).get<double>(); }
int integer(const Json& cfg, const char* key) {
  const auto v = cfg.at(key).get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ValidationError(std::string(key) + " is out of range");
  }
  return static_cast<int>(v);
}
std::string text(const Json& cfg, const char* key) { return cfg.at(key).get<std::string>(); }
std::uint64_t seed_of(const Json& cfg) {
  const auto v = cfg.at("seed").get<long long>();
  if (v < 0) throw ValidationError("seed must be >= 0");
  return static_cast<std::uint64_t>(v);
}

void emit(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string json_text(const Json& cfg, Json body) {
  Json doc;
  doc["config"] = cfg;
  for (auto& [k, v] : body.items()) doc[k] = std::move(v);
  return doc.dump(2) + "\n";
}

std::string csv_text(const RegionCurve& curve, const Json& cfg) {
  std::ostringstream out;
  write_csv(out, curve, cfg.dump());
  return out.str();
}

// ---------------------------------------------------------------------------
// SVG

std::string svg_plot(const std::vector<std::pair<std::string, const RegionCurve*>>& curves,
                     const std::string& title) {
  double max_b = 0.0, max_c = 0.0;
  for (const auto& [name, c] : curves) {
    for (const RatePair& p : c->points) {
      max_b = std::max(max_b, p.r_b);
      max_c = std::max(max_c, p.r_c);
    }
  }
  max_b = max_b > 0.0 ? max_b : 1.0;
  max_c = max_c > 0.0 ? max_c : 1.0;
  const double w = 640, h = 480, m = 50;
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n<text x=\"" << m << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n"
      << "<line x1=\"" << m << "\" y1=\"" << h - m << "\" x2=\"" << w - m << "\" y2=\"" << h - m
      << "\" stroke=\"black\"/>\n<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m
      << "\" y2=\"" << h - m << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" font-size=\"12\">R_B (bits)</text>\n"
      << "<text x=\"5\" y=\"" << h / 2 << "\" font-size=\"12\">R_C</text>\n";
  std::size_t i = 0;
  for (const auto& [name, c] : curves) {
    out << "<polyline fill=\"none\" stroke=\"" << colours[i % 9] << "\" points=\"";
    for (const RatePair& p : c->points) {
      out << format_number(m + (w - 2 * m) * p.r_b / max_b) << ','
          << format_number(h - m - (h - 2 * m) * p.r_c / max_c) << ' ';
    }
    out << "\"/>\n<text x=\"" << w - m - 150 << "\" y=\"" << m + 15 * static_cast<double>(i)
        << "\" font-size=\"11\" fill=\"" << colours[i % 9] << "\">" << name << "</text>\n";
    ++i;
  }
  out << "</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands

int run_region(const Json& cfg) {
  const Scheme scheme = parse_scheme(text(cfg, "scheme"));
  const ChannelParams params{num(cfg, "eta"), num(cfg, "nbar")};
  const std::vector<double> grid = uniform_grid(integer(cfg, "points"));
  RegionCurve curve;
  if (scheme == Scheme::mac_envelope) {
    const double nbar_b = cfg.at("nbar_b").is_null() ? params.nbar : num(cfg, "nbar_b");
    curve = mac_coherent_envelope(params.eta, params.nbar, nbar_b, grid);
  } else {
    curve = broadcast_boundary(scheme, params, grid);
  }
  emit(text(cfg, "out"), csv_text(curve, cfg));
  return 0;
}

int run_figure(const Json& cfg) {
  const std::string which = text(cfg, "which");
  const fs::path dir = text(cfg, "out_dir");
  fs::create_directories(dir);
  const bool svg = cfg.at("svg").get<bool>();
  const std::vector<double> grid = uniform_grid(kDefaultBetaPoints);
  const double eta = 0.8;
  if (which == "fig3") {
    std::vector<RegionCurve> curves;
    for (double nbar : {1.0, 5.0, 15.0}) {
      for (Scheme s : {Scheme::optimum, Scheme::homodyne, Scheme::heterodyne}) {
        curves.push_back(broadcast_boundary(s, {eta, nbar}, grid));
        const std::string name = "fig3_" + std::string(to_string(s)) + "_nbar" +
                                 format_number(nbar) + ".csv";
        emit((dir / name).string(), csv_text(curves.back(), cfg));
        std::cout << "wrote " << (dir / name).string() << "\n";
      }
    }
    if (svg) {
      std::vector<std::pair<std::string, const RegionCurve*>> plot;
      for (const RegionCurve& c : curves) {
        plot.emplace_back(std::string(to_string(c.scheme)) + " nbar=" + format_number(c.params.nbar), &c);
      }
      emit((dir / "fig3.svg").string(), svg_plot(plot, "broadcast capacity regions, eta=0.8"));
    }
    return 0;
  }
  if (which == "fig4") {
    const double nbar = 15.0;
    const RegionCurve broadcast = ultimate_boundary({eta, nbar}, grid);
    const RegionCurve mac = mac_coherent_envelope(eta, nbar, nbar, grid);
    emit((dir / "fig4_broadcast.csv").string(), csv_text(broadcast, cfg));
    emit((dir / "fig4_mac.csv").string(), csv_text(mac, cfg));
    const std::string verdict = std::string("MAC envelope dominates broadcast boundary: ") +
                                (region_dominates(mac, broadcast) ? "true" : "false") + "\n";
    emit((dir / "fig4_verdict.txt").string(), verdict);
    if (svg) {
      emit((dir / "fig4.svg").string(),
           svg_plot({{"broadcast (optimum)", &broadcast}, {"MAC envelope", &mac}},
                    "broadcast vs MAC, eta=0.8, nbar=15"));
    }
    std::cout << verdict;
    return 0;
  }
  throw ValidationError("figure must be fig3 or fig4");
}

int run_entropy(const Json& cfg) {
  const std::string op = text(cfg, "op");
  const EntropyBase base = parse_entropy_base(text(cfg, "base"));
  Json result;
  if (op == "g") {
    const EntropyValue v = g(num(cfg, "x"), base);
    result = {{"g", rounded(v.value)}, {"base", std::string(to_string(base))}};
  } else if (op == "ginv") {
    const double x = g_inv({num(cfg, "y"), base});
    result = {{"x", rounded(x)}};
  } else if (op == "scaling") {
    const std::vector<double> xs = cfg.at("xs").get<std::vector<double>>();
    const ScalingCheckReport r = g_scaling_inequality_check(xs, num(cfg, "eta"));
    result = {{"x0", rounded(r.x0)},
              {"lhs_bits", rounded(r.lhs)},
              {"rhs_bits", rounded(r.rhs)},
              {"gap_bits", rounded(r.lhs - r.rhs)},
              {"holds", r.holds}};
  } else {
    throw ValidationError("entropy op must be g, ginv or scaling");
  }
  emit(text(cfg, "out"), json_text(cfg, {{"result", result}}));
  return 0;
}

int run_williamson(const Json& cfg) {
  const std::string path = text(cfg, "in");
  if (path.empty()) throw ValidationError("williamson needs --in <state.json>");
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("state file is not valid JSON: " + std::string(e.what()));
  }
  const GaussianState st = gaussian_state_from_json(doc);
  const SymplecticDecomposition dec = williamson(st);
  Json body;
  Json lambdas = Json::array();
  for (double l : dec.lambdas) lambdas.push_back(rounded(l));
  body["lambdas"] = lambdas;
  body["entropy_bits"] = rounded(von_neumann_entropy(st).bits());
  body["reconstruction_residual"] = rounded(reconstruction_residual(st, dec));
  body["symplectic_residual"] = rounded(symplectic_residual(dec.s));
  body["s"] = to_json(dec.s);
  emit(text(cfg, "out"), json_text(cfg, body));
  return 0;
}

int run_gauss_search(const Json& cfg) {
  GaussianSearchConfig sc;
  sc.budget = integer(cfg, "budget");
  sc.seed = seed_of(cfg);
  sc.max_squeeze = num(cfg, "max_squeeze");
  sc.families.clear();
  for (const Json& f : cfg.at("families")) sc.families.push_back(parse_gaussian_family(f.get<std::string>()));
  const GaussianSearchReport r =
      min_output_entropy_gaussian(num(cfg, "eta"), num(cfg, "k"), integer(cfg, "n"), sc);
  emit(text(cfg, "out"), json_text(cfg, {{"report", to_json(r)}}));
  return 0;
}

int run_wehrl(const Json& cfg) {
  const std::string state = text(cfg, "state");
  const int dim = integer(cfg, "dim");
  const double k = num(cfg, "k");
  WehrlGridConfig grid;
  grid.radial_nodes = integer(cfg, "radial");
  grid.angular_nodes = integer(cfg, "angular");
  std::optional<FockDensityMatrix> rho;
  double closed = 0.0;
  if (state == "vacuum") {
    rho = make_fock_thermal(0.0, dim);
    closed = 1.0;
  } else if (state == "thermal") {
    rho = make_fock_thermal(k, dim);
    closed = wehrl_entropy_gaussian_thermal<double>(1, k).nats();
  } else if (state == "coherent") {
    rho = make_fock_coherent({num(cfg, "alpha_re"), num(cfg, "alpha_im")}, dim);
    closed = 1.0;
  } else if (state == "output") {
    const double eta = num(cfg, "eta");
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
    rho = propagate(make_fock_thermal(0.0, dim), make_fock_thermal(k, dim), eta).rho_c;
    closed = wehrl_entropy_gaussian_thermal<double>(1, (1.0 - eta) * k).nats();
  } else {
    throw ValidationError("wehrl state must be vacuum, thermal, coherent or output");
  }
  const WehrlResult r = wehrl_entropy_numeric(*rho, grid);
  const Json body = {{"entropy_nats", rounded(r.entropy.nats())},
                     {"closed_form_nats", rounded(closed)},
                     {"normalization", rounded(r.normalization)},
                     {"radius", rounded(r.radius)}};
  emit(text(cfg, "out"), json_text(cfg, {{"result", body}}));
  return 0;
}

int run_conjecture(const Json& cfg) {
  const std::string mode = text(cfg, "mode");
  const double eta = num(cfg, "eta");
  const double k = num(cfg, "k");
  const int dim = integer(cfg, "dim");
  if (mode == "search") {
    Conjecture2Config c;
    c.budget = integer(cfg, "budget");
    c.seed = seed_of(cfg);
    c.families.clear();
    for (const Json& f : cfg.at("families")) c.families.push_back(parse_conjecture_family(f.get<std::string>()));
    const SearchReport r = conjecture2_search(eta, k, dim, c);
    emit(text(cfg, "out"), json_text(cfg, {{"report", to_json(r)}}));
    return 0;
  }
  if (mode == "local") {
    const std::vector<double> mags = cfg.at("magnitudes").get<std::vector<double>>();
    const LocalCheckReport r = conjecture1_local_check(eta, k, dim, mags, seed_of(cfg));
    emit(text(cfg, "out"), json_text(cfg, {{"report", to_json(r)}}));
    return 0;
  }
  throw ValidationError("conjecture mode must be search or local");
}

int run_quadrature(const Json& cfg) {
  QuadratureGridConfig grid;
  grid.dim = integer(cfg, "dim");
  grid.t_nodes = integer(cfg, "t_nodes");
  grid.alpha_nodes = integer(cfg, "alpha_nodes");
  grid.refine = integer(cfg, "refine");
  grid.tolerance = num(cfg, "tolerance");
  const CoherentRegionResult r =
      coherent_region_quadrature({num(cfg, "eta"), num(cfg, "nbar")}, num(cfg, "beta"), grid);
  emit(text(cfg, "out"), json_text(cfg, {{"result", to_json(r)}}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bosoncast: bosonic broadcast-channel capacity and entropy tools"};
  app.require_subcommand(1);

  std::vector<std::pair<Command, int (*)(const Json&)>> commands;
  commands.reserve(8);

  {
    Command c(app, "region", "capacity-region boundary as CSV");
    c.key("scheme", Kind::text, "optimum", "optimum | homodyne | heterodyne | mac")
        .key("eta", Kind::number, 0.8, "beam-splitter transmissivity")
        .key("nbar", Kind::number, 1.0, "mean photon budget")
        .key("nbar_b", Kind::number, nullptr, "second transmitter budget (mac)")
        .key("points", Kind::integer, kDefaultBetaPoints, "grid points")
        .key("out", Kind::text, "-", "output path, - for stdout");
    commands.emplace_back(std::move(c), run_region);
  }
  {
    Command c(app, "figure", "reproduce the region figures as CSV (and SVG)");
    c.key("which", Kind::text, "fig3", "fig3 | fig4")
        .key("out_dir", Kind::text, ".", "output directory")
        .key("svg", Kind::flag, false, "also write an SVG plot")
        .positional("which");
    commands.emplace_back(std::move(c), run_figure);
  }
  {
    Command c(app, "entropy", "g, its inverse and the scaling inequality");
    c.key("op", Kind::text, "g", "g | ginv | scaling")
        .key("x", Kind::number, 1.0, "mean photon number for g")
        .key("y", Kind::number, 2.0, "entropy for ginv")
        .key("base", Kind::text, "bits", "bits | nats")
        .key("xs", Kind::numbers, Json::array({0.0, 2.0}), "comma list for scaling")
        .key("eta", Kind::number, 0.4, "scaling factor for scaling")
        .key("out", Kind::text, "-", "output path, - for stdout")
        .positional("op");
    commands.emplace_back(std::move(c), run_entropy);
  }
  {
    Command c(app, "williamson", "symplectic decomposition of a Gaussian state");
    c.key("in", Kind::text, "", "Gaussian state JSON")
        .key("out", Kind::text, "-", "output path, - for stdout");
    commands.emplace_back(std::move(c), run_williamson);
  }
  {
    Command c(app, "gauss-search", "Gaussian minimum-output-entropy search");
    c.key("eta", Kind::number, 0.8, "transmissivity")
        .key("k", Kind::number, 1.0, "per-mode entropy parameter K")
        .key("n", Kind::integer, 2, "modes")
        .key("budget", Kind::integer, 600, "candidates")
        .key("seed", Kind::integer, 1, "RNG seed")
        .key("max_squeeze", Kind::number, 1.0, "squeezing bound")
        .key("families", Kind::texts,
             Json::array({"squeezed_thermal", "symplectic_conjugation", "lambda_split"}),
             "comma list of families")
        .key("out", Kind::text, "-", "output path, - for stdout");
    commands.emplace_back(std::move(c), run_gauss_search);
  }
  {
    Command c(app, "wehrl", "numerical Wehrl entropy of a Fock-space state");
    c.key("state", Kind::text, "thermal", "vacuum | thermal | coherent | output")
        .key("k", Kind::number, 1.0, "thermal mean photon number")
        .key("eta", Kind::number, 0.5, "transmissivity for output")
        .key("alpha_re", Kind::number, 0.0, "coherent amplitude, real part")
        .key("alpha_im", Kind::number, 0.0, "coherent amplitude, imaginary part")
        .key("dim", Kind::integer, 60, "Fock truncation")
        .key("radial", Kind::integer, 200, "radial nodes")
        .key("angular", Kind::integer, 128, "angular nodes")
        .key("out", Kind::text, "-", "output path, - for stdout");
    commands.emplace_back(std::move(c), run_wehrl);
  }
  {
    Command c(app, "conjecture", "minimum-output-entropy conjecture probes");
    c.key("mode", Kind::text, "search", "search | local")
        .key("eta", Kind::number, 0.7, "transmissivity")
        .key("k", Kind::number, 1.0, "thermal parameter K")
        .key("dim", Kind::integer, 40, "Fock truncation")
        .key("budget", Kind::integer, 2000, "candidates (search)")
        .key("seed", Kind::integer, 1, "RNG seed")
        .key("families", Kind::texts, Json::array({"diagonal", "low_rank", "thermal_perturbation"}),
             "comma list of families (search)")
        .key("magnitudes", Kind::numbers, Json::array({0.01, 0.05, 0.1}),
             "comma list of perturbation sizes (local)")
        .key("out", Kind::text, "-", "output path, - for stdout")
        .positional("mode");
    commands.emplace_back(std::move(c), run_conjecture);
  }
  {
    Command c(app, "quadrature", "coherent-code rates by Fock-space quadrature");
    c.key("eta", Kind::number, 0.8, "transmissivity")
        .key("nbar", Kind::number, 2.0, "mean photon budget")
        .key("beta", Kind::number, 0.5, "power split")
        .key("dim", Kind::integer, 50, "Fock truncation")
        .key("t_nodes", Kind::integer, 20, "nodes per axis for t")
        .key("alpha_nodes", Kind::integer, 30, "nodes per axis for alpha | t")
        .key("refine", Kind::integer, 6, "extra nodes for the convergence rerun")
        .key("tolerance", Kind::number, 1e-4, "convergence tolerance, bits")
        .key("out", Kind::text, "-", "output path, - for stdout");
    commands.emplace_back(std::move(c), run_quadrature);
  }
  for (auto& [c, fn] : commands) c.finalize();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto& [c, fn] : commands) {
      if (c.app()->parsed()) return fn(c.resolve());
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
