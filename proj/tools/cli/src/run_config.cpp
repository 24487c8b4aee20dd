#include "strichartz/cli/run_config.hpp"

#include <cmath>
#include <stdexcept>

#include "strichartz/error.hpp"

namespace strichartz::cli {
namespace {

Rational parse_rational(const std::string& key, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw InvalidArgument(key + ": cannot parse '" + text + "' as a rational number (" + e.what() + ")");
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

}  // namespace

void RunConfig::validate() const {
  require(n >= 3, "n: dimension must be at least 3 (n = 2 is outside the construction)");
  const Rational a = parse_rational("alpha", alpha);
  require(a > Rational(1) && a < Rational(2), "alpha: must lie in the open interval (1, 2), got " + alpha);
  const Rational g = parse_rational("gamma", gamma);
  require(g > Rational(1, 2) && g < Rational(1), "gamma: must lie in the open interval (1/2, 1), got " + gamma);
  require(model_c == 1.0 || model_c == 2.0, "model-c: must be 1 or 2");
  require(parity.empty() || parity == "odd" || parity == "even", "parity: must be 'odd' or 'even'");
  if (!parity.empty()) {
    require((parity == "odd") == (n % 2 == 1), "parity: '" + parity + "' does not match n = " + std::to_string(n));
  }
  require(cutoff == "smooth" || cutoff == "rectangle", "cutoff: must be 'smooth' or 'rectangle'");
  require(r_min > 2.0, "r-min: radii must exceed 2");
  require(r_max > r_min, "r-max: must exceed r-min");
  require(r_points >= 2, "r-points: need at least two radii");
  require(radius == 0.0 || radius > 2.0, "r: radius must exceed 2");
  quad.validate();
  require(tolerances.slope > 0.0 && tolerances.delta_margin >= 0.0 && tolerances.bound_slope >= 0.0,
          "tolerances: slope tolerance must be positive and margins non-negative");
  require(k >= 1, "k: number of oscillator blocks must be at least 1");
  require(eig_c == 0.0 || eig_c == 1.0 || eig_c == 2.0, "c: oscillator coefficient must be 1 or 2");
  grid.validate();
  require(eig_count >= 1, "eig-count: must be at least 1");
  require(samples >= 1 && potential_samples >= 1, "samples: must be at least 1");
  (void)perturbations();
  (void)problem();
  (void)admissible();
}

ProblemConfig RunConfig::problem() const {
  std::optional<Rational> b;
  if (!beta.empty()) b = parse_rational("beta", beta);
  return ProblemConfig::make(n, parse_rational("alpha", alpha), parse_rational("gamma", gamma), model_c, b);
}

AdmissiblePair RunConfig::admissible() const {
  if (pair.empty()) return AdmissiblePair::from_q(Exponent(Rational(2 * n, n - 2)), n);
  const auto comma = pair.find(',');
  require(comma != std::string::npos, "pair: expected 'p,q', got '" + pair + "'");
  AdmissiblePair out;
  try {
    out = AdmissiblePair::make(Exponent::parse(pair.substr(0, comma)), Exponent::parse(pair.substr(comma + 1)), n);
  } catch (const std::exception& e) {
    throw InvalidArgument("pair: " + std::string(e.what()));
  }
  require(!out.is_energy_endpoint(), "pair: the (inf,2) endpoint is mass conservation and cannot be violated");
  return out;
}

std::vector<double> RunConfig::r_grid() const { return geometric_grid(r_min, r_max, r_points); }

CutoffMode RunConfig::cutoff_mode() const { return cutoff == "rectangle" ? CutoffMode::rectangle : CutoffMode::smooth; }

std::vector<std::pair<std::string, double>> RunConfig::perturbations() const {
  std::vector<std::pair<std::string, double>> out;
  for (const std::string& entry : perturb) {
    const auto colon = entry.rfind(':');
    require(colon != std::string::npos && colon > 0, "perturb: expected 'term:delta', got '" + entry + "'");
    double delta = 0.0;
    try {
      std::size_t used = 0;
      delta = std::stod(entry.substr(colon + 1), &used);
      require(used == entry.size() - colon - 1, "perturb: trailing characters in '" + entry + "'");
    } catch (const std::invalid_argument&) {
      throw InvalidArgument("perturb: cannot parse delta in '" + entry + "'");
    }
    out.emplace_back(entry.substr(0, colon), delta);
  }
  return out;
}

Json RunConfig::to_json() const {
  const ProblemConfig cfg = problem();
  Json j;
  j["n"] = n;
  j["parity"] = n % 2 == 1 ? "odd" : "even";
  j["alpha"] = cfg.alpha.str();
  j["gamma"] = cfg.gamma.str();
  j["beta"] = cfg.beta_value().str();
  j["beta_threshold"] = cfg.beta_threshold().str();
  j["model_c"] = model_c;
  j["pair"] = admissible().str();
  j["cutoff"] = cutoff;
  j["r_min"] = r_min;
  j["r_max"] = r_max;
  j["r_points"] = r_points;
  j["radius"] = radius == 0.0 ? r_min : radius;
  j["quad"] = {{"radial_nodes", quad.radial_nodes},
               {"z_nodes", quad.z_nodes},
               {"t_nodes", quad.t_nodes},
               {"refinement_factor", quad.refinement_factor},
               {"tolerance", quad.tolerance}};
  j["tolerances"] = {{"slope", tolerances.slope},
                     {"delta_margin", tolerances.delta_margin},
                     {"bound_slope", tolerances.bound_slope}};
  j["seed"] = seed;
  j["eig"] = {{"k", k},
              {"c", eig_c == 0.0 ? model_c : eig_c},
              {"grid_points", grid.points},
              {"half_width", grid.half_width},
              {"stencil_order", grid.stencil_order},
              {"count", eig_count},
              {"tolerance", eig_tolerance}};
  j["residual"] = {{"samples", samples}, {"tolerance", residual_tolerance}, {"perturb", perturb}};
  j["potential"] = {{"samples", potential_samples},
                    {"tolerance", identity_tolerance},
                    {"regularized", regularized}};
  return j;
}

}  // namespace strichartz::cli
