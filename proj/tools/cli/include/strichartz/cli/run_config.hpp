#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "strichartz/config.hpp"
#include "strichartz/exponents.hpp"
#include "strichartz/landau.hpp"
#include "strichartz/mixednorm.hpp"
#include "strichartz/scaling.hpp"

namespace strichartz::cli {

using Json = nlohmann::ordered_json;

/// Everything a subcommand needs, after merging the configuration file with command-line flags.
struct RunConfig {
  // Problem.
  int n = 3;
  std::string alpha = "3/2";
  std::string gamma = "4/5";
  /// Empty means 51/50 of the threshold.
  std::string beta;
  double model_c = 1.0;
  /// "odd", "even" or empty (derived from n).
  std::string parity;
  /// "p,q"; empty means the endpoint p = 2.
  std::string pair;
  std::string cutoff = "smooth";

  // Radius grid (geometric).
  double r_min = 32.0;
  double r_max = 4096.0;
  int r_points = 8;
  /// Single radius for `norms`; zero means r_min.
  double radius = 0.0;

  QuadratureSpec quad;
  VerdictTolerances tolerances;

  std::string out;
  std::uint64_t seed = 42;

  // eig.
  int k = 1;
  /// Zero means model_c.
  double eig_c = 0.0;
  BlockGrid grid;
  int eig_count = 3;
  double eig_tolerance = 1e-4;

  // residual and verify-potential.
  int samples = 200;
  int potential_samples = 1000;
  double residual_tolerance = 1e-8;
  double identity_tolerance = 1e-10;
  bool regularized = false;
  /// Fault injection entries "term:delta".
  std::vector<std::string> perturb;

  /// Rejects out-of-range values with a message naming the offending key.
  void validate() const;

  [[nodiscard]] ProblemConfig problem() const;
  [[nodiscard]] AdmissiblePair admissible() const;
  [[nodiscard]] std::vector<double> r_grid() const;
  [[nodiscard]] CutoffMode cutoff_mode() const;
  [[nodiscard]] std::vector<std::pair<std::string, double>> perturbations() const;
  [[nodiscard]] Json to_json() const;
};

}  // namespace strichartz::cli
