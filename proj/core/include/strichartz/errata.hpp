#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "strichartz/config.hpp"

namespace strichartz {

struct ErrataOptions {
  int samples = 200;
  std::uint64_t seed = 42;
  /// Truncation radii are drawn uniformly from [r_min, r_max] per sample point.
  double r_min = 3.0;
  double r_max = 12.0;
  /// Relative residual tolerance for agreement of direct and transcribed forcing.
  double tolerance = 1e-8;
  /// Fitted coefficients farther than this (relative to max(1, |printed|)) are flagged.
  double coefficient_tolerance = 1e-6;
  /// Fault injection: (term name, additive perturbation of its printed coefficient).
  std::vector<std::pair<std::string, double>> perturb;
};

struct ErrataTerm {
  std::string name;
  double printed = 0.0;
  double fitted = 0.0;
  bool discrepant = false;
  /// max over samples of |(fitted - printed) * basis| / scale.
  double max_relative_effect = 0.0;
};

struct ErrataReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  /// max over samples of |direct - printed| / (sum of |terms| + |direct|).
  double max_relative_printed = 0.0;
  /// Same after replacing flagged coefficients by their fitted values.
  double max_relative_corrected = 0.0;
  /// max |G_R| / scale over plateau samples (all cutoff derivatives zero).
  double max_relative_plateau_g = 0.0;
  int fit_rank = 0;
  double fit_condition = 0.0;
  std::vector<ErrataTerm> terms;

  [[nodiscard]] bool printed_consistent() const { return max_relative_printed <= tolerance; }
  [[nodiscard]] bool corrected_consistent() const { return max_relative_corrected <= tolerance; }
  [[nodiscard]] std::vector<std::string> discrepant_terms() const;
};

struct FdConvergence {
  double radius = 0.0;
  int points = 0;
  std::vector<double> steps;
  /// max over points of |fd - direct| / max |direct|, per step.
  std::vector<double> max_error;
  /// Log-log slope of max_error against the step.
  double observed_order = 0.0;
};

/// Richardson-extrapolated central differences of the model residual against exact differentiation
/// at seeded random points of the cutoff support, for three halved steps.
FdConvergence fd_convergence(const ProblemConfig& config, double radius = 8.0, int points = 20,
                             std::uint64_t seed = 42, int levels = 2);

/// Compares the exact-differentiation forcing with the transcribed decomposition at seeded random
/// support points and fits per-term coefficients by least squares to localize discrepancies.
ErrataReport residual_errata(const ProblemConfig& config, const ErrataOptions& options = {});

}  // namespace strichartz
