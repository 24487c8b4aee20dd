#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "strichartz/config.hpp"
#include "strichartz/exponents.hpp"
#include "strichartz/mixednorm.hpp"

namespace strichartz {

/// `count` admissible pairs in dimension n, from p = 2 to the (inf, 2) endpoint, equally spaced in 1/q.
std::vector<AdmissiblePair> admissible_pairs(int n, int count);

struct GammaWindow {
  Rational lo;
  Rational hi;
  [[nodiscard]] bool nonempty() const { return lo < hi; }
  [[nodiscard]] bool contains(const Rational& g) const { return lo < g && g < hi; }
  [[nodiscard]] Rational midpoint() const { return (lo + hi) / Rational(2); }
};

/// Open interval of gamma for which delta > 0 at the threshold beta, intersected with (1/2, 1).
GammaWindow gamma_window(int n, const Rational& alpha);

/// (alpha d_y + 2 d_z gamma) / n.
Rational beta_threshold(const ProblemConfig& config);

struct DeltaValue {
  Rational value;
  /// Labels of the terms attaining the minimum.
  std::vector<std::string> attaining;
};

/// Lower-bound growth exponent of the Strichartz quotient (six-term minimum).
DeltaValue delta_exponent(int n, const Rational& alpha, const Rational& gamma, const Rational& beta, const Exponent& p);

/// Closed form of delta at beta equal to the threshold, written directly in (n, alpha, gamma).
DeltaValue delta_at_threshold(int n, const Rational& alpha, const Rational& gamma);

struct ExponentSet {
  /// alpha d_y + 2 d_z gamma.
  Rational weight;
  Rational f_r_slope;
  Rational w_r_spatial_slope;
  /// Slope of ||W_R||_{L^p((0,R^beta); L^q)}: beta/p + weight/(2q).
  Rational w_r_slope;
  /// Slope of the forcing bound with T = R^beta: beta/p + weight/(2q) + max(-2gamma, 2beta - 2alpha - 2).
  Rational forcing_bound_slope;
  Rational ratio_wf_slope;
  Rational kappa;
  DeltaValue delta;
  GammaWindow gamma_window;
  Rational beta_threshold;
  Rational beta;
};

ExponentSet predicted_exponents(const ProblemConfig& config, const AdmissiblePair& pair);

struct SweepQuantities {
  bool f_r = true;
  bool w_r = true;
  bool forcing = true;
  bool rest = true;
  bool forcing_tilde = true;
};

struct SweepRow {
  double radius = 0.0;
  NormResult f_r;
  NormResult w_r;          ///< L^p((0, R^beta); L^q)
  NormResult w_r_fixed_t;  ///< L^p((0, 1); L^q)
  NormResult forcing;      ///< L^p((0, R^beta); L^q)
  NormResult rest;         ///< L^p'((0, R^beta); L^q')
  NormResult forcing_tilde;
  double ratio = 0.0;
  /// forcing divided by the bound shape T^{1/p} R^{weight/2q} max(R^{-2gamma}, T^2 R^{-(2alpha+2)}).
  double forcing_bound_ratio = 0.0;
  bool converged = true;
};

struct SweepOptions {
  QuadratureSpec quad;
  SweepQuantities quantities;
  /// Worker threads; 0 reads STRICHARTZ_WORKERS and falls back to the hardware concurrency.
  int workers = 0;
  CutoffMode cutoff = CutoffMode::smooth;
};

/// Worker count from STRICHARTZ_WORKERS (or hardware concurrency when unset/invalid).
int default_workers();

/// Geometric grid of `points` radii from r_min to r_max inclusive.
std::vector<double> geometric_grid(double r_min, double r_max, int points);

std::vector<SweepRow> run_sweep(const ProblemConfig& config, const AdmissiblePair& pair, std::span<const double> r_grid,
                                const SweepOptions& options = {});

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  std::vector<double> r_values;
  int sample_count = 0;
  bool spans_two_decades = false;
};

/// Least squares of log(y) on log(x); at least two positive points.
ScalingFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Column names: f_R_norm, W_R_norm, W_R_fixed_T_norm, F_R_norm, rest_norm, Ftilde_norm, ratio,
/// ratio_wf, F_R_bound_ratio.
double column_value(const SweepRow& row, const std::string& column);
const std::vector<std::string>& sweep_columns();

/// Log-log slope of a sweep column; requires at least five converged rows.
ScalingFit fit_exponent(std::span<const SweepRow> rows, const std::string& column);

enum class CheckStatus { pass, fail, not_applicable };
std::string to_string(CheckStatus status);

struct VerdictCheck {
  std::string name;
  double measured = 0.0;
  double predicted = 0.0;
  double tolerance = 0.0;
  std::string relation;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct VerdictTolerances {
  double slope = 0.02;
  double delta_margin = 0.05;
  double bound_slope = 0.02;
};

struct Verdict {
  ExponentSet predicted;
  std::map<std::string, ScalingFit> fits;
  std::vector<VerdictCheck> checks;
  CheckStatus overall = CheckStatus::pass;
};

Verdict verdict(const ProblemConfig& config, const AdmissiblePair& pair, std::span<const SweepRow> rows,
                const VerdictTolerances& tolerances = {});

}  // namespace strichartz
