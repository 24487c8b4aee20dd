#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "strichartz/config.hpp"

namespace strichartz {

/// Fields of the construction that can be evaluated and integrated.
enum class FieldKind {
  omega,            ///< scaled profile v(y / |z|^{alpha/2})
  w,                ///< quasi-mode e^{i lambda t/|z|^alpha} omega
  w_r,              ///< truncated quasi-mode
  f_r,              ///< initial datum W_R(0, .)
  f_printed,        ///< closed-form residual F of W (transcribed formula)
  g_r_printed,      ///< cutoff commutator term G_R (transcribed formula)
  forcing_printed,  ///< cutoff product times F plus G_R
  forcing,          ///< F_R by exact differentiation of W_R (ground truth)
  rest,             ///< Taylor-remainder terms of the auxiliary forcing
  forcing_tilde,    ///< F_R plus rest
};

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& name);

/// True when |field(t)| does not depend on t.
bool is_unimodular_in_time(FieldKind kind);

enum class CutoffMode {
  smooth,     ///< C-infinity bumps as in the construction
  rectangle,  ///< y-cutoff forced to 1 and z-cutoff replaced by an indicator (sanity mode)
};

/// One term of a transcribed formula: value = coefficient * basis.
struct PrintedTerm {
  std::string name;
  double coefficient = 0.0;
  std::complex<double> basis;
};

/// Fields f with f(t) = e^{i lambda t/|z|^alpha} (c0 + c1 t + c2 t^2) at a fixed spatial point.
struct TimePolynomial {
  double phase_rate = 0.0;
  std::complex<double> c0, c1, c2;

  [[nodiscard]] std::complex<double> envelope(double t) const { return c0 + t * (c1 + t * c2); }
  [[nodiscard]] std::complex<double> operator()(double t) const {
    return std::polar(1.0, phase_rate * t) * envelope(t);
  }
};

/// (|y|/|z|^{alpha/2})^m L(|y|/|z|^{alpha/2}) for a radial base function L.
struct ScaledProfile {
  std::function<double(double)> base;
  int weight_power = 0;

  [[nodiscard]] double operator()(double y_norm, double z_norm, double alpha) const;
};

/// Evaluators for the quasi-mode construction at a fixed truncation radius R.
///
/// Coordinates are x = (y, z) with y in R^{d_y} and z in R^{d_z}. Because the profile is radial,
/// every field depends on y only through r = |y|; the *_reduced entry points take r directly.
/// Immutable after construction and safe to share between threads.
class QuasiModeField {
 public:
  QuasiModeField(ProblemConfig config, double radius, CutoffMode mode = CutoffMode::smooth);

  [[nodiscard]] const ProblemConfig& config() const { return config_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] double lambda() const { return config_.eigen.lambda; }
  [[nodiscard]] CutoffMode cutoff_mode() const { return mode_; }
  /// Half-width R^gamma of the z-cutoff.
  [[nodiscard]] double cutoff_width() const { return width_; }

  // Full-coordinate evaluators.
  [[nodiscard]] double eval_omega(std::span<const double> y, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> eval_w(double t, std::span<const double> y, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> eval_w_r(double t, std::span<const double> y, std::span<const double> z) const;
  [[nodiscard]] double eval_f_r(std::span<const double> y, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> eval_f_printed(double t, std::span<const double> y,
                                                    std::span<const double> z) const;
  [[nodiscard]] std::complex<double> eval_g_r_printed(double t, std::span<const double> y,
                                                      std::span<const double> z) const;
  /// Model-operator residual i dW_R/dt + (-Laplacian + 2i B.grad + c|y|^2/|z|^{2alpha}) W_R,
  /// B = |z|^{-alpha} M(y, 0), by exact differentiation.
  [[nodiscard]] std::complex<double> eval_f_direct(double t, std::span<const double> y,
                                                   std::span<const double> z) const;
  /// Same residual by central differences in Cartesian coordinates with step h, followed by
  /// `richardson_levels` Richardson extrapolation steps (order 2 + 2 * levels).
  [[nodiscard]] std::complex<double> eval_f_fd(double t, std::span<const double> y, std::span<const double> z,
                                               double h, int richardson_levels = 1) const;
  [[nodiscard]] std::complex<double> eval_rest_forcing(double t, std::span<const double> y,
                                                       std::span<const double> z) const;
  [[nodiscard]] std::complex<double> eval(FieldKind kind, double t, std::span<const double> y,
                                          std::span<const double> z) const;

  /// Evaluation in reduced coordinates (r = |y|, z).
  [[nodiscard]] std::complex<double> eval_reduced(FieldKind kind, double t, double r,
                                                  std::span<const double> z) const;

  /// Batched evaluation: points are the columns of `x` (n rows), times are per point.
  void eval_batch(FieldKind kind, std::span<const double> t, const Eigen::MatrixXd& x,
                  std::span<std::complex<double>> out) const;

  /// Terms of the transcribed F_R decomposition at a reduced point; their sum is forcing_printed.
  [[nodiscard]] std::vector<PrintedTerm> printed_terms(double t, double r, std::span<const double> z) const;

  /// Time structure of a field at a reduced point; `horizon` sets the sampling scale.
  [[nodiscard]] TimePolynomial time_polynomial(FieldKind kind, double r, std::span<const double> z,
                                               double horizon) const;

 private:
  struct CutoffParts;
  /// W_R with first and second derivatives along r (slot 0) and z_i (slot 1 + i).
  struct FieldJet {
    std::complex<double> value;
    std::array<std::complex<double>, 3> d{};
    std::array<std::complex<double>, 3> dd{};
  };

  void check_point(std::span<const double> y, std::span<const double> z) const;
  [[nodiscard]] double z_norm(std::span<const double> z) const;
  [[nodiscard]] double phase_rate(double rho) const;
  [[nodiscard]] CutoffParts cutoffs(double r, std::span<const double> z) const;
  [[nodiscard]] FieldJet w_r_jet(double t, double r, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> w_r_reduced(double t, double r, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> f_printed_reduced(double t, double r, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> g_r_printed_reduced(double t, double r, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> forcing_reduced(double t, double r, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> rest_reduced(double t, double r, std::span<const double> z) const;
  [[nodiscard]] std::complex<double> rest_full(double t, std::span<const double> y, std::span<const double> z) const;

  ProblemConfig config_;
  PotentialSpec potential_;
  double radius_;
  double width_;
  double alpha_;
  CutoffMode mode_;
};

}  // namespace strichartz
