#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "strichartz/bump.hpp"

namespace strichartz {

/// T = -Laplacian + 2i Omega y . grad + c |y|^2 on R^{2k}.
struct TwistedOscillator {
  int k = 1;
  double c = 2.0;

  void validate() const;
};

/// Uniform tensor grid on one 2D block: `points` interior nodes per direction on
/// (-half_width, half_width) with homogeneous Dirichlet values outside.
struct BlockGrid {
  int points = 96;
  double half_width = 8.0;
  int stencil_order = 6;

  void validate() const;
  [[nodiscard]] double spacing() const { return 2.0 * half_width / (points + 1); }
  [[nodiscard]] double coordinate(int i) const { return -half_width + (i + 1) * spacing(); }
  [[nodiscard]] Eigen::Index size() const { return static_cast<Eigen::Index>(points) * points; }
  /// Linear index of node (i, j); i runs along the first coordinate.
  [[nodiscard]] Eigen::Index index(int i, int j) const { return i + static_cast<Eigen::Index>(points) * j; }
};

/// Radial function v(r) with first and second derivatives.
class RadialProfile {
 public:
  enum class Kind { gaussian, grid };

  /// v(r) = exp(-r^2 / (2 scale)).
  static RadialProfile gaussian(double scale);
  /// Clamped cubic spline through samples on a uniform grid [0, r_max]; zero beyond r_max.
  static RadialProfile from_samples(std::vector<double> samples, double r_max);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] double amplitude() const { return amplitude_; }
  [[nodiscard]] const std::vector<double>& samples() const { return samples_; }
  /// Radius beyond which v is treated as zero (infinite for the Gaussian).
  [[nodiscard]] double support_radius() const;

  /// Copy of this profile multiplied by mu.
  [[nodiscard]] RadialProfile scaled(double mu) const;

  [[nodiscard]] double value(double r) const { return derivs(r).value; }
  [[nodiscard]] Derivs derivs(double r) const;
  /// v'(r)/r, finite at r = 0.
  [[nodiscard]] double d1_over_r(double r) const;
  /// G = r v'(r) = u . grad v(u).
  [[nodiscard]] double g_term(double r) const { return r * derivs(r).d1; }
  /// H = r^2 v''(r) = u D^2 v(u) u.
  [[nodiscard]] double h_term(double r) const { return r * r * derivs(r).d2; }

 private:
  Kind kind_ = Kind::gaussian;
  double scale_ = 1.0;
  double amplitude_ = 1.0;
  std::vector<double> samples_;
  std::vector<double> second_;
  double r_max_ = 0.0;
};

struct Eigenpair {
  double lambda = 0.0;
  RadialProfile profile = RadialProfile::gaussian(1.0);
  bool closed_form = false;
  /// False when the profile could not be certified radial (the construction then rejects it).
  bool radial = true;
  /// Angular variance of |v| on sample circles, normalized by max |v|^2 (numerical pairs only).
  double angular_variance = 0.0;
};

struct EigenSolveInfo {
  int iterations = 0;
  std::vector<double> residuals;
  /// max |Im <x, T x>| over returned block eigenvectors.
  double max_rayleigh_imag = 0.0;
  std::vector<double> block_values;
  std::vector<Eigen::VectorXcd> block_vectors;
};

using SparseMatrixC = Eigen::SparseMatrix<std::complex<double>>;

/// Discretization of a single 2D block of T.
SparseMatrixC assemble_block_operator(const TwistedOscillator& osc, const BlockGrid& grid);

/// Applies the block operator to a field sampled on `grid` (fewer than 16 points per direction rejected).
Eigen::VectorXcd apply_t(const TwistedOscillator& osc, const BlockGrid& grid, const Eigen::VectorXcd& u);

/// Samples a radial function on the block grid.
Eigen::VectorXcd sample_on_grid(const BlockGrid& grid, const RadialProfile& profile);

/// Closed-form Gaussian ground state: v = exp(-sqrt(c)|u|^2/2), lambda = 2k sqrt(c).
Eigenpair ground_state(int k, double c);

/// `count` smallest eigenvalues of the discretized T, ascending. The block problem is solved by
/// shift-invert Lanczos; for k > 1 eigenvalues are sums of block eigenvalues.
std::vector<Eigenpair> solve_eigen_numeric(const TwistedOscillator& osc, const BlockGrid& grid, int count,
                                           EigenSolveInfo* info = nullptr);

/// Radial profile extracted from a block eigenvector by averaging over circles; phase and
/// normalization fixed so that v(0) = 1.
Eigenpair extract_radial(const BlockGrid& grid, const Eigen::VectorXcd& vec, double lambda);

/// L^p(R^{2k}) norms of the profile; p = infinity returns the supremum.
std::vector<double> profile_norms(const Eigenpair& pair, int k, std::span<const double> exponents);

/// Surface area of the unit sphere in R^d.
double sphere_area(int d);

}  // namespace strichartz
