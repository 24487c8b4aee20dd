#pragma once

#include <Eigen/Dense>

namespace strichartz {

enum class Parity { odd, even };

/// Block-antisymmetric matrices of the construction: omega = diag(sigma, ..., sigma) on R^{2k}
/// and m = diag(omega, 0) acting on R^n.
struct MatrixSpec {
  int k = 0;
  Eigen::MatrixXd omega;
  Eigen::MatrixXd m;
  int n = 0;
  Parity parity = Parity::odd;

  /// Number of y-coordinates (n-1 odd, n-2 even).
  [[nodiscard]] int dim_y() const { return 2 * k; }
  /// Number of trailing z-coordinates (1 odd, 2 even).
  [[nodiscard]] int dim_z() const { return n - 2 * k; }
};

/// Magnetic potential A(x) = rho(x) M x with rho = |x|^{-alpha} or (1+|x|^2)^{-alpha/2}.
struct PotentialSpec {
  MatrixSpec matrix;
  double alpha = 1.5;
  bool regularized = false;

  static PotentialSpec make(int n, double alpha, bool regularized = false);
};

/// First- and second-order Taylor remainders of A and |A|^2 around (0, z).
struct RemainderSample {
  Eigen::VectorXd y;
  Eigen::VectorXd z;
  Eigen::VectorXd r1;
  double r2 = 0.0;
  double bound_ratio_r1 = 0.0;
  double bound_ratio_r2 = 0.0;
};

Eigen::MatrixXd build_omega(int k);
MatrixSpec build_m(int n);

Eigen::VectorXd eval_a(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec);
/// Jacobian DA with entries dA_i/dx_j.
Eigen::MatrixXd eval_da(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec);
/// B = DA - DA^T.
Eigen::MatrixXd eval_b(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec);
/// Row vector (x/|x|) B(x).
Eigen::VectorXd tangential_b(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec);
double divergence_a(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec);

/// r1 = |z|^{alpha-1} (A(y,z) - |z|^{-alpha} M(y,0)), r2 = |z|^{2alpha-2} (|A|^2 - c|y|^2/|z|^{2alpha}).
/// Bound ratios are |r1| |z|^2/|y|^2 and |r2| |z|^3/|y|^3 (zero at y = 0).
RemainderSample taylor_remainders(const Eigen::Ref<const Eigen::VectorXd>& y,
                                  const Eigen::Ref<const Eigen::VectorXd>& z, const PotentialSpec& spec,
                                  double c);

}  // namespace strichartz
