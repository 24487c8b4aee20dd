#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace strichartz {

struct LanczosOptions {
  int count = 1;
  int max_iterations = 800;
  int check_every = 10;
  double tolerance = 1e-11;
  std::uint64_t seed = 20240611;
};

struct LanczosResult {
  /// Largest Ritz values of the operator, descending.
  Eigen::VectorXd values;
  std::vector<Eigen::VectorXcd> vectors;
  Eigen::VectorXd residuals;
  int iterations = 0;
};

using LinearMap = std::function<void(const Eigen::VectorXcd& in, Eigen::VectorXcd& out)>;

/// Lanczos iteration with full reorthogonalization for the `count` largest eigenvalues of a
/// Hermitian linear map. Throws ConvergenceError with residual diagnostics when the Ritz
/// residuals stay above tolerance * |value| after max_iterations steps.
LanczosResult lanczos_largest(const LinearMap& op, Eigen::Index dim, const LanczosOptions& options);

}  // namespace strichartz
