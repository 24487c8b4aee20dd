#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strichartz/potential.hpp"

namespace strichartz {

struct IdentityCheck {
  std::string name;
  int samples = 0;
  /// Largest normalized deviation over the samples.
  double max_error = 0.0;
  double tolerance = 0.0;
  [[nodiscard]] bool pass() const { return max_error <= tolerance; }
};

struct RemainderStudy {
  double c = 1.0;
  /// sup |r1| |z|^2/|y|^2 on the base grid and on a grid refined twice in each direction.
  double r1_bound_coarse = 0.0;
  double r1_bound_fine = 0.0;
  /// Finite and stable to 1% under refinement.
  bool r1_bounded = false;
  /// Log-log slope of |r2| against |w| = |y|/|z| for |w| in [1e-3, 1e-1].
  double r2_small_w_exponent = 0.0;
  /// sup |r2| |z|^3/|y|^3 on the base grid.
  double r2_bound_sup = 0.0;
  /// Small-|w| exponent at least 3.
  bool r2_cubic_bound = false;
};

/// Random samples x in [-2, 2]^n with |x| >= 0.1, from a seeded 64-bit Mersenne twister.
std::vector<Eigen::VectorXd> sample_points(int n, int count, std::uint64_t seed);

/// Normalized residuals of div A = 0, B_tau = 0, B + B^T = 0, A(s x) = s^{1-alpha} A(x), and
/// A = 0, DA = |x|^{-alpha} M on the z-subspace.
std::vector<IdentityCheck> potential_identities(const PotentialSpec& spec, int samples, std::uint64_t seed,
                                                double tolerance = 1e-10);

RemainderStudy remainder_study(const PotentialSpec& spec, double c);

}  // namespace strichartz
