#pragma once

#include <optional>
#include <string>

#include "strichartz/landau.hpp"
#include "strichartz/potential.hpp"
#include "strichartz/rational.hpp"

namespace strichartz {

/// Parameters of one counterexample construction.
struct ProblemConfig {
  int n = 3;
  Rational alpha{3, 2};
  Rational gamma{4, 5};
  /// Time exponent; defaults to 51/50 of the threshold when unset.
  std::optional<Rational> beta;
  double c = 1.0;
  Eigenpair eigen = ground_state(1, 1.0);

  /// Closed-form ground state for the given dimension and coefficient.
  static ProblemConfig make(int n, Rational alpha, Rational gamma, double c = 1.0,
                            std::optional<Rational> beta = std::nullopt);

  [[nodiscard]] Parity parity() const { return n % 2 == 1 ? Parity::odd : Parity::even; }
  [[nodiscard]] int dim_y() const { return parity() == Parity::odd ? n - 1 : n - 2; }
  [[nodiscard]] int dim_z() const { return parity() == Parity::odd ? 1 : 2; }
  [[nodiscard]] int blocks() const { return dim_y() / 2; }
  [[nodiscard]] double alpha_value() const { return alpha.to_double(); }
  [[nodiscard]] double gamma_value() const { return gamma.to_double(); }

  /// (alpha d_y + 2 d_z gamma) / n.
  [[nodiscard]] Rational beta_threshold() const;
  [[nodiscard]] Rational beta_value() const;

  /// Throws InvalidArgument on n < 3, alpha outside (1,2), gamma outside (1/2,1),
  /// beta not above threshold, c not in {1,2}, or a non-positive eigenvalue.
  void validate() const;

  [[nodiscard]] PotentialSpec potential() const { return PotentialSpec::make(n, alpha_value()); }
};

}  // namespace strichartz
