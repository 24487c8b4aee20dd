#include "strichartz/config.hpp"

#include "strichartz/error.hpp"

namespace strichartz {

ProblemConfig ProblemConfig::make(int n, Rational alpha, Rational gamma, double c, std::optional<Rational> beta) {
  ProblemConfig cfg;
  cfg.n = n;
  cfg.alpha = alpha;
  cfg.gamma = gamma;
  cfg.c = c;
  cfg.beta = beta;
  if (n < 3) throw InvalidArgument("dimension n must be at least 3, got " + std::to_string(n));
  cfg.eigen = ground_state(cfg.blocks(), c);
  cfg.validate();
  return cfg;
}

Rational ProblemConfig::beta_threshold() const {
  return (alpha * Rational(dim_y()) + Rational(2 * dim_z()) * gamma) / Rational(n);
}

Rational ProblemConfig::beta_value() const {
  return beta ? *beta : beta_threshold() * Rational(51, 50);
}

void ProblemConfig::validate() const {
  if (n < 3) throw InvalidArgument("dimension n must be at least 3, got " + std::to_string(n));
  if (!(alpha > Rational(1) && alpha < Rational(2))) {
    throw InvalidArgument("alpha must lie in (1, 2), got " + alpha.str());
  }
  if (!(gamma > Rational(1, 2) && gamma < Rational(1))) {
    throw InvalidArgument("gamma must lie in (1/2, 1), got " + gamma.str());
  }
  if (!(beta_value() > beta_threshold())) {
    throw InvalidArgument("beta must exceed the threshold " + beta_threshold().str() + ", got " +
                          beta_value().str());
  }
  if (c != 1.0 && c != 2.0) throw InvalidArgument("model coefficient c must be 1 or 2");
  if (!(eigen.lambda > 0.0)) throw InvalidArgument("eigenvalue must be positive");
}

}  // namespace strichartz
