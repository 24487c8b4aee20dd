#pragma once

namespace strichartz {

/// Value and first two derivatives of a scalar function at a point.
struct Derivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Smooth even cutoff: 1 on [-1/2, 1/2], 0 outside (-1, 1), monotone in between.
///
/// psi(s) = g(2 - 2|s|) / (g(2 - 2|s|) + g(2|s| - 1)) with g(t) = exp(-1/t) for t > 0.
double bump(double s);
double bump_d1(double s);
double bump_d2(double s);
Derivs bump_derivs(double s);

/// Rescaled cutoff psi((x - center) / width) together with its x-derivatives.
Derivs shifted_bump(double x, double center, double width);

}  // namespace strichartz
