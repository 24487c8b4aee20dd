#include "strichartz/bump.hpp"

#include <cmath>

namespace strichartz {
namespace {

// g(t) = exp(-1/t) and its first two derivatives; each is exp(-1/t - m log t) times a polynomial,
// which stays finite as t -> 0+.
Derivs g_derivs(double t) {
  if (t <= 0.0) return {};
  const double lt = std::log(t);
  const double g = std::exp(-1.0 / t);
  const double g1 = std::exp(-1.0 / t - 2.0 * lt);
  const double g2 = std::exp(-1.0 / t - 4.0 * lt) * (1.0 - 2.0 * t);
  return {g, g1, g2};
}

// Derivatives of h(s) = a(s) / (a(s) + b(s)) on 1/2 < s < 1 with a = g(2 - 2s), b = g(2s - 1).
Derivs transition(double s) {
  const Derivs ga = g_derivs(2.0 - 2.0 * s);
  const Derivs gb = g_derivs(2.0 * s - 1.0);
  const double a = ga.value, a1 = -2.0 * ga.d1, a2 = 4.0 * ga.d2;
  const double b = gb.value, b1 = 2.0 * gb.d1, b2 = 4.0 * gb.d2;
  const double d = a + b;
  const double d1 = a1 + b1;
  const double d2 = a2 + b2;
  const double h = a / d;
  const double h1 = (a1 - h * d1) / d;
  const double h2 = (a2 - 2.0 * h1 * d1 - h * d2) / d;
  return {h, h1, h2};
}

}  // namespace

Derivs bump_derivs(double s) {
  const double r = std::abs(s);
  if (r <= 0.5) return {1.0, 0.0, 0.0};
  if (r >= 1.0) return {};
  const Derivs h = transition(r);
  const double sign = s < 0.0 ? -1.0 : 1.0;
  return {h.value, sign * h.d1, h.d2};
}

double bump(double s) { return bump_derivs(s).value; }
double bump_d1(double s) { return bump_derivs(s).d1; }
double bump_d2(double s) { return bump_derivs(s).d2; }

Derivs shifted_bump(double x, double center, double width) {
  const Derivs b = bump_derivs((x - center) / width);
  return {b.value, b.d1 / width, b.d2 / (width * width)};
}

}  // namespace strichartz
