#include "strichartz/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "strichartz/error.hpp"

namespace strichartz {
namespace {

QuadratureRule compute_gauss_legendre(int count) {
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= count; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= count; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[count - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int count) {
  if (count < 1) throw InvalidArgument("gauss_legendre: node count must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[count];
  if (!slot) {
    if (count == 1) {
      slot = std::make_unique<QuadratureRule>(QuadratureRule{{0.0}, {2.0}});
    } else {
      slot = std::make_unique<QuadratureRule>(compute_gauss_legendre(count));
    }
  }
  return *slot;
}

QuadratureRule gauss_legendre(int count, double a, double b) {
  const QuadratureRule& ref = gauss_legendre(count);
  QuadratureRule out;
  out.nodes.resize(ref.size());
  out.weights.resize(ref.size());
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out.nodes[i] = mid + half * ref.nodes[i];
    out.weights[i] = half * ref.weights[i];
  }
  return out;
}

QuadratureRule composite_gauss_legendre(int count, std::span<const double> breaks) {
  if (breaks.size() < 2) throw InvalidArgument("composite_gauss_legendre: need at least two breakpoints");
  QuadratureRule out;
  out.nodes.reserve(count * (breaks.size() - 1));
  out.weights.reserve(count * (breaks.size() - 1));
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    if (!(breaks[p + 1] > breaks[p])) throw InvalidArgument("composite_gauss_legendre: breakpoints must increase");
    const QuadratureRule panel = gauss_legendre(count, breaks[p], breaks[p + 1]);
    out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return out;
}

}  // namespace strichartz
