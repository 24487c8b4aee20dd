#pragma once

#include <span>
#include <utility>
#include <vector>

namespace strichartz {

/// Nodes and weights of a 1D quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with `count` nodes on [-1, 1]; exact for polynomials of degree 2*count-1.
/// Rules are computed once per count and cached (thread-safe).
const QuadratureRule& gauss_legendre(int count);

/// Gauss-Legendre rule with `count` nodes mapped to [a, b].
QuadratureRule gauss_legendre(int count, double a, double b);

/// Composite rule: `count` Gauss-Legendre nodes on each panel [breaks[i], breaks[i+1]].
QuadratureRule composite_gauss_legendre(int count, std::span<const double> breaks);

}  // namespace strichartz
