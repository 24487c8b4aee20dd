#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "strichartz/bump.hpp"

namespace strichartz {

/// Number of independent directions carried by a jet: r = |y|, z_1, z_2.
inline constexpr std::size_t kJetDirections = 3;

/// Second-order Taylor jet along several independent directions: value, first derivatives and
/// diagonal second derivatives. Mixed partials are not tracked.
template <class T>
struct Jet {
  using Lanes = std::array<T, kJetDirections>;
  T v{};
  Lanes d{};
  Lanes dd{};

  static Jet variable(T x, std::size_t direction) {
    Jet j{x, {}, {}};
    j.d[direction] = T(1);
    return j;
  }
  static Jet constant(T x) { return {x, {}, {}}; }
};

using RJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

template <class A, class B>
using JetProduct = Jet<decltype(A{} * B{})>;

template <class A, class B>
JetProduct<A, B> operator+(const Jet<A>& a, const Jet<B>& b) {
  JetProduct<A, B> out{a.v + b.v, {}, {}};
  for (std::size_t k = 0; k < kJetDirections; ++k) {
    out.d[k] = a.d[k] + b.d[k];
    out.dd[k] = a.dd[k] + b.dd[k];
  }
  return out;
}

template <class A, class B>
JetProduct<A, B> operator-(const Jet<A>& a, const Jet<B>& b) {
  JetProduct<A, B> out{a.v - b.v, {}, {}};
  for (std::size_t k = 0; k < kJetDirections; ++k) {
    out.d[k] = a.d[k] - b.d[k];
    out.dd[k] = a.dd[k] - b.dd[k];
  }
  return out;
}

template <class A, class B>
JetProduct<A, B> operator*(const Jet<A>& a, const Jet<B>& b) {
  JetProduct<A, B> out{a.v * b.v, {}, {}};
  for (std::size_t k = 0; k < kJetDirections; ++k) {
    out.d[k] = a.d[k] * b.v + a.v * b.d[k];
    out.dd[k] = a.dd[k] * b.v + A(2) * a.d[k] * b.d[k] + a.v * b.dd[k];
  }
  return out;
}

template <class A, class S>
Jet<decltype(A{} * S{})> scale(const Jet<A>& a, S s) {
  Jet<decltype(A{} * S{})> out{a.v * s, {}, {}};
  for (std::size_t k = 0; k < kJetDirections; ++k) {
    out.d[k] = a.d[k] * s;
    out.dd[k] = a.dd[k] * s;
  }
  return out;
}

template <class A>
Jet<A> operator-(const Jet<A>& a) {
  return scale(a, -1.0);
}

/// f(x) given value and first two derivatives of f at x.v.
template <class T>
Jet<T> compose(T f0, T f1, T f2, const Jet<T>& x) {
  Jet<T> out{f0, {}, {}};
  for (std::size_t k = 0; k < kJetDirections; ++k) {
    out.d[k] = f1 * x.d[k];
    out.dd[k] = f2 * x.d[k] * x.d[k] + f1 * x.dd[k];
  }
  return out;
}

inline RJet compose(const Derivs& f, const RJet& x) { return compose(f.value, f.d1, f.d2, x); }

/// x^p for x > 0.
inline RJet pow(const RJet& x, double p) {
  const double f = std::pow(x.v, p);
  const double f1 = p * f / x.v;
  const double f2 = (p - 1.0) * f1 / x.v;
  return compose(f, f1, f2, x);
}

inline RJet sqrt(const RJet& x) { return pow(x, 0.5); }

inline CJet exp(const CJet& x) {
  const std::complex<double> e = std::exp(x.v);
  return compose(e, e, e, x);
}

}  // namespace strichartz
