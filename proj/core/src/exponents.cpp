#include "strichartz/exponents.hpp"

#include <cctype>
#include <limits>

#include "strichartz/error.hpp"

namespace strichartz {

Exponent::Exponent(Rational value) : value_(value) {
  if (value < Rational(1)) throw InvalidArgument("Lebesgue exponent must be at least 1, got " + value.str());
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  std::string lower;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "inf" || lower == "infinity") return infinity();
  return Exponent(Rational::parse(lower));
}

const Rational& Exponent::value() const {
  if (infinite_) throw InvalidArgument("infinite exponent has no finite value");
  return value_;
}

Rational Exponent::reciprocal() const { return infinite_ ? Rational(0) : Rational(1) / value_; }

double Exponent::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
}

std::string Exponent::str() const { return infinite_ ? "inf" : value_.str(); }

std::pair<Exponent, Exponent> dual_pair(const Exponent& p, const Exponent& q) {
  const auto conj = [](const Exponent& e) {
    const Rational inv = Rational(1) - e.reciprocal();
    return inv.is_zero() ? Exponent::infinity() : Exponent(Rational(1) / inv);
  };
  return {conj(p), conj(q)};
}

AdmissiblePair AdmissiblePair::make(Exponent p, Exponent q, int n) {
  if (n < 3) throw InvalidArgument("dimension must be at least 3");
  if (!p.is_infinite() && p.value() < Rational(2)) throw InvalidArgument("admissible pairs need p >= 2");
  const Rational lhs = Rational(2) * p.reciprocal();
  const Rational rhs = Rational(n, 2) - Rational(n) * q.reciprocal();
  if (lhs != rhs) throw InvalidArgument("pair " + p.str() + "," + q.str() + " is not admissible in dimension " + std::to_string(n));
  return AdmissiblePair{p, q, n};
}

AdmissiblePair AdmissiblePair::from_q(Exponent q, int n) {
  if (n < 3) throw InvalidArgument("dimension must be at least 3");
  const Rational two_over_p = Rational(n, 2) - Rational(n) * q.reciprocal();
  if (two_over_p.sign() < 0 || two_over_p > Rational(1)) {
    throw InvalidArgument("no admissible p for q = " + q.str() + " in dimension " + std::to_string(n));
  }
  const Exponent p = two_over_p.is_zero() ? Exponent::infinity() : Exponent(Rational(2) / two_over_p);
  return make(p, q, n);
}

}  // namespace strichartz
