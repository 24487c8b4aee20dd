#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strichartz/rational.hpp"

namespace strichartz {

/// Lebesgue exponent in [1, infinity], exact.
class Exponent {
 public:
  Exponent() = default;
  Exponent(Rational value);
  Exponent(std::int64_t value) : Exponent(Rational(value)) {}
  static Exponent infinity();
  /// Parses "inf", "infinity", or any Rational literal.
  static Exponent parse(std::string_view text);

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  /// Finite value; throws for infinity.
  [[nodiscard]] const Rational& value() const;
  /// 1/p (zero for infinity).
  [[nodiscard]] Rational reciprocal() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Rational value_{1};
  bool infinite_ = false;
};

/// Hoelder conjugates (p', q').
std::pair<Exponent, Exponent> dual_pair(const Exponent& p, const Exponent& q);

/// Schroedinger-admissible pair: 2/p = n/2 - n/q with p >= 2.
struct AdmissiblePair {
  Exponent p;
  Exponent q;
  int n = 3;

  /// Validates the admissibility identity exactly.
  static AdmissiblePair make(Exponent p, Exponent q, int n);
  /// Pair with the given space exponent q; p follows from the admissibility identity.
  static AdmissiblePair from_q(Exponent q, int n);

  [[nodiscard]] bool is_energy_endpoint() const { return p.is_infinite(); }
  [[nodiscard]] std::string str() const { return "(" + p.str() + "," + q.str() + ")"; }
};

}  // namespace strichartz
