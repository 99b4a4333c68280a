#pragma once

#include <span>
#include <string>

#include "pbm/laurent.hpp"

namespace pbm {

// Element of the fraction field Q(X_1,...,X_m), stored as a reduced quotient of
// Laurent polynomials. Canonical form: gcd(num, den) is a unit, the denominator
// has no monomial factor and no negative exponents, and its lexicographically
// leading coefficient is positive.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(int nvars);
  RationalFunction(LaurentPoly numerator);  // NOLINT: polynomials embed implicitly
  RationalFunction(LaurentPoly numerator, LaurentPoly denominator);

  static RationalFunction constant(int nvars, const mpq_class& c);

  int nvars() const { return num_.nvars(); }
  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  // True when the value lies in the Laurent ring (denominator is 1).
  bool is_laurent() const { return den_.is_one(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);
  RationalFunction inverse() const;

  RationalFunction involute() const;
  // Membership in the involution-fixed subring.
  bool is_involution_invariant() const { return involute() == *this; }
  RationalFunction permute_variables(std::span<const int> images) const;
  RationalFunction collapse_variables() const;

  std::string to_string() const;
  std::string to_string(std::span<const std::string> names) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Reduced {};
  RationalFunction(LaurentPoly numerator, LaurentPoly denominator, Reduced);
  void normalize_units();

  LaurentPoly num_;
  LaurentPoly den_;
};

RationalFunction operator+(RationalFunction a, const RationalFunction& b);
RationalFunction operator-(RationalFunction a, const RationalFunction& b);
RationalFunction operator*(RationalFunction a, const RationalFunction& b);
RationalFunction operator/(RationalFunction a, const RationalFunction& b);

}  // namespace pbm
