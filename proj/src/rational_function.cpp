#include "pbm/rational_function.hpp"

#include <utility>

#include "pbm/errors.hpp"

namespace pbm {

RationalFunction::RationalFunction(int nvars)
    : num_(nvars), den_(LaurentPoly::constant(nvars, 1)) {}

RationalFunction::RationalFunction(LaurentPoly numerator)
    : num_(std::move(numerator)), den_(LaurentPoly::constant(num_.nvars(), 1)) {}

RationalFunction::RationalFunction(LaurentPoly numerator, LaurentPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  require(num_.nvars() == den_.nvars(), "variable-count mismatch in rational function");
  require(!den_.is_zero(), "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly::constant(num_.nvars(), 1);
    return;
  }
  if (!den_.is_monomial()) {
    LaurentPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  normalize_units();
}

RationalFunction::RationalFunction(LaurentPoly numerator, LaurentPoly denominator, Reduced)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.is_zero()) {
    den_ = LaurentPoly::constant(num_.nvars(), 1);
    return;
  }
  normalize_units();
}

RationalFunction RationalFunction::constant(int nvars, const mpq_class& c) {
  return {LaurentPoly::constant(nvars, c.get_num()), LaurentPoly::constant(nvars, c.get_den())};
}

// Moves monomial factors of the denominator into the numerator, cancels the
// integer content and fixes the sign.
void RationalFunction::normalize_units() {
  Monomial shift = den_.min_exponents().inverse();
  if (!shift.is_one()) {
    den_ = den_.times(shift);
    num_ = num_.times(shift);
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.integer_content().get_mpz_t(), den_.integer_content().get_mpz_t());
  if (den_.leading().coeff < 0) g = -g;
  if (g != 1) {
    num_ = num_.divided_by(g);
    den_ = den_.divided_by(g);
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (den_ == rhs.den_) {
    LaurentPoly n = num_ + rhs.num_;
    if (den_.is_one()) {
      num_ = std::move(n);
      return *this;
    }
    return *this = RationalFunction(std::move(n), den_);
  }
  return *this = RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) { return *this += -rhs; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  if (is_zero() || rhs.is_zero()) {
    require(nvars() == rhs.nvars(), "variable-count mismatch in rational function");
    return *this = RationalFunction(nvars());
  }
  if (den_.is_one() && rhs.den_.is_one()) {
    num_ *= rhs.num_;
    return *this;
  }
  // Cross-cancel: both inputs are already reduced.
  LaurentPoly g1 = gcd(num_, rhs.den_);
  LaurentPoly g2 = gcd(rhs.num_, den_);
  LaurentPoly a = g1.is_one() ? num_ : *divide_exact(num_, g1);
  LaurentPoly d2 = g1.is_one() ? rhs.den_ : *divide_exact(rhs.den_, g1);
  LaurentPoly b = g2.is_one() ? rhs.num_ : *divide_exact(rhs.num_, g2);
  LaurentPoly d1 = g2.is_one() ? den_ : *divide_exact(den_, g2);
  return *this = RationalFunction(a * b, d1 * d2, Reduced{});
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) { return *this *= rhs.inverse(); }

RationalFunction RationalFunction::inverse() const {
  require(!is_zero(), "inverse of zero rational function");
  return RationalFunction(den_, num_, Reduced{});
}

RationalFunction RationalFunction::involute() const {
  return RationalFunction(num_.involute(), den_.involute(), Reduced{});
}

RationalFunction RationalFunction::permute_variables(std::span<const int> images) const {
  return RationalFunction(num_.permute_variables(images), den_.permute_variables(images), Reduced{});
}

RationalFunction RationalFunction::collapse_variables() const {
  return RationalFunction(num_.collapse_variables(), den_.collapse_variables());
}

std::string RationalFunction::to_string() const {
  auto names = default_variable_names(nvars());
  return to_string(names);
}

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  if (den_.is_one()) return num_.to_string(names);
  auto wrap = [&](const LaurentPoly& p) {
    std::string s = p.to_string(names);
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

}  // namespace pbm
