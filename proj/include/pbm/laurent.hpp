#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pbm {

// Upper bound on the number of variables X_1..X_m in one ring context.
inline constexpr int kMaxVariables = 16;

// Exponent vector of a Laurent monomial X_1^{a_1}...X_m^{a_m}. Slots beyond the
// ring's variable count are always zero, so comparison is plain lexicographic.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  static Monomial unit(int var, int power = 1);

  int operator[](int var) const { return exps_[static_cast<std::size_t>(var)]; }
  void set(int var, int exponent);

  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;
  Monomial inverse() const;
  Monomial pow(int k) const;

  bool is_one() const;
  std::size_t hash() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<std::int16_t, kMaxVariables> exps_;
};

// Element of Z[X_1^{±1},...,X_m^{±1}]. Terms are kept sorted by ascending
// lexicographic monomial order with no zero coefficients, so equal polynomials
// have identical term lists.
class LaurentPoly {
 public:
  struct Term {
    Monomial mono;
    mpz_class coeff;
  };

  LaurentPoly() = default;
  explicit LaurentPoly(int nvars);

  static LaurentPoly constant(int nvars, const mpz_class& c);
  static LaurentPoly variable(int nvars, int var, int power = 1);
  static LaurentPoly monomial(int nvars, const Monomial& m, const mpz_class& c = 1);
  static LaurentPoly from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }

  // Largest / smallest term in lexicographic order. Precondition: nonzero.
  const Term& leading() const { return terms_.back(); }
  const Term& trailing() const { return terms_.front(); }
  mpz_class constant_term() const;

  // Componentwise min / max exponent over all terms (zero polynomial -> 1).
  Monomial min_exponents() const;
  Monomial max_exponents() const;
  int degree_in(int var) const;
  bool involves(int var) const;
  mpz_class integer_content() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const mpz_class& c);
  LaurentPoly times(const Monomial& m, const mpz_class& c = 1) const;
  LaurentPoly pow(unsigned k) const;
  // Exact division of every coefficient by c. Precondition: c divides them.
  LaurentPoly divided_by(const mpz_class& c) const;

  // X_i -> X_i^{-1}.
  LaurentPoly involute() const;
  // X_j -> X_{images[j]} (0-based images, a permutation of 0..m-1).
  LaurentPoly permute_variables(std::span<const int> images) const;
  // Every X_i -> q, giving a polynomial in one variable.
  LaurentPoly collapse_variables() const;

  // Canonical text form, e.g. "1 - X1^2*X3^-1". One-variable polynomials in
  // a Burau context may pass the name "q" to print q-powers.
  std::string to_string() const;
  std::string to_string(std::span<const std::string> names) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  void canonicalize();

  int nvars_ = 0;
  std::vector<Term> terms_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(LaurentPoly a, const mpz_class& c);
LaurentPoly operator*(const mpz_class& c, LaurentPoly a);

// Exact quotient a / b if b divides a in the Laurent ring, otherwise nullopt.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

// Greatest common divisor up to units (signed monomials). The result has no
// negative exponents, no monomial factor and a positive leading coefficient.
// gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

std::vector<std::string> default_variable_names(int nvars);

}  // namespace pbm
