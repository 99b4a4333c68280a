#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pbm/laurent.hpp"
#include "pbm/rational_function.hpp"

namespace pbm {

// Q(w) with w a primitive d-th root of unity, in the power basis 1, w, ...,
// w^{phi(d)-1}. Instances are cached and shared; they never change after
// construction.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(int d);

  int order() const { return d_; }
  int degree() const { return phi_; }
  // Coefficients of the monic polynomial Phi_d, lowest degree first.
  const std::vector<mpz_class>& modulus() const { return modulus_; }
  // Integer coordinates of w^j for 0 <= j < d.
  const std::vector<mpz_class>& power(int j) const { return powers_[static_cast<std::size_t>(j)]; }

  explicit CyclotomicField(int d);

 private:
  int d_;
  int phi_;
  std::vector<mpz_class> modulus_;
  std::vector<std::vector<mpz_class>> powers_;
};

std::vector<mpz_class> cyclotomic_polynomial(int d);
int euler_phi(int n);

// Exact element of Q(w_d): numerators over a common positive denominator,
// with gcd(numerators, denominator) = 1.
class CycloNum {
 public:
  CycloNum() = default;
  explicit CycloNum(int d);
  CycloNum(std::shared_ptr<const CyclotomicField> field, const mpq_class& c);
  CycloNum(std::shared_ptr<const CyclotomicField> field, std::span<const mpq_class> coeffs);

  static CycloNum root_power(int d, long j);
  static CycloNum root_power(std::shared_ptr<const CyclotomicField> field, long j);

  int order() const { return field_->order(); }
  const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
  std::vector<mpq_class> coefficients() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& rhs);
  CycloNum& operator-=(const CycloNum& rhs);
  CycloNum& operator*=(const CycloNum& rhs);
  CycloNum& operator/=(const CycloNum& rhs);
  CycloNum inverse() const;
  CycloNum pow(long k) const;

  // Complex conjugation w -> w^{-1}.
  CycloNum involute() const;
  // The automorphism w -> w^f, gcd(f, d) = 1.
  CycloNum galois(int f) const;
  // Value at w = exp(2 pi i f / d), gcd(f, d) = 1.
  std::complex<double> embed(int f) const;

  std::string to_string() const;

  friend bool operator==(const CycloNum& a, const CycloNum& b);

 private:
  CycloNum(std::shared_ptr<const CyclotomicField> field, std::vector<mpz_class> num, mpz_class den);
  void normalize();
  void check_field(const CycloNum& rhs) const;
  // Reduces an integer polynomial of any degree modulo Phi_d.
  std::vector<mpz_class> reduce(const std::vector<mpz_class>& poly) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

CycloNum operator+(CycloNum a, const CycloNum& b);
CycloNum operator-(CycloNum a, const CycloNum& b);
CycloNum operator*(CycloNum a, const CycloNum& b);
CycloNum operator/(CycloNum a, const CycloNum& b);

// Ring homomorphism X_i -> w_d^{k_i}. The weights must be coprime to d and
// match the variable count.
CycloNum specialize(const LaurentPoly& a, int d, std::span<const int> k);
// Throws ValidationError naming the denominator when it vanishes.
CycloNum specialize(const RationalFunction& a, int d, std::span<const int> k);

void check_weights(int d, std::span<const int> k);

}  // namespace pbm
