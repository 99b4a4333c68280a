#include "pbm/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

// Exact quotient of integer polynomials, divisor monic.
std::vector<mpz_class> divide_monic(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  std::size_t db = b.size() - 1;
  std::vector<mpz_class> q(a.size() - db);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = a[i + db];
    if (q[i] == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i + j] -= q[i] * b[j];
  }
  for (std::size_t i = 0; i < db; ++i) ensure(a[i] == 0, "cyclotomic quotient is not exact");
  return q;
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

int euler_phi(int n) {
  require(n >= 1, "euler_phi needs a positive argument");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<mpz_class> cyclotomic_polynomial(int d) {
  require(d >= 1, "cyclotomic order must be positive");
  std::vector<mpz_class> p(static_cast<std::size_t>(d) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(d)] = 1;
  for (int e = 1; e < d; ++e) {
    if (d % e == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(e));
  }
  return p;
}

CyclotomicField::CyclotomicField(int d) : d_(d), phi_(euler_phi(d)), modulus_(cyclotomic_polynomial(d)) {
  auto n = static_cast<std::size_t>(phi_);
  powers_.reserve(static_cast<std::size_t>(d));
  std::vector<mpz_class> cur(n, 0);
  cur[0] = 1;
  for (int j = 0; j < d; ++j) {
    powers_.push_back(cur);
    // Multiply by w: shift up and fold the top coefficient back through Phi_d.
    mpz_class top = cur[n - 1];
    for (std::size_t i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < n; ++i) cur[i] -= top * modulus_[i];
    }
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int d) {
  require(d >= 1, "cyclotomic order must be positive, got " + std::to_string(d));
  static std::mutex lock;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<const CyclotomicField>(d);
  cache.emplace(d, field);
  return field;
}

// ---------------------------------------------------------------- CycloNum

CycloNum::CycloNum(int d) : CycloNum(CyclotomicField::get(d), mpq_class(0)) {}

CycloNum::CycloNum(std::shared_ptr<const CyclotomicField> field, const mpq_class& c)
    : field_(std::move(field)), num_(static_cast<std::size_t>(field_->degree()), 0), den_(c.get_den()) {
  num_[0] = c.get_num();
}

CycloNum::CycloNum(std::shared_ptr<const CyclotomicField> field, std::span<const mpq_class> coeffs)
    : field_(std::move(field)) {
  require(coeffs.size() == static_cast<std::size_t>(field_->degree()),
          "cyclotomic coefficient count must equal phi(d)");
  den_ = 1;
  for (const auto& c : coeffs) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), c.get_den_mpz_t());
  num_.reserve(coeffs.size());
  for (const auto& c : coeffs) num_.push_back(c.get_num() * (den_ / c.get_den()));
  normalize();
}

CycloNum::CycloNum(std::shared_ptr<const CyclotomicField> field, std::vector<mpz_class> num, mpz_class den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

CycloNum CycloNum::root_power(int d, long j) { return root_power(CyclotomicField::get(d), j); }

CycloNum CycloNum::root_power(std::shared_ptr<const CyclotomicField> field, long j) {
  int d = field->order();
  std::vector<mpz_class> num = field->power(static_cast<int>(mod(j, d)));
  return CycloNum(std::move(field), std::move(num), 1);
}

void CycloNum::normalize() {
  ensure(den_ != 0, "cyclotomic number with zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& c : num_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

void CycloNum::check_field(const CycloNum& rhs) const {
  require(field_ && rhs.field_, "uninitialized cyclotomic number");
  if (field_ != rhs.field_) {
    throw ValidationError("cyclotomic order mismatch: " + std::to_string(order()) + " vs " +
                          std::to_string(rhs.order()));
  }
}

std::vector<mpz_class> CycloNum::reduce(const std::vector<mpz_class>& poly) const {
  auto n = static_cast<std::size_t>(field_->degree());
  int d = field_->order();
  std::vector<mpz_class> out(n, 0);
  for (std::size_t j = 0; j < poly.size(); ++j) {
    if (poly[j] == 0) continue;
    if (j < n) {
      out[j] += poly[j];
      continue;
    }
    const auto& p = field_->power(static_cast<int>(j % static_cast<std::size_t>(d)));
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] != 0) out[i] += poly[j] * p[i];
    }
  }
  return out;
}

std::vector<mpq_class> CycloNum::coefficients() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (const auto& c : num_) {
    mpq_class q(c, den_);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

bool CycloNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return c == 0; });
}

bool CycloNum::is_one() const { return is_rational() && num_[0] == den_; }

bool CycloNum::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return c == 0; });
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& rhs) {
  check_field(rhs);
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * rhs.den_ + rhs.num_[i] * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& rhs) { return *this += -rhs; }

CycloNum& CycloNum::operator*=(const CycloNum& rhs) {
  check_field(rhs);
  std::size_t n = num_.size();
  std::vector<mpz_class> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (rhs.num_[j] != 0) prod[i + j] += num_[i] * rhs.num_[j];
    }
  }
  num_ = reduce(prod);
  den_ *= rhs.den_;
  normalize();
  return *this;
}

CycloNum& CycloNum::operator/=(const CycloNum& rhs) { return *this *= rhs.inverse(); }

// Solves x * a = 1 as a linear system over Q in the power basis.
CycloNum CycloNum::inverse() const {
  require(field_ != nullptr, "uninitialized cyclotomic number");
  require(!is_zero(), "inverse of zero cyclotomic number");
  std::size_t n = num_.size();
  if (is_rational()) {
    mpq_class c(num_[0], den_);
    c.canonicalize();
    return CycloNum(field_, mpq_class(1 / c));
  }
  // Column j of the multiplication matrix is a * w^j.
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1, 0));
  std::vector<mpz_class> shifted(2 * n - 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(shifted.begin(), shifted.end(), 0);
    for (std::size_t i = 0; i < n; ++i) shifted[i + j] = num_[i];
    auto col = reduce(shifted);
    for (std::size_t i = 0; i < n; ++i) m[i][j] = mpq_class(col[i], den_);
  }
  m[0][n] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    ensure(piv < n, "multiplication matrix of a nonzero cyclotomic number is singular");
    std::swap(m[c], m[piv]);
    for (std::size_t j = c + 1; j <= n; ++j) m[c][j] /= m[c][c];
    m[c][c] = 1;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (std::size_t j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return CycloNum(field_, x);
}

CycloNum CycloNum::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  CycloNum result(field_, mpq_class(1));
  CycloNum base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

CycloNum CycloNum::galois(int f) const {
  require(field_ != nullptr, "uninitialized cyclotomic number");
  int d = order();
  require(std::gcd(f, d) == 1, "Galois exponent " + std::to_string(f) + " is not coprime to " + std::to_string(d));
  std::vector<mpz_class> spread(static_cast<std::size_t>(d), 0);
  for (std::size_t j = 0; j < num_.size(); ++j) {
    spread[static_cast<std::size_t>(mod(static_cast<long>(j) * f, d))] += num_[j];
  }
  return CycloNum(field_, reduce(spread), den_);
}

CycloNum CycloNum::involute() const { return galois(order() == 1 ? 1 : order() - 1); }

std::complex<double> CycloNum::embed(int f) const {
  require(field_ != nullptr, "uninitialized cyclotomic number");
  int d = order();
  require(std::gcd(f, d) == 1, "embedding index " + std::to_string(f) + " is not coprime to " + std::to_string(d));
  std::complex<double> sum = 0;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    mpq_class c(num_[j], den_);
    c.canonicalize();
    double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(static_cast<long>(j) * f, d)) / d;
    sum += c.get_d() * std::polar(1.0, angle);
  }
  return sum;
}

std::string CycloNum::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto coeffs = coefficients();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const mpq_class& c = coeffs[j];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      out << a.get_str();
      continue;
    }
    if (a != 1) out << a.get_str() << "*";
    out << "w";
    if (j > 1) out << "^" << j;
  }
  if (first) out << "0";
  out << " (mod Phi_" << order() << ")";
  return out.str();
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  return a.field_ == b.field_ && a.den_ == b.den_ && a.num_ == b.num_;
}

CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }

void check_weights(int d, std::span<const int> k) {
  require(d >= 1, "order d must be positive, got " + std::to_string(d));
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (std::gcd(k[i], d) != 1) {
      throw ValidationError("weight k" + std::to_string(i + 1) + "=" + std::to_string(k[i]) +
                            " is not coprime to d=" + std::to_string(d));
    }
  }
}

CycloNum specialize(const LaurentPoly& a, int d, std::span<const int> k) {
  check_weights(d, k);
  require(static_cast<int>(k.size()) == a.nvars(),
          "weight count " + std::to_string(k.size()) + " does not match variable count " +
              std::to_string(a.nvars()));
  auto field = CyclotomicField::get(d);
  std::vector<mpz_class> buckets(static_cast<std::size_t>(d), 0);
  for (const auto& t : a.terms()) {
    long e = 0;
    for (int v = 0; v < a.nvars(); ++v) e += static_cast<long>(t.mono[v]) * k[static_cast<std::size_t>(v)];
    buckets[static_cast<std::size_t>(mod(e, d))] += t.coeff;
  }
  auto n = static_cast<std::size_t>(field->degree());
  std::vector<mpz_class> out(n, 0);
  for (int j = 0; j < d; ++j) {
    const mpz_class& c = buckets[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    const auto& p = field->power(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] != 0) out[i] += c * p[i];
    }
  }
  std::vector<mpq_class> q(out.begin(), out.end());
  return CycloNum(field, q);
}

CycloNum specialize(const RationalFunction& a, int d, std::span<const int> k) {
  CycloNum den = specialize(a.denominator(), d, k);
  if (den.is_zero()) {
    throw ValidationError("denominator " + a.denominator().to_string() + " vanishes at the specialization");
  }
  CycloNum num = specialize(a.numerator(), d, k);
  if (den.is_one()) return num;
  return num / den;
}

}  // namespace pbm
