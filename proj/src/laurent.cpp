#include "pbm/laurent.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

std::int16_t checked_exponent(long value) {
  if (value < std::numeric_limits<std::int16_t>::min() ||
      value > std::numeric_limits<std::int16_t>::max()) {
    throw ValidationError("monomial exponent out of range: " + std::to_string(value));
  }
  return static_cast<std::int16_t>(value);
}

void check_var(int var) {
  require(var >= 0 && var < kMaxVariables,
          "variable index out of range: " + std::to_string(var));
}

void check_same_ring(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) {
    throw ValidationError("variable-count mismatch: " + std::to_string(a.nvars()) + " vs " +
                          std::to_string(b.nvars()));
  }
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial Monomial::unit(int var, int power) {
  Monomial m;
  m.set(var, power);
  return m;
}

void Monomial::set(int var, int exponent) {
  check_var(var);
  exps_[static_cast<std::size_t>(var)] = checked_exponent(exponent);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = checked_exponent(static_cast<long>(exps_[i]) + other.exps_[i]);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const { return *this * other.inverse(); }

Monomial Monomial::inverse() const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = checked_exponent(-static_cast<long>(exps_[i]));
  return r;
}

Monomial Monomial::pow(int k) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = checked_exponent(static_cast<long>(exps_[i]) * k);
  return r;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](std::int16_t e) { return e == 0; });
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= static_cast<std::uint16_t>(e);
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  require(nvars >= 0 && nvars <= kMaxVariables,
          "variable count must lie in 0.." + std::to_string(kMaxVariables));
}

LaurentPoly LaurentPoly::constant(int nvars, const mpz_class& c) {
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int var, int power) {
  require(var >= 0 && var < nvars, "variable index outside ring");
  return monomial(nvars, Monomial::unit(var, power));
}

LaurentPoly LaurentPoly::monomial(int nvars, const Monomial& m, const mpz_class& c) {
  LaurentPoly p(nvars);
  for (int v = nvars; v < kMaxVariables; ++v) require(m[v] == 0, "monomial uses a variable outside the ring");
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

LaurentPoly LaurentPoly::from_terms(int nvars, std::vector<Term> terms) {
  LaurentPoly p(nvars);
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void LaurentPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
  terms_ = std::move(merged);
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

mpz_class LaurentPoly::constant_term() const {
  for (const auto& t : terms_) {
    if (t.mono.is_one()) return t.coeff;
  }
  return 0;
}

Monomial LaurentPoly::min_exponents() const {
  Monomial m;
  if (terms_.empty()) return m;
  m = terms_[0].mono;
  for (const auto& t : terms_) {
    for (int v = 0; v < nvars_; ++v) m.set(v, std::min(m[v], t.mono[v]));
  }
  return m;
}

Monomial LaurentPoly::max_exponents() const {
  Monomial m;
  if (terms_.empty()) return m;
  m = terms_[0].mono;
  for (const auto& t : terms_) {
    for (int v = 0; v < nvars_; ++v) m.set(v, std::max(m[v], t.mono[v]));
  }
  return m;
}

int LaurentPoly::degree_in(int var) const {
  int d = std::numeric_limits<int>::min();
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return terms_.empty() ? 0 : d;
}

bool LaurentPoly::involves(int var) const {
  return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.mono[var] != 0; });
}

mpz_class LaurentPoly::integer_content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  check_same_ring(*this, rhs);
  if (rhs.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    if (j == rhs.terms_.size() || (i < terms_.size() && terms_[i].mono < rhs.terms_[j].mono)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || rhs.terms_[j].mono < terms_[i].mono) {
      out.push_back(rhs.terms_[j++]);
    } else {
      mpz_class c = terms_[i].coeff + rhs.terms_[j].coeff;
      if (c != 0) out.push_back({terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) { return *this += -rhs; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

LaurentPoly LaurentPoly::times(const Monomial& m, const mpz_class& c) const {
  LaurentPoly r(nvars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  // Multiplying by a monomial preserves lexicographic order.
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result = constant(nvars_, 1);
  LaurentPoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::divided_by(const mpz_class& c) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return r;
}

LaurentPoly LaurentPoly::involute() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.mono.inverse(), t.coeff});
  return from_terms(nvars_, std::move(out));
}

LaurentPoly LaurentPoly::permute_variables(std::span<const int> images) const {
  require(static_cast<int>(images.size()) == nvars_, "permutation size does not match variable count");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (int v = 0; v < nvars_; ++v) m.set(images[static_cast<std::size_t>(v)], t.mono[v]);
    out.push_back({m, t.coeff});
  }
  return from_terms(nvars_, std::move(out));
}

LaurentPoly LaurentPoly::collapse_variables() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    long total = 0;
    for (int v = 0; v < nvars_; ++v) total += t.mono[v];
    out.push_back({Monomial::unit(0, static_cast<int>(total)), t.coeff});
  }
  return from_terms(1, std::move(out));
}

std::vector<std::string> default_variable_names(int nvars) {
  std::vector<std::string> names;
  for (int v = 0; v < nvars; ++v) names.push_back("X" + std::to_string(v + 1));
  return names;
}

std::string LaurentPoly::to_string() const {
  auto names = default_variable_names(nvars_);
  return to_string(names);
}

std::string LaurentPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    std::string mono;
    for (int v = 0; v < nvars_; ++v) {
      int e = t.mono[v];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[static_cast<std::size_t>(v)];
      if (e != 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << "*" << mono;
    }
  }
  return os.str();
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.nvars());
  if (b.is_monomial()) return a.times(b.leading().mono, b.leading().coeff);
  if (a.is_monomial()) return b.times(a.leading().mono, a.leading().coeff);
  std::vector<LaurentPoly::Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  }
  return LaurentPoly::from_terms(a.nvars(), std::move(prod));
}

LaurentPoly operator*(LaurentPoly a, const mpz_class& c) { return a *= c; }
LaurentPoly operator*(const mpz_class& c, LaurentPoly a) { return a *= c; }

// ---------------------------------------------------------------- division

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_ring(a, b);
  require(!b.is_zero(), "division by the zero polynomial");
  const int n = a.nvars();
  if (a.is_zero()) return LaurentPoly(n);
  if (b.is_monomial()) {
    const auto& bt = b.leading();
    std::vector<LaurentPoly::Term> out;
    out.reserve(a.size());
    Monomial inv = bt.mono.inverse();
    for (const auto& t : a.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), bt.coeff.get_mpz_t())) return std::nullopt;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), bt.coeff.get_mpz_t());
      out.push_back({t.mono * inv, std::move(q)});
    }
    return LaurentPoly::from_terms(n, std::move(out));
  }
  // Exponent box any exact quotient must live in.
  const Monomial amin = a.min_exponents();
  const Monomial amax = a.max_exponents();
  const Monomial bmin = b.min_exponents();
  const Monomial bmax = b.max_exponents();
  for (int v = 0; v < n; ++v) {
    if (amax[v] - amin[v] < bmax[v] - bmin[v]) return std::nullopt;
  }
  const auto& blead = b.leading();
  LaurentPoly remainder = a;
  std::vector<LaurentPoly::Term> quotient;
  while (!remainder.is_zero()) {
    const auto& rl = remainder.leading();
    Monomial m = rl.mono / blead.mono;
    for (int v = 0; v < n; ++v) {
      if (m[v] < amin[v] - bmin[v] || m[v] > amax[v] - bmax[v]) return std::nullopt;
    }
    if (!mpz_divisible_p(rl.coeff.get_mpz_t(), blead.coeff.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), rl.coeff.get_mpz_t(), blead.coeff.get_mpz_t());
    remainder -= b.times(m, c);
    quotient.push_back({m, std::move(c)});
  }
  return LaurentPoly::from_terms(n, std::move(quotient));
}

// ---------------------------------------------------------------- gcd

namespace {

// Coefficients of p viewed as a polynomial in `var` (exponents must be >= 0).
std::vector<LaurentPoly> coefficients_in(const LaurentPoly& p, int var) {
  std::vector<std::vector<LaurentPoly::Term>> buckets(static_cast<std::size_t>(p.degree_in(var)) + 1);
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    int e = m[var];
    m.set(var, 0);
    buckets[static_cast<std::size_t>(e)].push_back({m, t.coeff});
  }
  std::vector<LaurentPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(LaurentPoly::from_terms(p.nvars(), std::move(b)));
  return out;
}

LaurentPoly make_positive(LaurentPoly p) {
  if (!p.is_zero() && p.leading().coeff < 0) p = -p;
  return p;
}

LaurentPoly strip_monomial(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  return p.times(p.min_exponents().inverse());
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly content_in(const LaurentPoly& p, int var) {
  LaurentPoly g(p.nvars());
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? make_positive(c) : poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

LaurentPoly primitive_part_in(const LaurentPoly& p, int var) {
  if (p.is_zero()) return p;
  LaurentPoly c = content_in(p, var);
  if (c.is_one()) return p;
  return *divide_exact(p, c);
}

// Sparse pseudo-remainder of a by b with respect to `var`.
LaurentPoly pseudo_remainder(LaurentPoly a, const LaurentPoly& b, int var) {
  const int db = b.degree_in(var);
  const LaurentPoly lcb = coefficients_in(b, var).back();
  while (!a.is_zero() && a.involves(var) && a.degree_in(var) >= db) {
    const int da = a.degree_in(var);
    const LaurentPoly lca = coefficients_in(a, var).back();
    a = lcb * a - (lca * b).times(Monomial::unit(var, da - db));
  }
  if (db == 0) return LaurentPoly(a.nvars());
  return a;
}

// gcd of polynomials with nonnegative exponents, up to sign.
LaurentPoly poly_gcd(const LaurentPoly& a_in, const LaurentPoly& b_in) {
  const int n = a_in.nvars();
  if (a_in.is_zero()) return make_positive(b_in);
  if (b_in.is_zero()) return make_positive(a_in);
  LaurentPoly a = make_positive(a_in);
  LaurentPoly b = make_positive(b_in);
  if (a == b) return a;
  if (a.is_constant() || b.is_constant()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.integer_content().get_mpz_t(), b.integer_content().get_mpz_t());
    return LaurentPoly::constant(n, g);
  }
  // A shared monomial factor is split off first so the recursion only sees
  // polynomials where every variable can be the main one.
  Monomial am = a.min_exponents();
  Monomial bm = b.min_exponents();
  Monomial common;
  bool has_common = false;
  for (int v = 0; v < n; ++v) {
    int e = std::min(am[v], bm[v]);
    common.set(v, e);
    has_common = has_common || e != 0;
  }
  if (has_common) {
    Monomial inv = common.inverse();
    return poly_gcd(a.times(inv), b.times(inv)).times(common);
  }

  int var = -1;
  for (int v = 0; v < n && var < 0; ++v) {
    if (a.involves(v) || b.involves(v)) var = v;
  }
  if (!a.involves(var)) return poly_gcd(a, content_in(b, var));
  if (!b.involves(var)) return poly_gcd(content_in(a, var), b);

  LaurentPoly ca = content_in(a, var);
  LaurentPoly cb = content_in(b, var);
  LaurentPoly c = poly_gcd(ca, cb);
  LaurentPoly pa = ca.is_one() ? a : *divide_exact(a, ca);
  LaurentPoly pb = cb.is_one() ? b : *divide_exact(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  // Trial division settles the common case where one divides the other.
  if (divide_exact(pa, pb).has_value()) return make_positive(c * pb);
  while (true) {
    LaurentPoly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (!r.involves(var)) {
      pb = LaurentPoly::constant(n, 1);
      break;
    }
    pa = std::move(pb);
    pb = make_positive(primitive_part_in(r, var));
  }
  return make_positive(c * primitive_part_in(pb, var));
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_ring(a, b);
  if (a.is_zero() && b.is_zero()) return LaurentPoly(a.nvars());
  LaurentPoly g = poly_gcd(strip_monomial(a), strip_monomial(b));
  return make_positive(strip_monomial(g));
}

}  // namespace pbm
