#include "pbm/gassner.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <tuple>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

RationalFunction var(int strands, int i, int power = 1) {
  return RationalFunction(LaurentPoly::variable(strands, i - 1, power));
}

RationalFunction constant(int strands, long c) { return RationalFunction::constant(strands, c); }

void check_generator(int i, int strands) {
  require(strands >= 2, "a braid needs at least 2 strands");
  require(1 <= i && i <= strands - 1,
          "generator index " + std::to_string(i) + " outside 1.." + std::to_string(strands - 1));
}

}  // namespace

Basis parse_basis(const std::string& name) {
  if (name == "reduced") return Basis::reduced;
  if (name == "unreduced") return Basis::unreduced;
  throw ValidationError("basis must be 'reduced' or 'unreduced', got '" + name + "'");
}

std::string to_string(Basis basis) { return basis == Basis::reduced ? "reduced" : "unreduced"; }

int basis_dimension(int strands, Basis basis) { return basis == Basis::reduced ? strands - 1 : strands; }

TwistedMap TwistedMap::identity(int strands, Basis basis) {
  auto n = static_cast<std::size_t>(basis_dimension(strands, basis));
  return {Permutation::identity(strands), RFMatrix::identity(n, RationalFunction(strands))};
}

RFMatrix permute_entries(const Permutation& sigma, const RFMatrix& m) {
  if (sigma.is_identity()) return m;
  return m.map([&](const RationalFunction& x) { return x.permute_variables(sigma.images); });
}

TwistedMap compose(const TwistedMap& g, const TwistedMap& h) {
  return {pbm::compose(g.perm, h.perm), g.matrix * permute_entries(g.perm, h.matrix)};
}

TwistedMap inverse(const TwistedMap& g) {
  Permutation inv = g.perm.inverse();
  return {inv, permute_entries(inv, pbm::inverse(g.matrix))};
}

TwistedMap reduced_generator(int i, int strands) {
  check_generator(i, strands);
  require(strands >= 2, "reduced basis needs at least 2 strands");
  TwistedMap t = TwistedMap::identity(strands, Basis::reduced);
  t.perm = Permutation::transposition(strands, i - 1, i);
  auto c = static_cast<std::size_t>(i - 1);
  std::size_t n = t.matrix.rows();
  RationalFunction xi = var(strands, i);
  t.matrix(c, c) = -xi;
  if (c >= 1) t.matrix(c, c - 1) = xi;
  if (c + 1 < n) t.matrix(c, c + 1) = constant(strands, 1);
  return t;
}

TwistedMap unreduced_generator(int i, int strands) {
  check_generator(i, strands);
  TwistedMap t = TwistedMap::identity(strands, Basis::unreduced);
  t.perm = Permutation::transposition(strands, i - 1, i);
  auto c = static_cast<std::size_t>(i - 1);
  t.matrix(c, c) = constant(strands, 1) - var(strands, i + 1);
  t.matrix(c + 1, c) = var(strands, i);
  t.matrix(c, c + 1) = constant(strands, 1);
  t.matrix(c + 1, c + 1) = constant(strands, 0);
  return t;
}

TwistedMap generator_map(int letter, int strands, Basis basis) {
  static std::mutex lock;
  static std::map<std::tuple<int, int, Basis>, TwistedMap> cache;
  auto key = std::make_tuple(letter, strands, basis);
  {
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  int i = std::abs(letter);
  require(letter != 0, "generator index 0 is not allowed");
  TwistedMap g = basis == Basis::reduced ? reduced_generator(i, strands) : unreduced_generator(i, strands);
  if (letter < 0) g = inverse(g);
  std::lock_guard<std::mutex> guard(lock);
  cache.emplace(key, g);
  return g;
}

TwistedMap evaluate_word(const BraidWord& w, Basis basis) {
  TwistedMap acc = TwistedMap::identity(w.strands, basis);
  for (int letter : w.letters) acc = compose(acc, generator_map(letter, w.strands, basis));
  if (basis == Basis::reduced && acc.perm.is_identity()) {
    for (std::size_t i = 0; i < acc.matrix.rows(); ++i) {
      for (std::size_t j = 0; j < acc.matrix.cols(); ++j) {
        ensure(acc.matrix(i, j).is_laurent(), "pure braid '" + w.to_string() + "' has a non-Laurent reduced entry");
      }
    }
  }
  return acc;
}

RFMatrix closed_form_pure_generator(int r, int s, int strands) {
  require(1 <= r && r < s && s <= strands, "closed-form A_{rs} needs 1 <= r < s <= strands");
  auto n = static_cast<std::size_t>(strands);
  RFMatrix m = RFMatrix::identity(n, RationalFunction(strands));
  RationalFunction one = constant(strands, 1);
  RationalFunction xr = var(strands, r), xs = var(strands, s);
  auto R = static_cast<std::size_t>(r - 1), S = static_cast<std::size_t>(s - 1);
  // Column r: (1 - X_r + X_r X_s) e_r + X_r (1 - X_r) e_s.
  m(R, R) = one - xr + xr * xs;
  m(S, R) = xr * (one - xr);
  // Column s: (1 - X_s) e_r + X_r e_s.
  m(R, S) = one - xs;
  m(S, S) = xr;
  // Columns r < i < s: e_i + (1 - X_i)((1 - X_s) e_r - (1 - X_r) e_s).
  for (int i = r + 1; i < s; ++i) {
    auto I = static_cast<std::size_t>(i - 1);
    RationalFunction c = one - var(strands, i);
    m(R, I) = c * (one - xs);
    m(S, I) = -(c * (one - xr));
  }
  return m;
}

std::vector<LaurentPoly> partial_products(int strands) {
  std::vector<LaurentPoly> out;
  LaurentPoly acc = LaurentPoly::constant(strands, 1);
  for (int i = 0; i < strands; ++i) {
    acc *= LaurentPoly::variable(strands, i);
    out.push_back(acc);
  }
  return out;
}

InvariantVectors invariant_vectors(int strands) {
  require(strands >= 2, "invariant vectors need at least 2 strands");
  InvariantVectors out;
  LaurentPoly one = LaurentPoly::constant(strands, 1);
  LaurentPoly acc = one;
  for (int i = 0; i < strands; ++i) {
    out.unreduced.emplace_back(acc);
    acc *= LaurentPoly::variable(strands, i);
  }
  auto pi = partial_products(strands);
  for (int i = 0; i + 1 < strands; ++i) out.reduced.emplace_back(one - pi[static_cast<std::size_t>(i)]);
  return out;
}

RFMatrix basis_change_e_to_eps(int strands) {
  require(strands >= 2, "basis change needs at least 2 strands");
  auto n = static_cast<std::size_t>(strands);
  RFMatrix p(n, n, RationalFunction(strands));
  // e_i = (1 - X_i) v_i and v_i = eps_i + ... + eps_n + v_{n+1}.
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunction c = constant(strands, 1) - var(strands, static_cast<int>(i) + 1);
    for (std::size_t j = i; j < n; ++j) p(j, i) = c;
  }
  return p;
}

RFMatrix burau_specialize(const TwistedMap& m) {
  return m.matrix.map([](const RationalFunction& x) { return x.collapse_variables(); });
}

std::vector<PureGeneratorMatrix> pure_generator_matrices(int strands, Basis basis) {
  static std::mutex lock;
  static std::map<std::pair<int, Basis>, std::vector<PureGeneratorMatrix>> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find({strands, basis});
    if (it != cache.end()) return it->second;
  }
  std::vector<PureGeneratorMatrix> out;
  for (int r = 1; r <= strands; ++r) {
    for (int s = r + 1; s <= strands; ++s) {
      out.push_back({r, s, evaluate_word(pure_generator(r, s, strands), basis).matrix});
    }
  }
  std::lock_guard<std::mutex> guard(lock);
  cache.emplace(std::make_pair(strands, basis), out);
  return out;
}

}  // namespace pbm
