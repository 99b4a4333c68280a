#include "pbm/spectral.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "pbm/errors.hpp"
#include "pbm/gassner.hpp"

namespace pbm {

namespace {

std::string weights_text(std::span<const int> k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
  return out + ")";
}

CycloNum unit(int d) { return CycloNum::root_power(d, 0); }

// Symbolic reduced image of a word, cached since twists are reused heavily.
const RFMatrix& symbolic_reduced(const BraidWord& w) {
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<int>>, RFMatrix> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(w.strands, w.letters);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, evaluate_word(w, Basis::reduced).matrix).first;
  return it->second;
}

// ---- arithmetic modulo a prime that splits completely in Q(w_d) ----

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  for (a %= p; e; e >>= 1, a = mulmod(a, a, p)) {
    if (e & 1) r = mulmod(r, a, p);
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  u64 dm = n - 1;
  int s = 0;
  while ((dm & 1) == 0) dm >>= 1, ++s;
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, dm, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

struct ModField {
  u64 p;
  u64 zeta;  // an element of exact order d
};

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Largest prime below 2^62 congruent to 1 mod d, skipping `skip` of them.
ModField mod_field(int d, int skip) {
  u64 p = (u64{1} << 62) - 1;
  p -= (p - 1) % static_cast<u64>(d);
  for (;; p -= static_cast<u64>(d)) {
    if (!is_prime(p)) continue;
    if (skip-- > 0) continue;
    break;
  }
  auto factors = prime_factors(d);
  for (u64 g = 2;; ++g) {
    u64 z = powmod(g, (p - 1) / static_cast<u64>(d), p);
    bool exact = d == 1 ? z == 1 : true;
    for (int q : factors) exact = exact && powmod(z, static_cast<u64>(d / q), p) != 1;
    if (exact) return {p, z};
  }
}

std::optional<u64> reduce_mod(const CycloNum& x, const ModField& f) {
  u64 den = mpz_fdiv_ui(x.denominator().get_mpz_t(), f.p);
  if (den == 0) return std::nullopt;
  u64 acc = 0, zp = 1;
  for (const auto& c : x.numerators()) {
    acc = (acc + mulmod(mpz_fdiv_ui(c.get_mpz_t(), f.p), zp, f.p)) % f.p;
    zp = mulmod(zp, f.zeta, f.p);
  }
  return mulmod(acc, powmod(den, f.p - 2, f.p), f.p);
}

using ModVec = std::vector<u64>;

ModVec mod_product(const ModVec& a, const ModVec& b, std::size_t n, u64 p) {
  ModVec out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      u64 x = a[i * n + k];
      if (!x) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] = (out[i * n + j] + mulmod(x, b[k * n + j], p)) % p;
    }
  }
  return out;
}

// Incremental echelon basis: each stored row has a 1 at its pivot and zeros
// at the pivots of earlier rows.
struct ModEchelon {
  u64 p;
  std::vector<ModVec> rows;
  std::vector<std::size_t> pivots;

  bool insert(ModVec x) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      u64 f = x[pivots[r]];
      if (!f) continue;
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (rows[r][j]) x[j] = (x[j] + p - mulmod(f, rows[r][j], p)) % p;
      }
    }
    auto it = std::find_if(x.begin(), x.end(), [](u64 v) { return v != 0; });
    if (it == x.end()) return false;
    auto c = static_cast<std::size_t>(it - x.begin());
    u64 inv = powmod(x[c], p - 2, p);
    for (auto& v : x) v = mulmod(v, inv, p);
    rows.push_back(std::move(x));
    pivots.push_back(c);
    return true;
  }
};

struct ModClosure {
  std::vector<std::pair<int, int>> words;  // (generator, parent basis index); (-1, -1) is the identity
  std::vector<std::size_t> pivots;
};

std::optional<ModClosure> modular_closure(const SpecializedRep& rep, const ModField& f) {
  auto n = static_cast<std::size_t>(rep.dimension());
  std::vector<ModVec> gens;
  for (const auto& g : rep.generators) {
    ModVec v(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto x = reduce_mod(g.matrix(i, j), f);
        if (!x) return std::nullopt;
        v[i * n + j] = *x;
      }
    }
    gens.push_back(std::move(v));
  }
  ModEchelon ech{f.p, {}, {}};
  std::vector<ModVec> basis;
  ModClosure out;
  ModVec id(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  ech.insert(id);
  basis.push_back(id);
  out.words.emplace_back(-1, -1);
  std::size_t cap = 2 * n * n;
  std::vector<std::size_t> length{0};
  for (std::size_t b = 0; b < basis.size() && basis.size() < n * n; ++b) {
    if (length[b] >= cap) break;
    for (std::size_t g = 0; g < gens.size() && basis.size() < n * n; ++g) {
      ModVec cand = mod_product(gens[g], basis[b], n, f.p);
      if (ech.insert(cand)) {
        basis.push_back(std::move(cand));
        out.words.emplace_back(static_cast<int>(g), static_cast<int>(b));
        length.push_back(length[b] + 1);
      }
    }
  }
  out.pivots = ech.pivots;
  return out;
}

// Exact check that the span of the given basis words is stable under left
// multiplication by every generator. The pivot coordinates come from the
// modular echelon form, so the basis restricted to them is invertible over
// Q(w) as well.
bool certify_closure(const SpecializedRep& rep, const ModClosure& mc) {
  auto n = static_cast<std::size_t>(rep.dimension());
  std::size_t r = mc.words.size();
  CycloNum one = unit(rep.d);
  std::vector<CycloMatrix> words;
  for (const auto& [g, parent] : mc.words) {
    if (g < 0) {
      words.push_back(CycloMatrix::identity(n, one));
    } else {
      words.push_back(rep.generators[static_cast<std::size_t>(g)].matrix * words[static_cast<std::size_t>(parent)]);
    }
  }
  std::vector<bool> is_pivot(n * n, false);
  for (auto c : mc.pivots) is_pivot[c] = true;
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < n * n; ++c) {
    if (!is_pivot[c]) rest.push_back(c);
  }
  auto coord = [n](const CycloMatrix& m, std::size_t c) -> const CycloNum& { return m(c / n, c % n); };
  CycloMatrix s(r, r, zero_like(one));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) s(a, b) = coord(words[b], mc.pivots[a]);
  }
  CycloMatrix w_rest(rest.size(), r, zero_like(one));
  for (std::size_t q = 0; q < rest.size(); ++q) {
    for (std::size_t b = 0; b < r; ++b) w_rest(q, b) = coord(words[b], rest[q]);
  }
  CycloMatrix t = w_rest * inverse(s);
  for (const auto& w : words) {
    for (const auto& g : rep.generators) {
      CycloMatrix x = g.matrix * w;
      std::vector<CycloNum> xs;
      for (auto c : mc.pivots) xs.push_back(coord(x, c));
      auto predicted = t.apply(xs);
      for (std::size_t q = 0; q < rest.size(); ++q) {
        if (!(predicted[q] == coord(x, rest[q]))) return false;
      }
    }
  }
  return true;
}

std::vector<mpq_class> flatten(const CycloMatrix& m) {
  std::vector<mpq_class> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto c = m(i, j).coefficients();
      out.insert(out.end(), c.begin(), c.end());
    }
  }
  return out;
}

int rational_rank(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty()) return 0;
  std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

bool block_unipotent(const CycloMatrix& y, const std::vector<int>& block) {
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      int bi = block[i], bj = block[j];
      if (bi > bj && !y(i, j).is_zero()) return false;
      if (bi == bj && (i == j ? !y(i, j).is_one() : !y(i, j).is_zero())) return false;
    }
  }
  return true;
}

// Columns w, eps_2, ..., eps_{dim}, with w = sum_{i<p} (1 - pi_i) eps_i.
CycloMatrix flag_basis(int p, int dim, int d, std::span<const int> k) {
  CycloNum one = unit(d);
  auto n = static_cast<std::size_t>(dim);
  CycloMatrix b = CycloMatrix::identity(n, one);
  long sum = 0;
  for (int i = 1; i < p; ++i) {
    sum += k[static_cast<std::size_t>(i - 1)];
    b(static_cast<std::size_t>(i - 1), 0) = one - CycloNum::root_power(d, sum);
  }
  return b;
}

void check_prefix(int p, int d, std::span<const int> k) {
  long sum = std::accumulate(k.begin(), k.begin() + p, 0L);
  require(sum % d == 0, "d=" + std::to_string(d) + " does not divide k_1+...+k_" + std::to_string(p) + " for k=" +
                            weights_text(k));
}

CycloMatrix commutator(const CycloMatrix& g, const CycloMatrix& c) { return g * c * inverse(g) * inverse(c); }

}  // namespace

void validate_cover_weights(int d, std::span<const int> k) {
  require(d >= 2, "cover order d must be at least 2, got " + std::to_string(d));
  for (int x : k) {
    require(1 <= x && x <= d - 1, "weight " + std::to_string(x) + " outside 1.." + std::to_string(d - 1));
  }
  check_weights(d, k);
}

const CycloMatrix& SpecializedRep::generator(int r, int s) const {
  for (const auto& g : generators) {
    if (g.r == r && g.s == s) return g.matrix;
  }
  throw ValidationError("no generator A_{" + std::to_string(r) + "," + std::to_string(s) + "}");
}

CycloMatrix specialize_matrix(const RFMatrix& m, int d, std::span<const int> k) {
  return m.map([&](const RationalFunction& x) { return specialize(x, d, k); });
}

SpecializedRep specialize_rep(int strands, int d, std::span<const int> k) {
  require(strands >= 2, "the specialized representation needs at least 2 strands, got " + std::to_string(strands));
  require(static_cast<int>(k.size()) == strands,
          "weight count " + std::to_string(k.size()) + " does not match strand count " + std::to_string(strands));
  validate_cover_weights(d, k);
  SpecializedRep rep;
  rep.strands = strands;
  rep.d = d;
  rep.k.assign(k.begin(), k.end());
  for (const auto& g : pure_generator_matrices(strands, Basis::reduced)) {
    rep.generators.push_back({g.r, g.s, specialize_matrix(g.matrix, d, k)});
  }
  return rep;
}

CycloMatrix specialized_word(const BraidWord& w, int d, std::span<const int> k) {
  require(is_pure(w), "specialization needs a pure braid, got '" + w.to_string() + "'");
  require(static_cast<int>(k.size()) == w.strands, "weight count does not match strand count");
  validate_cover_weights(d, k);
  return specialize_matrix(symbolic_reduced(w), d, k);
}

CycloNum central_scalar(int d, std::span<const int> k) {
  return CycloNum::root_power(d, std::accumulate(k.begin(), k.end(), 0L));
}

Blocks pigeonhole_blocks(int d, std::span<const int> k) {
  require(static_cast<int>(k.size()) >= 2 * d + 1,
          "pigeonhole blocks need n >= 2d, i.e. at least " + std::to_string(2 * d + 1) + " weights, got " +
              std::to_string(k.size()));
  validate_cover_weights(d, k);
  auto window = [&](int start) {
    std::vector<int> seen(static_cast<std::size_t>(d), -1);
    int sum = 0;
    seen[0] = start - 1;
    for (int j = start; j < start + d; ++j) {
      sum = (sum + k[static_cast<std::size_t>(j - 1)]) % d;
      int& prev = seen[static_cast<std::size_t>(sum)];
      if (prev >= 0) return Interval{prev + 1, j};
      prev = j;
    }
    throw InvariantViolation("no repeated prefix sum in a window of length d");
  };
  Blocks b{window(1), window(d + 1)};
  for (auto iv : {b.I, b.J}) {
    long s = 0;
    for (int i = iv.first; i <= iv.last; ++i) s += k[static_cast<std::size_t>(i - 1)];
    ensure(s % d == 0, "block product is not 1");
  }
  return b;
}

UnipotentCommutator unipotent_commutator(int p, int d, std::span<const int> k) {
  require(p >= 3, "the commutator needs p >= 3, got " + std::to_string(p));
  require(static_cast<int>(k.size()) == p,
          "expected " + std::to_string(p) + " weights, got " + std::to_string(k.size()));
  validate_cover_weights(d, k);
  check_prefix(p, d, k);
  CycloMatrix g = specialized_word(BraidWord(p, {1, 1}), d, k);
  CycloMatrix c = specialized_word(power(full_twist(2, p, p), 2), d, k);
  UnipotentCommutator out;
  out.twist_scalar = CycloNum::root_power(d, std::accumulate(k.begin() + 1, k.end(), 0L));
  for (std::size_t col = 1; col < c.cols(); ++col) {
    for (std::size_t row = 0; row < c.rows(); ++row) {
      const CycloNum& x = c(row, col);
      ensure(row == col ? x == out.twist_scalar : x.is_zero(), "the sub-twist is not scalar on eps_2..eps_{p-1}");
    }
  }
  out.u = commutator(g, c);
  CycloMatrix b = flag_basis(p, p - 1, d, k);
  out.u_flag = inverse(b) * out.u * b;
  out.off_diagonal = out.u_flag(0, 1);
  CycloMatrix id = CycloMatrix::identity(out.u.rows(), unit(d));
  ensure(!out.u.is_identity(), "the commutator is trivial");
  ensure(((out.u - id) * (out.u - id)).is_zero(), "the commutator is not unipotent of step 2");
  return out;
}

FlagCheck flag_unipotency_check(int p, int d, std::span<const int> k, std::uint64_t seed) {
  require(p >= 3, "the flag check needs p >= 3, got " + std::to_string(p));
  require(static_cast<int>(k.size()) == p + 1,
          "expected " + std::to_string(p + 1) + " weights, got " + std::to_string(k.size()));
  validate_cover_weights(d, k);
  check_prefix(p, d, k);
  int strands = p + 1;
  CycloMatrix g = specialized_word(BraidWord(strands, {1, 1}), d, k);
  CycloMatrix c = specialized_word(power(full_twist(2, p, strands), 2), d, k);
  CycloMatrix u = commutator(g, c);
  CycloMatrix b = flag_basis(p, p, d, k);
  CycloMatrix b_inv = inverse(b);
  std::vector<int> block(static_cast<std::size_t>(p), 1);
  block.front() = 0;
  block.back() = 2;

  SpecializedRep rep = specialize_rep(strands, d, k);
  std::vector<std::pair<CycloMatrix, CycloMatrix>> letters;
  for (const auto& gen : rep.generators) {
    if (gen.r >= 2 && gen.s <= p) letters.emplace_back(gen.matrix, inverse(gen.matrix));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::uniform_int_distribution<int> length(1, 10);
  std::bernoulli_distribution sign(0.5);

  FlagCheck out;
  out.unipotent = true;
  CycloMatrix id = CycloMatrix::identity(u.rows(), unit(d));
  std::vector<std::vector<mpq_class>> samples;
  auto check = [&](const CycloMatrix& x) {
    out.unipotent = out.unipotent && block_unipotent(b_inv * x * b, block);
    samples.push_back(flatten(x - id));
  };
  check(u);
  for (int trial = 0; trial < 20; ++trial) {
    CycloMatrix x = id, x_inv = id;
    for (int i = length(rng); i > 0; --i) {
      const auto& [m, m_inv] = letters[pick(rng)];
      bool positive = sign(rng);
      x = x * (positive ? m : m_inv);
      x_inv = (positive ? m_inv : m) * x_inv;
    }
    check(x * u * x_inv);
    ++out.conjugates;
  }
  out.sampled_lattice_rank = rational_rank(std::move(samples));
  return out;
}

int exact_span_dimension(const SpecializedRep& rep) {
  auto n = static_cast<std::size_t>(rep.dimension());
  CycloNum one = unit(rep.d);
  std::vector<CycloMatrix> basis{CycloMatrix::identity(n, one)};
  std::vector<std::vector<CycloNum>> rows;
  std::vector<std::size_t> pivots;
  auto insert = [&](const CycloMatrix& m) {
    std::vector<CycloNum> x;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x.push_back(m(i, j));
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (x[pivots[r]].is_zero()) continue;
      CycloNum f = x[pivots[r]];
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (!rows[r][j].is_zero()) x[j] -= f * rows[r][j];
      }
    }
    auto it = std::find_if(x.begin(), x.end(), [](const CycloNum& v) { return !v.is_zero(); });
    if (it == x.end()) return false;
    auto c = static_cast<std::size_t>(it - x.begin());
    CycloNum inv = x[c].inverse();
    for (auto& v : x) {
      if (!v.is_zero()) v *= inv;
    }
    rows.push_back(std::move(x));
    pivots.push_back(c);
    return true;
  };
  insert(basis.front());
  std::vector<std::size_t> length{0};
  for (std::size_t b = 0; b < basis.size() && basis.size() < n * n; ++b) {
    if (length[b] >= 2 * n * n) break;
    for (const auto& g : rep.generators) {
      CycloMatrix cand = g.matrix * basis[b];
      if (insert(cand)) {
        basis.push_back(std::move(cand));
        length.push_back(length[b] + 1);
        if (basis.size() == n * n) break;
      }
    }
  }
  return static_cast<int>(basis.size());
}

Burnside burnside_irreducibility(const SpecializedRep& rep) {
  auto n = rep.dimension();
  Burnside out;
  for (int attempt = 0; attempt < 2 && !out.modular_certificate; ++attempt) {
    auto mc = modular_closure(rep, mod_field(rep.d, attempt));
    if (!mc) continue;
    auto dim = static_cast<int>(mc->words.size());
    // Independence modulo a prime implies independence over Q(w), so a full
    // modular span is already a proof.
    if (dim == n * n || certify_closure(rep, *mc)) {
      out.span_dim = dim;
      out.modular_certificate = true;
    }
  }
  if (!out.modular_certificate) out.span_dim = exact_span_dimension(rep);
  out.irreducible = out.span_dim == n * n;
  return out;
}

std::vector<std::vector<CycloNum>> fixed_vectors(const SpecializedRep& rep) {
  auto n = static_cast<std::size_t>(rep.dimension());
  CycloNum one = unit(rep.d);
  CycloMatrix stacked(n * rep.generators.size(), n, zero_like(one));
  for (std::size_t g = 0; g < rep.generators.size(); ++g) {
    const auto& m = rep.generators[g].matrix;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) stacked(g * n + i, j) = i == j ? m(i, j) - one : m(i, j);
    }
  }
  return fraction_free_kernel(std::move(stacked));
}

SpectralReport spectral_report(int strands, int d, std::span<const int> k) {
  SpecializedRep rep = specialize_rep(strands, d, k);
  SpectralReport out;
  out.degenerate = is_degenerate(d, k);
  out.burnside = burnside_irreducibility(rep);
  out.fixed_dim = fixed_vectors(rep).size();
  out.central_scalar = central_scalar(d, k);
  CycloMatrix twist = specialized_word(power(full_twist(1, strands, strands), 2), d, k);
  out.central_scalar_verified = twist == out.central_scalar * CycloMatrix::identity(twist.rows(), unit(d));
  ensure(out.central_scalar_verified, "the squared full twist is not the scalar t_1...t_{n+1}");
  for (int p = 3; p <= strands && !out.unipotent_found; ++p) {
    long sum = std::accumulate(k.begin(), k.begin() + p, 0L);
    if (sum % d != 0) continue;
    auto uc = unipotent_commutator(p, d, k.first(static_cast<std::size_t>(p)));
    out.unipotent_found = !uc.u.is_identity();
    out.unipotent_p = p;
  }
  if (strands - 1 >= 2 * d) out.blocks = pigeonhole_blocks(d, k);
  return out;
}

}  // namespace pbm
