#include <numeric>
#include <random>

#include "doctest.h"
#include "pbm/errors.hpp"
#include "pbm/spectral.hpp"

using namespace pbm;

namespace {

std::vector<int> random_weights(std::mt19937_64& rng, int d, int count) {
  std::vector<int> k;
  while (static_cast<int>(k.size()) < count) {
    int c = std::uniform_int_distribution<int>(1, d - 1)(rng);
    if (std::gcd(c, d) == 1) k.push_back(c);
  }
  return k;
}

CycloNum w(int d, long j = 1) { return CycloNum::root_power(d, j); }

// Brute force: every pair of consecutive intervals inside the window whose
// weights sum to 0 mod d, ordered by right end then by left end descending.
Interval brute_block(int d, const std::vector<int>& k, int start) {
  for (int last = start; last < start + d; ++last) {
    for (int first = last; first >= start; --first) {
      long s = 0;
      for (int i = first; i <= last; ++i) s += k[static_cast<std::size_t>(i - 1)];
      if (s % d == 0) return {first, last};
    }
  }
  return {};
}

}  // namespace

TEST_CASE("specialized representation validation") {
  std::vector<int> k{1, 1, 1};
  CHECK_NOTHROW(specialize_rep(3, 3, k));
  std::vector<int> short_k{1, 1};
  CHECK_THROWS_AS(specialize_rep(3, 3, short_k), ValidationError);
  CHECK_THROWS_AS(specialize_rep(1, 3, std::vector<int>{1}), ValidationError);
  std::vector<int> not_coprime{2, 1, 1, 1};
  CHECK_THROWS_AS(specialize_rep(4, 4, not_coprime), ValidationError);
  std::vector<int> zero{0, 1, 1};
  CHECK_THROWS_AS(specialize_rep(3, 3, zero), ValidationError);
  CHECK_THROWS_AS(specialize_rep(3, 1, k), ValidationError);
  CHECK(specialize_rep(4, 5, std::vector<int>{1, 2, 3, 4}).generators.size() == 6);
}

TEST_CASE("equal weights agree with the Burau specialization") {
  for (int strands = 3; strands <= 5; ++strands) {
    for (int d = 2; d <= 7; ++d) {
      std::vector<int> ones(static_cast<std::size_t>(strands), 1);
      std::vector<int> single{1};
      auto rep = specialize_rep(strands, d, ones);
      for (const auto& g : rep.generators) {
        auto burau = burau_specialize(evaluate_word(pure_generator(g.r, g.s, strands), Basis::reduced));
        REQUIRE(burau.map([&](const RationalFunction& x) { return specialize(x, d, single); }) == g.matrix);
      }
    }
  }
}

TEST_CASE("specialized matrices preserve the specialized form") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int d = std::uniform_int_distribution<int>(2, 9)(rng);
    int strands = std::uniform_int_distribution<int>(3, 5)(rng);
    auto k = random_weights(rng, d, strands);
    auto h = specialize_form(strands, d, k);
    for (const auto& g : specialize_rep(strands, d, k).generators) REQUIRE(g.matrix.adjoint() * h * g.matrix == h);
  }
}

TEST_CASE("central scalar") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    int d = std::uniform_int_distribution<int>(2, 9)(rng);
    int strands = std::uniform_int_distribution<int>(3, 5)(rng);
    auto k = random_weights(rng, d, strands);
    auto twist = specialized_word(power(full_twist(1, strands, strands), 2), d, k);
    REQUIRE(twist == central_scalar(d, k) * CycloMatrix::identity(twist.rows(), w(d, 0)));
  }
}

TEST_CASE("pigeonhole blocks") {
  std::vector<int> k1(7, 1);
  auto b1 = pigeonhole_blocks(3, k1);
  CHECK(b1.I == Interval{1, 3});
  CHECK(b1.J == Interval{4, 6});
  std::vector<int> k2(5, 1);
  auto b2 = pigeonhole_blocks(2, k2);
  CHECK(b2.I == Interval{1, 2});
  CHECK(b2.J == Interval{3, 4});
  std::vector<int> k3{1, 2, 2, 2, 1, 1, 2};
  auto b3 = pigeonhole_blocks(3, k3);
  CHECK(b3.I == Interval{1, 2});
  CHECK(b3.J == Interval{4, 5});
  std::vector<int> too_short(6, 1);
  CHECK_THROWS_AS(pigeonhole_blocks(3, too_short), ValidationError);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    int d = std::uniform_int_distribution<int>(2, 12)(rng);
    int extra = std::uniform_int_distribution<int>(0, 3)(rng);
    auto k = random_weights(rng, d, 2 * d + 1 + extra);
    auto b = pigeonhole_blocks(d, k);
    REQUIRE(b.I == brute_block(d, k, 1));
    REQUIRE(b.J == brute_block(d, k, d + 1));
    REQUIRE(b.I.last < b.J.first);
    REQUIRE(b.J.last <= 2 * d);
  }
}

TEST_CASE("unipotent commutator") {
  std::vector<int> k{1, 1, 1};
  auto uc = unipotent_commutator(3, 3, k);
  CHECK_FALSE(uc.u.is_identity());
  CHECK(uc.off_diagonal == w(3) * (w(3, 0) - w(3)));
  CHECK(uc.twist_scalar == w(3, 2));
  // Closed form of the corner entry: (1 - c^{-1}) / (t_1 t_2).
  CHECK(uc.off_diagonal == (w(3, 0) - uc.twist_scalar.inverse()) / w(3, 2));

  std::vector<int> k4{1, 1, 1, 1};
  auto u2 = unipotent_commutator(4, 2, k4);
  auto id = CycloMatrix::identity(3, w(2, 0));
  CHECK_FALSE(u2.u.is_identity());
  CHECK(((u2.u - id) * (u2.u - id)).is_zero());

  std::vector<int> bad{1, 1, 2};
  CHECK_THROWS_AS(unipotent_commutator(3, 3, bad), ValidationError);
  std::vector<int> two{1, 1};
  CHECK_THROWS_AS(unipotent_commutator(2, 2, two), ValidationError);

  for (int d = 2; d <= 6; ++d) {
    for (int p = 3; p <= 5; ++p) {
      std::mt19937_64 rng(static_cast<unsigned>(100 * d + p));
      for (int trial = 0; trial < 30; ++trial) {
        auto kk = random_weights(rng, d, p);
        if (std::accumulate(kk.begin(), kk.end(), 0) % d != 0) continue;
        auto r = unipotent_commutator(p, d, kk);
        auto one = CycloMatrix::identity(static_cast<std::size_t>(p - 1), w(d, 0));
        REQUIRE(((r.u - one) * (r.u - one)).is_zero());
        REQUIRE(r.off_diagonal == (w(d, 0) - r.twist_scalar.inverse()) / (w(d, kk[0]) * w(d, kk[1])));
      }
    }
  }
}

TEST_CASE("flag unipotency") {
  std::vector<int> k1{1, 1, 1, 1};
  auto f1 = flag_unipotency_check(3, 3, k1);
  CHECK(f1.unipotent);
  CHECK(f1.conjugates == 20);
  CHECK(f1.sampled_lattice_rank >= 1);
  std::vector<int> k2{1, 1, 1, 1, 1};
  CHECK(flag_unipotency_check(4, 4, k2).unipotent);
  CHECK(flag_unipotency_check(4, 4, k2, 7).unipotent);
  std::vector<int> bad{1, 1, 2, 1};
  CHECK_THROWS_AS(flag_unipotency_check(3, 3, bad), ValidationError);
  // Same seed, same samples.
  CHECK(flag_unipotency_check(3, 3, k1, 5).sampled_lattice_rank ==
        flag_unipotency_check(3, 3, k1, 5).sampled_lattice_rank);
}

TEST_CASE("burnside closure and fixed vectors") {
  std::vector<int> k111{1, 1, 1}, k112{1, 1, 2};
  auto reducible = burnside_irreducibility(specialize_rep(3, 3, k111));
  CHECK_FALSE(reducible.irreducible);
  CHECK(reducible.span_dim == 3);
  CHECK(burnside_irreducibility(specialize_rep(3, 3, k112)).irreducible);

  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    int d = std::uniform_int_distribution<int>(2, 7)(rng);
    int strands = std::uniform_int_distribution<int>(3, 5)(rng);
    auto k = random_weights(rng, d, strands);
    if (trial % 2 == 0) {
      // Force a degenerate tuple by adjusting the last weight.
      long s = std::accumulate(k.begin(), k.end() - 1, 0L);
      int last = static_cast<int>((d - s % d) % d);
      if (last == 0 || std::gcd(last, d) != 1) continue;
      k.back() = last;
    }
    auto rep = specialize_rep(strands, d, k);
    auto b = burnside_irreducibility(rep);
    REQUIRE(b.span_dim == exact_span_dimension(rep));
    auto fixed = fixed_vectors(rep);
    bool degenerate = is_degenerate(d, k);
    REQUIRE(degenerate == !b.irreducible);
    REQUIRE(degenerate == !fixed.empty());
    for (const auto& v : fixed) {
      for (const auto& g : rep.generators) REQUIRE(g.matrix.apply(v) == v);
    }
  }
}

TEST_CASE("spectral report") {
  std::vector<int> k{1, 1, 1, 1, 1, 1, 1};
  auto r = spectral_report(7, 3, k);
  CHECK(r.degenerate == false);
  CHECK(r.burnside.irreducible);
  CHECK(r.central_scalar_verified);
  CHECK(r.central_scalar == w(3, 7));
  CHECK(r.unipotent_found);
  CHECK(r.unipotent_p == 3);
  REQUIRE(r.blocks.has_value());
  CHECK(r.blocks->I == Interval{1, 3});

  std::vector<int> k2{1, 1, 2};
  auto r2 = spectral_report(3, 3, k2);
  CHECK_FALSE(r2.unipotent_found);
  CHECK_FALSE(r2.blocks.has_value());
}
