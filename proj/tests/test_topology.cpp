#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "pbm/errors.hpp"
#include "pbm/topology.hpp"

using namespace pbm;

namespace {

CoverSpec random_spec(std::mt19937_64& rng, int max_d, int max_n) {
  CoverSpec s;
  s.d = std::uniform_int_distribution<int>(2, max_d)(rng);
  int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  while (static_cast<int>(s.k.size()) < n + 1) {
    int c = std::uniform_int_distribution<int>(1, s.d - 1)(rng);
    if (std::gcd(c, s.d) == 1) s.k.push_back(c);
  }
  return s;
}

// Euler characteristic count done point by point: each a_i has one preimage,
// infinity has gcd(sum k, d) preimages, everything else has d.
long genus_by_points(const CoverSpec& s) {
  long branch = static_cast<long>(s.k.size()) + 1;
  long preimages = static_cast<long>(s.k.size()) + std::gcd(s.weight_sum(), static_cast<long>(s.d));
  long euler = s.d * (2 - branch) + preimages;
  return (2 - euler) / 2;
}

}  // namespace

TEST_CASE("cover spec validation") {
  CHECK_NOTHROW(validate(CoverSpec{3, {1, 2}}));
  CHECK_THROWS_AS(validate(CoverSpec{1, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(validate(CoverSpec{4, {2, 1}}), ValidationError);
  CHECK_THROWS_AS(validate(CoverSpec{4, {1}}), ValidationError);
  CHECK_THROWS_AS(validate(CoverSpec{4, {1, 5}}), ValidationError);
}

TEST_CASE("kernel ranks") {
  auto r = kernel_ranks(CoverSpec{2, {1, 1, 1, 1}});
  CHECK(r.free_rank == 7);
  CHECK(r.invariant_dim == 4);
  CHECK(r.ni_dim == 3);
  r = kernel_ranks(CoverSpec{3, {1, 1, 1}});
  CHECK(r.free_rank == 7);
  CHECK(r.invariant_dim == 3);
  CHECK(r.ni_dim == 4);
  r = kernel_ranks(CoverSpec{2, {1, 1}});
  CHECK(r.free_rank == 3);
  CHECK(r.invariant_dim == 2);
  CHECK(r.ni_dim == 1);
  for (int d = 2; d <= 20; ++d) {
    for (int n = 1; n <= 20; ++n) {
      auto x = kernel_ranks(CoverSpec{d, std::vector<int>(static_cast<std::size_t>(n + 1), 1)});
      REQUIRE(x.free_rank == x.invariant_dim + x.ni_dim);
    }
  }
}

TEST_CASE("homology decomposition examples") {
  auto a = homology_decomposition(CoverSpec{2, {1, 1, 1, 1}});
  REQUIRE(a.per_divisor.size() == 1);
  CHECK(a.per_divisor[0].q_dim == 2);
  CHECK(a.genus == 1);
  CHECK(a.open_ni_dim == 3);

  auto b = homology_decomposition(CoverSpec{4, {1, 1, 1}});
  REQUIRE(b.per_divisor.size() == 2);
  CHECK(b.per_divisor[0].e == 2);
  CHECK(b.per_divisor[0].delta == 0);
  CHECK(b.per_divisor[0].q_dim == 2);
  CHECK(b.per_divisor[1].e == 4);
  CHECK(b.per_divisor[1].q_dim == 4);
  CHECK(b.genus == 3);

  auto c = homology_decomposition(CoverSpec{3, {1, 1, 1}});
  CHECK(c.per_divisor[0].delta == 1);
  CHECK(c.per_divisor[0].q_dim == 2);
  CHECK(c.genus == 1);

  auto e = homology_decomposition(CoverSpec{18, {1, 1, 1, 1}});
  CHECK(e.genus == 25);
  CHECK(e.per_divisor.size() == 5);
}

TEST_CASE("Riemann-Hurwitz genus") {
  CHECK(genus_riemann_hurwitz(CoverSpec{2, {1, 1, 1, 1}}) == 1);
  CHECK(genus_riemann_hurwitz(CoverSpec{3, {1, 1, 1}}) == 1);
  CHECK(genus_riemann_hurwitz(CoverSpec{4, {1, 1, 1}}) == 3);
  CHECK(genus_riemann_hurwitz(CoverSpec{18, {1, 1, 1, 1}}) == 25);
  CHECK(genus_riemann_hurwitz(CoverSpec{2, {1, 1}}) == 0);

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 500; ++trial) {
    auto s = random_spec(rng, 10, 12);
    long g = genus_riemann_hurwitz(s);
    REQUIRE(g == homology_decomposition(s).genus);
    REQUIRE(g == genus_by_points(s));
  }
}

TEST_CASE("DM report for the 18-fold example") {
  auto r = dm_report(CoverSpec{18, {1, 1, 1, 1}}, 7);
  for (const auto& m : r.mu) CHECK(m == mpq_class(7, 18));
  CHECK(r.mu_inf == mpq_class(4, 9));  // 8/18
  CHECK(r.mu_inf_pos);
  CHECK(r.all_sum_lt1);
  CHECK(r.all_values_ok);
  REQUIRE(r.pairs.size() == 6 + 4);
  for (const auto& p : r.pairs) {
    REQUIRE(p.value.has_value());
    if (p.j == kInfinity) {
      CHECK_FALSE(p.half_integer_test);
      CHECK(*p.value == 6);
    } else {
      CHECK(p.half_integer_test);
      CHECK(*p.value == mpq_class(9, 2));
    }
  }
  CHECK_THROWS_AS(dm_report(CoverSpec{18, {1, 1, 1, 1}}, 3), ValidationError);
}

TEST_CASE("DM report edge values") {
  // mu_1 + mu_2 = 1 leaves the value undefined.
  auto r = dm_report(CoverSpec{2, {1, 1, 1}}, 1);
  CHECK(r.mu_inf == mpq_class(1, 2));
  CHECK_FALSE(r.pairs[0].value.has_value());
  CHECK_FALSE(r.pairs[0].sum_lt1);
  CHECK_FALSE(r.all_values_ok);
  auto s = dm_report(CoverSpec{5, {1, 2}}, 2);
  CHECK(s.mu[0] == mpq_class(2, 5));
  CHECK(s.mu[1] == mpq_class(4, 5));
  CHECK_FALSE(s.pairs[0].half_integer_test);
}

TEST_CASE("DM regime bound") {
  CHECK(dm_regime_bound(CoverSpec{18, {1, 1, 1, 1}}, 7));
  CHECK_FALSE(dm_regime_bound(CoverSpec{3, std::vector<int>(7, 1)}, 1));
  CHECK(dm_regime_bound(CoverSpec{2, {1, 1, 1}}, 1));
  // Exhaustive over weight multisets (mu_inf ignores order) with n up to
  // 2d + 1; larger n only increases the sum of the mu_i.
  for (int d = 2; d <= 8; ++d) {
    std::vector<int> units;
    for (int c = 1; c < d; ++c) {
      if (std::gcd(c, d) == 1) units.push_back(c);
    }
    std::vector<int> k;
    long positive = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (k.size() >= 2) {
        CoverSpec s{d, k};
        for (int f = 1; f < d; ++f) {
          if (std::gcd(f, d) != 1) continue;
          if (dm_regime_bound(s, f)) {
            ++positive;
            REQUIRE(s.n() <= 2 * d - 1);
          }
        }
      }
      if (static_cast<int>(k.size()) == 2 * d + 2) return;
      for (std::size_t u = from; u < units.size(); ++u) {
        k.push_back(units[u]);
        rec(u);
        k.pop_back();
      }
    };
    rec(0);
    CHECK(positive > 0);
  }
}

TEST_CASE("classification") {
  CHECK(classify(CoverSpec{3, std::vector<int>(7, 1)}).verdict == Verdict::arithmetic_by_main_theorem);
  auto w = classify(CoverSpec{18, {1, 1, 1, 1}});
  CHECK(w.verdict == Verdict::nonarithmetic_known_witness);
  CHECK(w.witness_id == "y18-four-points");
  auto i = classify(CoverSpec{5, {1, 2, 3, 4, 1}});
  CHECK(i.verdict == Verdict::inconclusive);
  CHECK(i.dm.size() == 4);
  auto j = classify(CoverSpec{6, {1, 5, 5, 1}});
  // e = 2 (f = 1), e = 3 (f = 1, 2), e = 6 (f = 1, 5).
  CHECK(j.dm.size() == 5);
  CHECK(to_string(Verdict::inconclusive) == "INCONCLUSIVE");

  bool saw_lift = false;
  for (const auto& x : witness_table()) {
    if (x.matchable) CHECK(static_cast<int>(x.k.size()) - 1 < 2 * x.d);
    saw_lift = saw_lift || (x.d == 36 && !x.matchable);
  }
  CHECK(saw_lift);

  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = random_spec(rng, 8, 20);
    auto c = classify(s);
    REQUIRE((c.verdict == Verdict::arithmetic_by_main_theorem) == (s.n() >= 2 * s.d));
  }
}
