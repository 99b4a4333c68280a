#include "pbm/topology.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "pbm/cyclotomic.hpp"
#include "pbm/errors.hpp"

namespace pbm {

extern const char* const kWitnessTableJson;

namespace {

std::vector<int> divisors_from_two(int d) {
  std::vector<int> out;
  for (int e = 2; e <= d; ++e) {
    if (d % e == 0) out.push_back(e);
  }
  return out;
}

mpq_class fractional_part(const mpq_class& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - q;
}

std::vector<mpq_class> mu_values(const CoverSpec& spec, int f) {
  std::vector<mpq_class> out;
  for (int x : spec.k) {
    mpq_class mu = fractional_part(mpq_class(static_cast<long>(x) * f, spec.d));
    mu.canonicalize();
    ensure(mu >= 0 && mu < 1, "mu outside [0, 1)");
    out.push_back(mu);
  }
  return out;
}

bool is_integer(const mpq_class& x) { return x.get_den() == 1; }

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

long CoverSpec::weight_sum() const { return std::accumulate(k.begin(), k.end(), 0L); }

void validate(const CoverSpec& spec) {
  require(spec.d >= 2, "cover order d must be at least 2, got " + std::to_string(spec.d));
  require(spec.k.size() >= 2, "a cover needs at least 2 branch points (n >= 1), got " + std::to_string(spec.k.size()));
  for (int x : spec.k) {
    require(1 <= x && x <= spec.d - 1,
            "weight " + std::to_string(x) + " outside 1.." + std::to_string(spec.d - 1));
    require(std::gcd(x, spec.d) == 1,
            "weight " + std::to_string(x) + " is not coprime to d=" + std::to_string(spec.d));
  }
}

KernelRanks kernel_ranks(const CoverSpec& spec) {
  validate(spec);
  long n = spec.n(), d = spec.d;
  KernelRanks r{1 + n * d, n + 1, n * (d - 1)};
  ensure(r.free_rank == r.invariant_dim + r.ni_dim, "1 + nd differs from (n+1) + n(d-1)");
  return r;
}

DecompositionReport homology_decomposition(const CoverSpec& spec) {
  validate(spec);
  DecompositionReport out;
  int n = spec.n();
  long sum = spec.weight_sum();
  for (int e : divisors_from_two(spec.d)) {
    DivisorPart part;
    part.e = e;
    part.delta = sum % e == 0 ? 1 : 0;
    // Second route to the same predicate: t_1...t_{n+1} = 1 in Q(w_e).
    CycloNum prod = CycloNum::root_power(e, 0);
    for (int x : spec.k) prod *= CycloNum::root_power(e, x);
    ensure(prod.is_one() == (part.delta == 1),
           "divisibility and specialization disagree on the product of the t_i");
    part.gassner_dim = n;
    part.reduced_bar_dim = n - part.delta;
    part.q_dim = static_cast<long>(euler_phi(e)) * part.reduced_bar_dim;
    out.closed_dim += part.q_dim;
    out.per_divisor.push_back(part);
  }
  out.open_ni_dim = static_cast<long>(n) * (spec.d - 1);
  ensure(out.closed_dim % 2 == 0, "closed homology dimension is odd");
  out.genus = out.closed_dim / 2;
  return out;
}

long genus_riemann_hurwitz(const CoverSpec& spec) {
  validate(spec);
  long d = spec.d, points = spec.n() + 1;
  long r = std::gcd(spec.weight_sum(), d);
  long euler = 2 * d - points * (d - 1) - (d - r);
  ensure(euler % 2 == 0, "Riemann-Hurwitz gives a non-integral genus");
  long g = (2 - euler) / 2;
  ensure(g >= 0, "Riemann-Hurwitz gives a negative genus");
  return g;
}

DMReport dm_report(const CoverSpec& spec, int f) {
  validate(spec);
  require(std::gcd(f, spec.d) == 1,
          "embedding index f=" + std::to_string(f) + " is not coprime to d=" + std::to_string(spec.d));
  DMReport out;
  out.d = spec.d;
  out.f = f;
  out.mu = mu_values(spec, f);
  out.mu_inf = 2 - std::accumulate(out.mu.begin(), out.mu.end(), mpq_class(0));
  out.mu_inf_pos = out.mu_inf > 0;
  out.all_sum_lt1 = true;
  out.all_values_ok = true;
  auto add = [&](int i, int j, const mpq_class& a, const mpq_class& b, bool same_weight) {
    PairCondition c;
    c.i = i;
    c.j = j;
    c.sum = a + b;
    c.sum_lt1 = c.sum < 1;
    c.half_integer_test = same_weight;
    mpq_class gap = 1 - c.sum;
    if (gap != 0) {
      c.value = 1 / gap;
      c.value_ok = same_weight ? is_integer(2 * *c.value) : is_integer(*c.value);
    }
    out.all_sum_lt1 = out.all_sum_lt1 && c.sum_lt1;
    out.all_values_ok = out.all_values_ok && c.value_ok;
    out.pairs.push_back(std::move(c));
  };
  auto count = static_cast<int>(spec.k.size());
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      add(i + 1, j + 1, out.mu[static_cast<std::size_t>(i)], out.mu[static_cast<std::size_t>(j)],
          spec.k[static_cast<std::size_t>(i)] == spec.k[static_cast<std::size_t>(j)]);
    }
  }
  for (int i = 0; i < count; ++i) add(i + 1, kInfinity, out.mu[static_cast<std::size_t>(i)], out.mu_inf, false);
  return out;
}

bool dm_regime_bound(const CoverSpec& spec, int f) {
  validate(spec);
  require(std::gcd(f, spec.d) == 1,
          "embedding index f=" + std::to_string(f) + " is not coprime to d=" + std::to_string(spec.d));
  auto mu = mu_values(spec, f);
  bool positive = 2 - std::accumulate(mu.begin(), mu.end(), mpq_class(0)) > 0;
  if (positive) ensure(spec.n() <= 2 * spec.d - 1, "mu_inf > 0 but n > 2d - 1");
  return positive;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::arithmetic_by_main_theorem:
      return "ARITHMETIC_BY_MAIN_THEOREM";
    case Verdict::nonarithmetic_known_witness:
      return "NONARITHMETIC_KNOWN_WITNESS";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

const std::vector<Witness>& witness_table() {
  static const std::vector<Witness> table = [] {
    std::vector<Witness> out;
    auto doc = nlohmann::json::parse(kWitnessTableJson);
    for (const auto& w : doc.at("witnesses")) {
      Witness x;
      x.id = w.at("id").get<std::string>();
      x.d = w.at("d").get<int>();
      x.matchable = w.at("matchable").get<bool>();
      x.note = w.value("note", "");
      if (w.contains("k")) x.k = w.at("k").get<std::vector<int>>();
      if (x.matchable) {
        CoverSpec spec{x.d, x.k};
        validate(spec);
        ensure(spec.n() < 2 * spec.d, "witness " + x.id + " overlaps the arithmetic range n >= 2d");
      }
      out.push_back(std::move(x));
    }
    return out;
  }();
  return table;
}

Classification classify(const CoverSpec& spec) {
  validate(spec);
  Classification out;
  bool arithmetic = spec.n() >= 2 * spec.d;
  const Witness* match = nullptr;
  for (const auto& w : witness_table()) {
    if (w.matchable && w.d == spec.d && sorted(w.k) == sorted(spec.k)) match = &w;
  }
  ensure(!(arithmetic && match), "spec is both in the arithmetic range and a listed witness");
  if (arithmetic) {
    out.verdict = Verdict::arithmetic_by_main_theorem;
    out.reason = "n=" + std::to_string(spec.n()) + " >= 2d=" + std::to_string(2 * spec.d);
    return out;
  }
  if (match) {
    out.verdict = Verdict::nonarithmetic_known_witness;
    out.witness_id = match->id;
    out.reason = match->note;
    return out;
  }
  out.verdict = Verdict::inconclusive;
  out.reason = "n=" + std::to_string(spec.n()) + " < 2d=" + std::to_string(2 * spec.d) + " and no listed witness";
  for (int e : divisors_from_two(spec.d)) {
    CoverSpec level{e, {}};
    for (int x : spec.k) level.k.push_back(x % e);
    for (int f = 1; f < e; ++f) {
      if (std::gcd(f, e) == 1) out.dm.push_back(dm_report(level, f));
    }
  }
  return out;
}

}  // namespace pbm
