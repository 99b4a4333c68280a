#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace pbm {

// Cyclic cover y^d = prod (x - a_i)^{k_i} branched at n+1 points.
struct CoverSpec {
  int d = 2;
  std::vector<int> k;

  int n() const { return static_cast<int>(k.size()) - 1; }
  long weight_sum() const;
};

// n >= 1, d >= 2, 1 <= k_i <= d-1 and gcd(k_i, d) = 1.
void validate(const CoverSpec& spec);

struct KernelRanks {
  long free_rank = 0;      // 1 + nd
  long invariant_dim = 0;  // n + 1
  long ni_dim = 0;         // n(d - 1)
};

KernelRanks kernel_ranks(const CoverSpec& spec);

struct DivisorPart {
  int e = 0;
  int delta = 0;  // 1 when e divides the weight sum
  int gassner_dim = 0;
  int reduced_bar_dim = 0;
  long q_dim = 0;
};

struct DecompositionReport {
  std::vector<DivisorPart> per_divisor;  // divisors e >= 2 of d, increasing
  long open_ni_dim = 0;
  long closed_dim = 0;
  long genus = 0;
};

DecompositionReport homology_decomposition(const CoverSpec& spec);

// Independent oracle: total ramification over each a_i and gcd(sum k, d)
// points over infinity.
long genus_riemann_hurwitz(const CoverSpec& spec);

// Index 0 stands for the point at infinity in pair conditions.
inline constexpr int kInfinity = 0;

struct PairCondition {
  int i = 0;  // 1-based, i < j, or j == kInfinity
  int j = 0;
  mpq_class sum;
  bool sum_lt1 = false;
  bool half_integer_test = false;  // k_i == k_j
  std::optional<mpq_class> value;  // 1 / (1 - mu_i - mu_j) when defined
  bool value_ok = false;
};

struct DMReport {
  int d = 0;
  int f = 0;
  std::vector<mpq_class> mu;
  mpq_class mu_inf;
  bool mu_inf_pos = false;
  bool all_sum_lt1 = false;
  bool all_values_ok = false;
  std::vector<PairCondition> pairs;
};

DMReport dm_report(const CoverSpec& spec, int f);

// True iff mu_inf > 0; in that case n <= 2d - 1 is asserted.
bool dm_regime_bound(const CoverSpec& spec, int f);

enum class Verdict { arithmetic_by_main_theorem, nonarithmetic_known_witness, inconclusive };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  std::optional<std::string> witness_id;
  std::vector<DMReport> dm;  // all divisors e >= 2 of d, all f coprime to e
};

Classification classify(const CoverSpec& spec);

struct Witness {
  std::string id;
  int d = 0;
  std::vector<int> k;
  bool matchable = false;
  std::string note;
};

const std::vector<Witness>& witness_table();

}  // namespace pbm
