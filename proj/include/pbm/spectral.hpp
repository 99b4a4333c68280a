#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbm/cyclotomic.hpp"
#include "pbm/hermitian.hpp"
#include "pbm/matrix.hpp"

namespace pbm {

// Reduced Gassner representation of P_{n+1} at X_i -> w_d^{k_i}.
struct SpecializedRep {
  struct Generator {
    int r;
    int s;
    CycloMatrix matrix;
  };

  int strands = 0;
  int d = 0;
  std::vector<int> k;
  std::vector<Generator> generators;  // A_{rs} in (r, s) order

  int dimension() const { return strands - 1; }
  const CycloMatrix& generator(int r, int s) const;
};

// Weights must satisfy 1 <= k_i <= d-1 and gcd(k_i, d) = 1.
void validate_cover_weights(int d, std::span<const int> k);

SpecializedRep specialize_rep(int strands, int d, std::span<const int> k);
CycloMatrix specialize_matrix(const RFMatrix& m, int d, std::span<const int> k);
CycloMatrix specialized_word(const BraidWord& w, int d, std::span<const int> k);
// t_1 ... t_{n+1}.
CycloNum central_scalar(int d, std::span<const int> k);

struct Interval {
  int first = 0;  // 1-based, inclusive
  int last = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Blocks {
  Interval I;
  Interval J;
};

// Consecutive blocks I in {1..d}, J in {d+1..2d} with unit products, found by
// the first repeated prefix sum of the weights mod d in each window.
Blocks pigeonhole_blocks(int d, std::span<const int> k);

struct UnipotentCommutator {
  CycloMatrix u;            // [rho(s_1^2), rho(D'^2)] on the p-strand representation
  CycloMatrix u_flag;       // the same map in the basis (w, eps_2, ..., eps_{p-1})
  CycloNum twist_scalar;    // c = t_2 ... t_p
  CycloNum off_diagonal;    // u_flag[0][1]
};

// Needs p >= 3, k of length p and d | k_1 + ... + k_p.
UnipotentCommutator unipotent_commutator(int p, int d, std::span<const int> k);

struct FlagCheck {
  bool unipotent = false;
  int conjugates = 0;
  int sampled_lattice_rank = 0;
};

// On p+1 strands (k of length p+1, d | k_1 + ... + k_p): u and 20 seeded
// conjugates by random words in the A_{rs}, 2 <= r < s <= p, are unipotent
// for the flag span(w) ⊂ span(w, eps_2..eps_{p-1}) ⊂ V.
FlagCheck flag_unipotency_check(int p, int d, std::span<const int> k, std::uint64_t seed = 0);

struct Burnside {
  int span_dim = 0;
  bool irreducible = false;
  // True when span_dim was decided by the modular certificate rather than a
  // full closure over Q(w).
  bool modular_certificate = false;
};

Burnside burnside_irreducibility(const SpecializedRep& rep);
// Plain closure over Q(w) with incremental row reduction; used as a fallback
// and as an independent oracle in tests.
int exact_span_dimension(const SpecializedRep& rep);

// Basis of the common fixed space of all generators, by fraction-free
// elimination over Q(w).
std::vector<std::vector<CycloNum>> fixed_vectors(const SpecializedRep& rep);

struct SpectralReport {
  bool degenerate = false;
  Burnside burnside;
  std::size_t fixed_dim = 0;
  CycloNum central_scalar;
  bool central_scalar_verified = false;
  bool unipotent_found = false;
  std::optional<int> unipotent_p;
  std::optional<Blocks> blocks;
};

SpectralReport spectral_report(int strands, int d, std::span<const int> k);

}  // namespace pbm
