#pragma once

#include <string>
#include <vector>

#include "pbm/braid.hpp"
#include "pbm/matrix.hpp"
#include "pbm/rational_function.hpp"

namespace pbm {

enum class Basis { reduced, unreduced };

Basis parse_basis(const std::string& name);
std::string to_string(Basis basis);

using RFMatrix = Matrix<RationalFunction>;

// Crossed-homomorphism value (sigma, M). Composition follows
// rho(gh) = (sigma_g ∘ sigma_h, M_g · sigma_g(M_h)), where sigma acts on
// entries by X_j -> X_{sigma(j)}. For a pure braid sigma is trivial and M is
// an honest R-linear matrix acting on column coordinate vectors.
struct TwistedMap {
  Permutation perm;
  RFMatrix matrix;

  static TwistedMap identity(int strands, Basis basis);
  friend bool operator==(const TwistedMap&, const TwistedMap&) = default;
};

RFMatrix permute_entries(const Permutation& sigma, const RFMatrix& m);
TwistedMap compose(const TwistedMap& g, const TwistedMap& h);
TwistedMap inverse(const TwistedMap& g);

int basis_dimension(int strands, Basis basis);

// s_i on the epsilon basis (n x n, n = strands - 1).
TwistedMap reduced_generator(int i, int strands);
// s_i on the e basis ((n+1) x (n+1)).
TwistedMap unreduced_generator(int i, int strands);
// Signed letter: +i is s_i, -i is s_i^{-1}.
TwistedMap generator_map(int letter, int strands, Basis basis);

TwistedMap evaluate_word(const BraidWord& w, Basis basis);

// Closed-form unreduced A_{rs} from the Artin action on x_r, x_s and the x_i
// between them.
RFMatrix closed_form_pure_generator(int r, int s, int strands);

struct InvariantVectors {
  std::vector<RationalFunction> unreduced;  // v = sum X_1...X_{i-1} e_i
  std::vector<RationalFunction> reduced;    // w = sum (1 - pi_i) eps_i
};
InvariantVectors invariant_vectors(int strands);

// Partial products pi_i = X_1 ... X_i, i = 1..strands.
std::vector<LaurentPoly> partial_products(int strands);

// Coordinates change from (e_1..e_{n+1}) to (eps_1..eps_n, v_{n+1}).
RFMatrix basis_change_e_to_eps(int strands);

// Substitutes X_i -> q in every entry (one-variable result).
RFMatrix burau_specialize(const TwistedMap& m);

// Symbolic matrices of all A_{rs}, 1 <= r < s <= strands, in (r, s) order.
struct PureGeneratorMatrix {
  int r;
  int s;
  RFMatrix matrix;
};
std::vector<PureGeneratorMatrix> pure_generator_matrices(int strands, Basis basis);

}  // namespace pbm
