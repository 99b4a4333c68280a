#pragma once

#include <string>
#include <vector>

#include "pbm/braid.hpp"
#include "pbm/laurent.hpp"
#include "pbm/matrix.hpp"

namespace pbm {

// Freely reduced word in x_1^{±1}, ..., x_m^{±1}; letter +i is x_i, -i is x_i^{-1}.
struct FreeWord {
  int rank = 0;
  std::vector<int> letters;

  FreeWord() = default;
  FreeWord(int rank, std::vector<int> letters);

  static FreeWord generator(int rank, int i);
  // x_1 x_2 ... x_m.
  static FreeWord product_of_generators(int rank);

  FreeWord inverse() const;
  std::string to_string() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
};

FreeWord operator*(const FreeWord& a, const FreeWord& b);

// Artin's action: s_i(x_i) = x_i x_{i+1} x_i^{-1}, s_i(x_{i+1}) = x_i, other
// generators fixed. The braid word acts as the composite of its letters, the
// rightmost letter first.
FreeWord artin_apply(const BraidWord& w, const FreeWord& u);
bool artin_product_invariance(const BraidWord& w);

// Element (w, t) of R^m ⋊ H, with (w,t)(w',t') = (w + t w', t t').
struct SemidirectElement {
  std::vector<LaurentPoly> vector;
  Monomial monomial;

  static SemidirectElement identity(int rank);
  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

SemidirectElement operator*(const SemidirectElement& a, const SemidirectElement& b);
SemidirectElement inverse(const SemidirectElement& a);

// Image under x_i -> (e_i, X_i).
SemidirectElement semidirect_eval(const FreeWord& u);

// Column i is the vector part of semidirect_eval(artin_apply(w, x_i)). The word
// must be pure; the monomial part of each column image must equal X_i.
Matrix<LaurentPoly> derive_unreduced_matrix(const BraidWord& w);

}  // namespace pbm
