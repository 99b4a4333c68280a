#pragma once

#include <span>
#include <vector>

#include "pbm/braid.hpp"
#include "pbm/cyclotomic.hpp"
#include "pbm/gassner.hpp"
#include "pbm/matrix.hpp"

namespace pbm {

using CycloMatrix = Matrix<CycloNum>;

// Gram matrix H[i][j] = h(eps_i, eps_j) of the invariant skew-hermitian form,
// n x n with n = strands - 1. The form is h(x, y) = x^H H y, so invariance
// under M reads M^H H M = H.
RFMatrix form_matrix(int strands);

// M^H h M == h for M the reduced image of a pure braid.
bool verify_invariance(const BraidWord& w);
bool verify_invariance(const RFMatrix& m);

// Determinant by the tridiagonal recursion; checked against
// (1 - X_1...X_{n+1}) / prod (1 - X_i).
RationalFunction form_determinant(int strands);
RationalFunction form_determinant_closed(int strands);

CycloMatrix specialize_form(int strands, int d, std::span<const int> k);
bool is_degenerate(int d, std::span<const int> k);

struct Signature {
  int f = 1;
  int p = 0;
  int q = 0;
  double min_abs_eigenvalue = 0;
  std::vector<double> eigenvalues;
};

// Sign counts of -i * h(t) at the embedding w -> exp(2 pi i f / d).
Signature signature(int strands, int d, std::span<const int> k, int f);
// Eigenvalues with |lambda| at or below this are rejected.
inline constexpr double kEigenTolerance = 1e-6;

}  // namespace pbm
