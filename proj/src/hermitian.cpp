#include "pbm/hermitian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

RationalFunction var(int strands, int i) { return RationalFunction(LaurentPoly::variable(strands, i - 1)); }

}  // namespace

RFMatrix form_matrix(int strands) {
  require(strands >= 2, "the form needs at least 2 strands");
  auto n = static_cast<std::size_t>(strands - 1);
  RationalFunction one = RationalFunction::constant(strands, 1);
  RFMatrix h(n, n, RationalFunction(strands));
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunction xi = var(strands, static_cast<int>(i) + 1);
    RationalFunction xj = var(strands, static_cast<int>(i) + 2);
    h(i, i) = (one - xi * xj) / ((one - xi) * (one - xj));
    if (i + 1 < n) {
      h(i, i + 1) = -(one / (one - xj));
      h(i + 1, i) = -(xj / (one - xj));
    }
  }
  return h;
}

// Works in the Laurent ring: with D = prod (1 - X_i) the matrix D*H has
// Laurent entries and M^H (D H) M = D (M^H H M), so no fractions are needed.
bool verify_invariance(const RFMatrix& m) {
  int strands = static_cast<int>(m.rows()) + 1;
  RFMatrix h = form_matrix(strands);
  LaurentPoly one = LaurentPoly::constant(strands, 1);
  LaurentPoly scale = one;
  for (int i = 0; i < strands; ++i) scale *= one - LaurentPoly::variable(strands, i);
  auto to_laurent = [&](const RationalFunction& x) {
    require(x.is_laurent(), "form invariance needs Laurent matrix entries");
    return x.numerator();
  };
  Matrix<LaurentPoly> ml = m.map(to_laurent);
  Matrix<LaurentPoly> hl = h.map([&](const RationalFunction& x) {
    auto q = divide_exact(x.numerator() * scale, x.denominator());
    ensure(q.has_value(), "form denominator does not divide prod (1 - X_i)");
    return *q;
  });
  return ml.adjoint() * hl * ml == hl;
}

bool verify_invariance(const BraidWord& w) {
  require(is_pure(w), "form invariance is only defined for pure braids, got '" + w.to_string() + "'");
  return verify_invariance(evaluate_word(w, Basis::reduced).matrix);
}

RationalFunction form_determinant_closed(int strands) {
  require(strands >= 2, "the form needs at least 2 strands");
  LaurentPoly one = LaurentPoly::constant(strands, 1);
  LaurentPoly prod = one;
  LaurentPoly den = one;
  for (int i = 0; i < strands; ++i) {
    prod *= LaurentPoly::variable(strands, i);
    den *= one - LaurentPoly::variable(strands, i);
  }
  return RationalFunction(one - prod, den);
}

RationalFunction form_determinant(int strands) {
  RFMatrix h = form_matrix(strands);
  std::size_t n = h.rows();
  RationalFunction prev = RationalFunction::constant(strands, 1);
  RationalFunction cur = h(0, 0);
  for (std::size_t i = 1; i < n; ++i) {
    RationalFunction next = h(i, i) * cur - h(i, i - 1) * h(i - 1, i) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  ensure(cur == form_determinant_closed(strands), "form determinant differs from its closed form");
  return cur;
}

bool is_degenerate(int d, std::span<const int> k) {
  require(d >= 1, "order d must be positive");
  long sum = std::accumulate(k.begin(), k.end(), 0L);
  return sum % d == 0;
}

CycloMatrix specialize_form(int strands, int d, std::span<const int> k) {
  require(d >= 2, "specializing the form needs d >= 2, got " + std::to_string(d));
  require(static_cast<int>(k.size()) == strands,
          "weight count " + std::to_string(k.size()) + " does not match strand count " + std::to_string(strands));
  check_weights(d, k);
  RFMatrix h = form_matrix(strands);
  return h.map([&](const RationalFunction& x) { return specialize(x, d, k); });
}

Signature signature(int strands, int d, std::span<const int> k, int f) {
  require(std::gcd(f, d) == 1, "embedding index f=" + std::to_string(f) + " is not coprime to d=" + std::to_string(d));
  require(!is_degenerate(d, k), "the form is degenerate: d divides the weight sum");
  CycloMatrix h = specialize_form(strands, d, k);
  auto n = static_cast<Eigen::Index>(h.rows());
  Eigen::MatrixXcd m(n, n);
  const std::complex<double> minus_i(0, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = minus_i * h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).embed(f);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  ensure(solver.info() == Eigen::Success, "eigenvalue solver did not converge");
  Signature sig;
  sig.f = f;
  sig.min_abs_eigenvalue = INFINITY;
  for (Eigen::Index i = 0; i < n; ++i) {
    double lambda = solver.eigenvalues()(i);
    sig.eigenvalues.push_back(lambda);
    sig.min_abs_eigenvalue = std::min(sig.min_abs_eigenvalue, std::abs(lambda));
    (lambda > 0 ? sig.p : sig.q)++;
  }
  ensure(sig.min_abs_eigenvalue > kEigenTolerance,
         "eigenvalue within " + std::to_string(kEigenTolerance) + " of zero at f=" + std::to_string(f));
  return sig;
}

}  // namespace pbm
