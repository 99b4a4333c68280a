#include "pbm/artin.hpp"

#include <cstdlib>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

// Appends letters with eager cancellation.
void push_reduced(std::vector<int>& out, int letter) {
  if (!out.empty() && out.back() == -letter) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}

// Image of a single letter x_j^{±1} under s_i^{±1}.
std::vector<int> generator_image(int braid_letter, int free_letter) {
  int i = std::abs(braid_letter);
  int j = std::abs(free_letter);
  std::vector<int> image;
  if (j != i && j != i + 1) {
    image = {j};
  } else if (braid_letter > 0) {
    image = j == i ? std::vector<int>{i, i + 1, -i} : std::vector<int>{i};
  } else {
    image = j == i ? std::vector<int>{i + 1} : std::vector<int>{-(i + 1), i, i + 1};
  }
  if (free_letter < 0) {
    std::vector<int> inv;
    for (auto it = image.rbegin(); it != image.rend(); ++it) inv.push_back(-*it);
    return inv;
  }
  return image;
}

}  // namespace

FreeWord::FreeWord(int rank_, std::vector<int> letters_) : rank(rank_) {
  require(rank >= 1, "free group rank must be positive");
  for (int a : letters_) {
    if (a == 0 || std::abs(a) > rank) {
      throw ValidationError("free generator index " + std::to_string(a) + " outside 1.." + std::to_string(rank));
    }
    push_reduced(letters, a);
  }
}

FreeWord FreeWord::generator(int rank, int i) { return FreeWord(rank, {i}); }

FreeWord FreeWord::product_of_generators(int rank) {
  std::vector<int> letters;
  for (int i = 1; i <= rank; ++i) letters.push_back(i);
  return FreeWord(rank, letters);
}

FreeWord FreeWord::inverse() const {
  FreeWord out;
  out.rank = rank;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

std::string FreeWord::to_string() const {
  if (letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i > 0) out += ' ';
    out += "x" + std::to_string(std::abs(letters[i]));
    if (letters[i] < 0) out += "^-1";
  }
  return out;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  require(a.rank == b.rank, "free group rank mismatch");
  FreeWord out = a;
  for (int x : b.letters) push_reduced(out.letters, x);
  return out;
}

FreeWord artin_apply(const BraidWord& w, const FreeWord& u) {
  if (w.strands != u.rank) {
    throw ValidationError("strand count " + std::to_string(w.strands) + " does not match free rank " +
                          std::to_string(u.rank));
  }
  std::vector<int> cur = u.letters;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    std::vector<int> next;
    for (int x : cur) {
      for (int y : generator_image(*it, x)) push_reduced(next, y);
    }
    cur = std::move(next);
  }
  FreeWord out;
  out.rank = u.rank;
  out.letters = std::move(cur);
  return out;
}

bool artin_product_invariance(const BraidWord& w) {
  FreeWord p = FreeWord::product_of_generators(w.strands);
  return artin_apply(w, p) == p;
}

SemidirectElement SemidirectElement::identity(int rank) {
  return {std::vector<LaurentPoly>(static_cast<std::size_t>(rank), LaurentPoly(rank)), Monomial{}};
}

SemidirectElement operator*(const SemidirectElement& a, const SemidirectElement& b) {
  require(a.vector.size() == b.vector.size(), "semidirect rank mismatch");
  SemidirectElement out = a;
  for (std::size_t i = 0; i < a.vector.size(); ++i) out.vector[i] += b.vector[i].times(a.monomial);
  out.monomial = a.monomial * b.monomial;
  return out;
}

SemidirectElement inverse(const SemidirectElement& a) {
  Monomial inv = a.monomial.inverse();
  SemidirectElement out = a;
  for (auto& c : out.vector) c = c.times(inv, -1);
  out.monomial = inv;
  return out;
}

SemidirectElement semidirect_eval(const FreeWord& u) {
  int m = u.rank;
  SemidirectElement acc = SemidirectElement::identity(m);
  for (int x : u.letters) {
    int i = std::abs(x) - 1;
    SemidirectElement g = SemidirectElement::identity(m);
    g.vector[static_cast<std::size_t>(i)] = LaurentPoly::constant(m, 1);
    g.monomial = Monomial::unit(i);
    acc = acc * (x > 0 ? g : inverse(g));
  }
  return acc;
}

Matrix<LaurentPoly> derive_unreduced_matrix(const BraidWord& w) {
  require(is_pure(w), "derive_unreduced_matrix needs a pure braid, got '" + w.to_string() + "'");
  int m = w.strands;
  auto size = static_cast<std::size_t>(m);
  Matrix<LaurentPoly> out(size, size, LaurentPoly(m));
  for (int i = 0; i < m; ++i) {
    SemidirectElement img = semidirect_eval(artin_apply(w, FreeWord::generator(m, i + 1)));
    ensure(img.monomial == Monomial::unit(i),
           "Artin image of x" + std::to_string(i + 1) + " under '" + w.to_string() +
               "' has the wrong abelian part");
    for (std::size_t j = 0; j < size; ++j) out(j, static_cast<std::size_t>(i)) = img.vector[j];
  }
  return out;
}

}  // namespace pbm
