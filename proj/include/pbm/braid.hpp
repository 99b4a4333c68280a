#pragma once

#include <random>
#include <string>
#include <vector>

namespace pbm {

// A word in s_1^{±1}, ..., s_n^{±1} on n+1 strands. Letter +i is s_i, -i is
// s_i^{-1}. Words compose left to right as written: the word u v acts as
// u after v, so the rightmost letter acts first.
struct BraidWord {
  int strands = 2;
  std::vector<int> letters;

  BraidWord() = default;
  BraidWord(int strands, std::vector<int> letters);

  int n() const { return strands - 1; }
  bool empty() const { return letters.empty(); }
  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

BraidWord operator*(const BraidWord& a, const BraidWord& b);
BraidWord inverse(const BraidWord& w);
BraidWord power(const BraidWord& w, int k);

// A bijection of strand indices, stored 0-based: images[j] is the image of j.
struct Permutation {
  std::vector<int> images;

  static Permutation identity(int size);
  static Permutation transposition(int size, int a, int b);

  int size() const { return static_cast<int>(images.size()); }
  int operator[](int j) const { return images[static_cast<std::size_t>(j)]; }
  bool is_identity() const;
  Permutation inverse() const;
  // One-line notation with 1-based entries.
  std::vector<int> one_line() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

// (a ∘ b)(j) = a(b(j)).
Permutation compose(const Permutation& a, const Permutation& b);

// Homomorphism to the symmetric group: image(uv) = image(u) ∘ image(v).
Permutation permutation_image(const BraidWord& w);
bool is_pure(const BraidWord& w);

// A_{rs} = P^{-1} s_r^2 P with P = s_{r+1} ... s_{s-1}; 1 <= r < s <= strands.
BraidWord pure_generator(int r, int s, int strands);
// (s_a ... s_{b-1})(s_a ... s_{b-2}) ... (s_a); 1 <= a < b <= strands.
BraidWord full_twist(int a, int b, int strands);

// b * A_{r1 s1}^{±1} ... A_{rm sm}^{±1} * b^{-1} with 1 <= m <= max_letters
// pure generators and b a random word of length <= max_conjugator.
BraidWord random_pure_word(std::mt19937_64& rng, int strands, int max_letters, int max_conjugator);

// Text forms: tokens "s3", "s2^-1", "s1^2", "A r s" (pure generator), "D a b"
// (full twist on strands a..b); or a JSON array of signed integers.
BraidWord parse_word(const std::string& text, int strands);

}  // namespace pbm
