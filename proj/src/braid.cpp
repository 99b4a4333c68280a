#include "pbm/braid.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "pbm/errors.hpp"

namespace pbm {

BraidWord::BraidWord(int strands_, std::vector<int> letters_) : strands(strands_), letters(std::move(letters_)) {
  require(strands >= 2, "a braid needs at least 2 strands, got " + std::to_string(strands));
  for (int a : letters) {
    if (a == 0 || std::abs(a) > strands - 1) {
      throw ValidationError("generator index " + std::to_string(a) + " outside 1.." + std::to_string(strands - 1));
    }
  }
}

std::string BraidWord::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i > 0) out += ' ';
    out += "s" + std::to_string(std::abs(letters[i]));
    if (letters[i] < 0) out += "^-1";
  }
  return out;
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
  require(a.strands == b.strands, "strand count mismatch in braid product");
  BraidWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

BraidWord inverse(const BraidWord& w) {
  BraidWord out(w.strands, {});
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

BraidWord power(const BraidWord& w, int k) {
  BraidWord base = k < 0 ? inverse(w) : w;
  BraidWord out(w.strands, {});
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

Permutation Permutation::identity(int size) {
  Permutation p;
  p.images.resize(static_cast<std::size_t>(size));
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

Permutation Permutation::transposition(int size, int a, int b) {
  Permutation p = identity(size);
  std::swap(p.images[static_cast<std::size_t>(a)], p.images[static_cast<std::size_t>(b)]);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (images[j] != static_cast<int>(j)) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images.resize(images.size());
  for (std::size_t j = 0; j < images.size(); ++j) p.images[static_cast<std::size_t>(images[j])] = static_cast<int>(j);
  return p;
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out;
  for (int x : images) out.push_back(x + 1);
  return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require(a.size() == b.size(), "permutation size mismatch");
  Permutation out;
  out.images.resize(b.images.size());
  for (std::size_t j = 0; j < b.images.size(); ++j) out.images[j] = a[b.images[j]];
  return out;
}

Permutation permutation_image(const BraidWord& w) {
  Permutation p = Permutation::identity(w.strands);
  for (int a : w.letters) {
    int i = std::abs(a) - 1;
    p = compose(p, Permutation::transposition(w.strands, i, i + 1));
  }
  return p;
}

bool is_pure(const BraidWord& w) { return permutation_image(w).is_identity(); }

BraidWord pure_generator(int r, int s, int strands) {
  require(1 <= r && r < s && s <= strands,
          "pure generator A_{" + std::to_string(r) + "," + std::to_string(s) + "} needs 1 <= r < s <= " +
              std::to_string(strands));
  BraidWord conj(strands, {});
  for (int i = r + 1; i <= s - 1; ++i) conj.letters.push_back(i);
  return inverse(conj) * BraidWord(strands, {r, r}) * conj;
}

BraidWord full_twist(int a, int b, int strands) {
  require(1 <= a && a < b && b <= strands,
          "full twist on strands " + std::to_string(a) + ".." + std::to_string(b) + " needs 1 <= a < b <= " +
              std::to_string(strands));
  BraidWord w(strands, {});
  for (int top = b - 1; top >= a; --top) {
    for (int i = a; i <= top; ++i) w.letters.push_back(i);
  }
  return w;
}

BraidWord random_pure_word(std::mt19937_64& rng, int strands, int max_letters, int max_conjugator) {
  require(strands >= 2 && max_letters >= 1 && max_conjugator >= 0, "invalid random word parameters");
  std::uniform_int_distribution<int> count(1, max_letters);
  std::uniform_int_distribution<int> conj_len(0, max_conjugator);
  std::uniform_int_distribution<int> strand(1, strands);
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::bernoulli_distribution sign(0.5);
  BraidWord core(strands, {});
  int m = count(rng);
  for (int i = 0; i < m; ++i) {
    int r = strand(rng), s = strand(rng);
    while (s == r) s = strand(rng);
    BraidWord a = pure_generator(std::min(r, s), std::max(r, s), strands);
    core = core * (sign(rng) ? a : inverse(a));
  }
  BraidWord b(strands, {});
  int c = conj_len(rng);
  for (int i = 0; i < c; ++i) b.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
  return b * core * inverse(b);
}

namespace {

int parse_int(const std::string& token, const std::string& context) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) throw ValidationError("malformed " + context + ": '" + token + "'");
  return value;
}

}  // namespace

BraidWord parse_word(const std::string& text, int strands) {
  std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("malformed JSON braid word: ") + e.what());
    }
    std::vector<int> letters;
    for (const auto& x : j) {
      require(x.is_number_integer(), "JSON braid word must contain integers only");
      letters.push_back(x.get<int>());
    }
    return BraidWord(strands, std::move(letters));
  }
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  BraidWord w(strands, {});
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t == "A" || t == "D") {
      require(i + 2 < tokens.size(), "'" + t + "' needs two strand indices");
      int a = parse_int(tokens[i + 1], "strand index");
      int b = parse_int(tokens[i + 2], "strand index");
      w = w * (t == "A" ? pure_generator(a, b, strands) : full_twist(a, b, strands));
      i += 2;
      continue;
    }
    require(t.size() >= 2 && t[0] == 's', "unknown braid token '" + t + "'");
    std::size_t caret = t.find('^');
    int index = parse_int(t.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), "generator");
    int exponent = caret == std::string::npos ? 1 : parse_int(t.substr(caret + 1), "exponent");
    w = w * power(BraidWord(strands, {index}), exponent);
  }
  return w;
}

}  // namespace pbm
