#pragma once

// Free-group words over the standard basis of pi_1 of a compact orientable
// surface of genus g with k >= 1 boundary circles:
//   a1 b1 ... ag bg c1 ... c(k-1)   (rank 2g + k - 1)

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace surfsep {

/// A signed generator. Stored as +(index+1) or -(index+1).
class Letter {
 public:
  constexpr Letter() = default;
  static constexpr Letter positive(int gen) { return Letter(gen + 1); }
  static constexpr Letter negative(int gen) { return Letter(-(gen + 1)); }
  static constexpr Letter from_slot(int slot) {
    return (slot & 1) ? negative(slot >> 1) : positive(slot >> 1);
  }

  constexpr int gen() const { return std::abs(v_) - 1; }
  constexpr bool inverted() const { return v_ < 0; }
  constexpr Letter inverse() const { return Letter(-v_); }
  /// Dense index in [0, 2*rank): 2*gen for x, 2*gen+1 for x^-1.
  constexpr int slot() const { return 2 * gen() + (inverted() ? 1 : 0); }
  constexpr int raw() const { return v_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  constexpr explicit Letter(int v) : v_(v) {}
  int v_ = 1;
};

/// Freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;

  /// Reduces `letters` and wraps the result.
  static Word reduce(std::span<const Letter> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (Letter x : letters) {
      if (!out.empty() && out.back() == x.inverse())
        out.pop_back();
      else
        out.push_back(x);
    }
    Word w;
    w.letters_ = std::move(out);
    return w;
  }
  static Word reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& x : out) x = x.inverse();
    Word w;
    w.letters_ = std::move(out);
    return w;
  }

  Word operator*(const Word& rhs) const {
    std::vector<Letter> all = letters_;
    all.insert(all.end(), rhs.letters_.begin(), rhs.letters_.end());
    return reduce(all);
  }

  Word pow(int n) const {
    Word base = n < 0 ? inverse() : *this;
    Word out;
    for (int i = 0; i < std::abs(n); ++i) out = out * base;
    return out;
  }

  /// Strips conjugating prefix/suffix pairs.
  Word cyclically_reduced() const {
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo] == letters_[hi - 1].inverse()) {
      ++lo;
      --hi;
    }
    Word w;
    w.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
    return w;
  }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

inline Word commutator(const Word& x, const Word& y) {
  return x * y * x.inverse() * y.inverse();
}

/// True iff u and v are equal as cyclic words, possibly after inverting one.
inline bool same_cyclic_class(const Word& u, const Word& v, bool allow_inverse = true) {
  auto cu = u.cyclically_reduced().letters();
  auto test = [&](const std::vector<Letter>& cv) {
    if (cu.size() != cv.size()) return false;
    if (cu.empty()) return true;
    for (std::size_t r = 0; r < cu.size(); ++r) {
      bool eq = true;
      for (std::size_t i = 0; i < cu.size() && eq; ++i)
        eq = cu[(i + r) % cu.size()] == cv[i];
      if (eq) return true;
    }
    return false;
  };
  if (test(v.cyclically_reduced().letters())) return true;
  return allow_inverse && test(v.inverse().cyclically_reduced().letters());
}

/// Names of the free generators of pi_1 for a given (genus, boundary count).
class SurfaceAlphabet {
 public:
  SurfaceAlphabet(int genus, int boundary) : genus_(genus), boundary_(boundary) {
    if (genus < 0 || boundary < 1)
      throw Error(ErrorKind::InvalidSurface,
                  "surface needs genus >= 0 and at least one boundary circle");
  }

  int genus() const { return genus_; }
  int boundary() const { return boundary_; }
  int rank() const { return 2 * genus_ + boundary_ - 1; }

  int a(int i) const { return 2 * (i - 1); }
  int b(int i) const { return 2 * (i - 1) + 1; }
  int c(int j) const { return 2 * genus_ + (j - 1); }

  std::string name(int gen) const {
    if (gen < 2 * genus_)
      return std::string(gen % 2 == 0 ? "a" : "b") + std::to_string(gen / 2 + 1);
    return "c" + std::to_string(gen - 2 * genus_ + 1);
  }

  std::string format(Letter x) const {
    std::string n = name(x.gen());
    if (x.inverted()) n[0] = static_cast<char>(std::toupper(n[0]));
    return n;
  }

  /// Space separated, uppercase for inverses; the identity prints as "1".
  std::string format(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (Letter x : w) {
      if (!out.empty()) out += ' ';
      out += format(x);
    }
    return out;
  }

  /// Accepts `a1 b1^-1 B1 c2^3`, `a b A` (index 1 implied), `1`/`e` for the
  /// identity. Tokens may be run together (`a1b1A1B1`).
  Word parse(std::string_view text) const {
    std::vector<Letter> out;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::ParseError,
                  "cannot parse word '" + std::string(text) + "': " + why);
    };
    while (i < text.size()) {
      char ch = text[i];
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
        ++i;
        continue;
      }
      if (ch == '1' || ch == 'e') {
        ++i;
        continue;
      }
      char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (lower != 'a' && lower != 'b' && lower != 'c') fail(std::string("unexpected '") + ch + "'");
      bool inv = std::isupper(static_cast<unsigned char>(ch)) != 0;
      ++i;
      int index = 0;
      bool has_index = false;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        index = index * 10 + (text[i] - '0');
        has_index = true;
        ++i;
      }
      if (!has_index) index = 1;
      int exponent = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
          neg = text[i] == '-';
          ++i;
        }
        int e = 0;
        bool digits = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          e = e * 10 + (text[i] - '0');
          digits = true;
          ++i;
        }
        if (!digits) fail("bad exponent");
        exponent = neg ? -e : e;
      }
      int gen = -1;
      if (lower == 'a' && index >= 1 && index <= genus_) gen = a(index);
      if (lower == 'b' && index >= 1 && index <= genus_) gen = b(index);
      if (lower == 'c' && index >= 1 && index <= boundary_ - 1) gen = c(index);
      if (gen < 0) fail(std::string(1, lower) + std::to_string(index) + " is not a generator of this surface");
      Letter x = inv ? Letter::negative(gen) : Letter::positive(gen);
      if (exponent < 0) {
        x = x.inverse();
        exponent = -exponent;
      }
      for (int k = 0; k < exponent; ++k) out.push_back(x);
    }
    return Word::reduce(out);
  }

 private:
  int genus_;
  int boundary_;
};

/// Boundary words w_1..w_k of the standard presentation:
///   w_j = c_j (j < k),  w_k = (prod_i [a_i, b_i] * c_1 ... c_{k-1})^-1.
inline std::vector<Word> boundary_words(int genus, int boundary) {
  SurfaceAlphabet alpha(genus, boundary);
  std::vector<Word> out;
  for (int j = 1; j < boundary; ++j) out.push_back(Word::reduce({Letter::positive(alpha.c(j))}));
  Word prod;
  for (int i = 1; i <= genus; ++i)
    prod = prod * commutator(Word::reduce({Letter::positive(alpha.a(i))}),
                             Word::reduce({Letter::positive(alpha.b(i))}));
  for (int j = 1; j < boundary; ++j) prod = prod * Word::reduce({Letter::positive(alpha.c(j))});
  out.push_back(prod.inverse());
  return out;
}

}  // namespace surfsep
