#pragma once

// Words in a free group over an arbitrary alphabet. A word is a sequence of
// letters, each a symbol with exponent +1 or -1.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <vector>

namespace braidforge {

template <class Symbol>
struct Letter {
  Symbol symbol{};
  int sign = 1;

  Letter inverse() const { return {symbol, -sign}; }
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

template <class Symbol>
using Word = std::vector<Letter<Symbol>>;

/// Words over generator indices.
using GenWord = Word<int>;

template <class Symbol>
Word<Symbol> inverse(const Word<Symbol>& w) {
  Word<Symbol> out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

/// Appends `letter`, cancelling against the current last letter when possible.
template <class Symbol>
void push_reduced(Word<Symbol>& w, const Letter<Symbol>& letter) {
  if (!w.empty() && w.back().symbol == letter.symbol && w.back().sign == -letter.sign) {
    w.pop_back();
  } else {
    w.push_back(letter);
  }
}

template <class Symbol>
Word<Symbol> free_reduce(const Word<Symbol>& w) {
  Word<Symbol> out;
  out.reserve(w.size());
  for (const auto& l : w) push_reduced(out, l);
  return out;
}

template <class Symbol>
void append_reduced(Word<Symbol>& w, const Word<Symbol>& tail) {
  for (const auto& l : tail) push_reduced(w, l);
}

template <class Symbol>
Word<Symbol> concat(Word<Symbol> a, const Word<Symbol>& b) {
  append_reduced(a, b);
  return a;
}

/// Free and cyclic reduction: the result has no cancelling pair, including
/// between its last and first letter.
template <class Symbol>
Word<Symbol> cyclic_reduce(const Word<Symbol>& w) {
  Word<Symbol> r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo].symbol == r[hi - 1].symbol && r[lo].sign == -r[hi - 1].sign) {
    ++lo;
    --hi;
  }
  return Word<Symbol>(r.begin() + static_cast<std::ptrdiff_t>(lo),
                      r.begin() + static_cast<std::ptrdiff_t>(hi));
}

/// Rotates `w` left by `k` positions.
template <class Symbol>
Word<Symbol> rotate_left(const Word<Symbol>& w, std::size_t k) {
  if (w.empty()) return w;
  Word<Symbol> out(w);
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % w.size()), out.end());
  return out;
}

/// True when `a` and `b` are equal as cyclic words (no reduction applied).
template <class Symbol>
bool cyclically_equal(const Word<Symbol>& a, const Word<Symbol>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (rotate_left(a, k) == b) return true;
  }
  return false;
}

/// Conjugacy test for free-group words: equal after cyclic reduction up to
/// rotation, optionally also allowing inversion.
template <class Symbol>
bool conjugate_words(const Word<Symbol>& a, const Word<Symbol>& b, bool allow_inverse) {
  const auto ra = cyclic_reduce(a);
  const auto rb = cyclic_reduce(b);
  if (cyclically_equal(ra, rb)) return true;
  return allow_inverse && cyclically_equal(ra, cyclic_reduce(inverse(rb)));
}

template <class Symbol>
int exponent_sum(const Word<Symbol>& w, const Symbol& s) {
  int total = 0;
  for (const auto& l : w) {
    if (l.symbol == s) total += l.sign;
  }
  return total;
}

template <class Symbol>
std::size_t occurrences(const Word<Symbol>& w, const Symbol& s) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [&](const Letter<Symbol>& l) { return l.symbol == s; }));
}

/// Replaces every letter by the image of its symbol (inverted for exponent -1)
/// and freely reduces the result.
template <class Target, class Symbol, class Map>
Word<Target> substitute(const Word<Symbol>& w, Map&& image_of) {
  Word<Target> out;
  for (const auto& l : w) {
    const Word<Target>& img = image_of(l.symbol);
    if (l.sign > 0) {
      append_reduced(out, img);
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) push_reduced(out, it->inverse());
    }
  }
  return out;
}

}  // namespace braidforge
