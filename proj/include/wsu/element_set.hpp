#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace wsu {

using Element = std::uint32_t;

/// Dense bit-vector over the elements 0..universe-1 of a parent group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.set(static_cast<Element>(i));
    return s;
  }

  template <class Range>
  static ElementSet of(std::size_t universe, const Range& elements) {
    ElementSet s(universe);
    for (auto x : elements) s.set(static_cast<Element>(x));
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool test(Element x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1U; }
  void set(Element x) noexcept { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(Element x) noexcept { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  ElementSet& operator&=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) noexcept { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) noexcept { return a |= b; }

  /// Elements of *this not in o.
  ElementSet minus(const ElementSet& o) const {
    ElementSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }

  std::size_t intersection_count(const ElementSet& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  bool is_subset_of(const ElementSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Element>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count());
    for_each([&](Element x) { out.push_back(x); });
    return out;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  /// Lexicographic order of the sorted member lists.
  friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) noexcept {
    const std::size_t nw = std::min(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < nw; ++i) {
      const std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (!diff) continue;
      const std::uint64_t low = diff & (~diff + 1);
      const bool in_a = (a.words_[i] & low) != 0;
      const ElementSet& other = in_a ? b : a;
      // The set holding the lowest differing element is smaller unless the
      // other set has run out of elements (it is then a proper prefix).
      bool other_has_more = (other.words_[i] & ~(low | (low - 1))) != 0;
      for (std::size_t j = i + 1; !other_has_more && j < other.words_.size(); ++j) other_has_more = other.words_[j] != 0;
      if (in_a) return other_has_more ? std::strong_ordering::less : std::strong_ordering::greater;
      return other_has_more ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.words_.size() <=> b.words_.size();
  }

  std::size_t hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ULL + (h >> 29);
    return h;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace wsu
