#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace spectra {

using Element = std::uint32_t;

// Dense subset of a ring carrier {0, ..., universe-1}.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }

  bool contains(Element x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void insert(Element x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void erase(Element x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }

  ElementSet complement() const {
    ElementSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    if (universe_ % 64) out.words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<Element>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  std::vector<Element> members() const {
    std::vector<Element> out;
    out.reserve(count());
    for_each([&](Element x) { out.push_back(x); });
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  // Orders sets by their ascending member lists, lexicographically.
  friend bool operator<(const ElementSet& a, const ElementSet& b) {
    for (std::size_t i = 0; i < a.words_.size() && i < b.words_.size(); ++i) {
      std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (!diff) continue;
      int bit = std::countr_zero(diff);
      std::uint64_t above = bit == 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
      // The set holding the first differing element is smaller unless the
      // other set ends right there (then the other is a proper prefix).
      const ElementSet& holder = (a.words_[i] >> bit) & 1u ? a : b;
      const ElementSet& other = &holder == &a ? b : a;
      bool other_continues = (other.words_[i] & above) != 0;
      for (std::size_t j = i + 1; !other_continues && j < other.words_.size(); ++j)
        other_continues = other.words_[j] != 0;
      return other_continues ? &holder == &a : &holder == &b;
    }
    return a.universe_ < b.universe_;
  }

  std::size_t hash() const {
    std::size_t h = universe_;
    for (auto w : words_) h = h * 0x9E3779B97F4A7C15ull ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace spectra
