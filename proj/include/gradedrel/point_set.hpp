#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace gradedrel {

/// Subset of a ground set {0, ..., n-1}, stored as a packed bitset.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  PointSet(std::size_t universe, std::initializer_list<std::size_t> members) : PointSet(universe) {
    for (std::size_t m : members) insert(m);
  }

  static PointSet full(std::size_t universe) {
    PointSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }
  static PointSet singleton(std::size_t universe, std::size_t x) { return PointSet(universe, {x}); }

  std::size_t universe() const { return universe_; }

  bool contains(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void insert(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void erase(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const PointSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }
  bool intersects(const PointSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & other.words_[k]) return true;
    return false;
  }

  PointSet& operator&=(const PointSet& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  PointSet& operator|=(const PointSet& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  // Smallest member; universe() when empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return universe_;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

  std::size_t hash() const {
    std::size_t h = universe_;
    for (auto w : words_) h = h * 0x9e3779b97f4a7c15ull ^ std::hash<std::uint64_t>{}(w + (h << 6) + (h >> 2));
    return h;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Canonical order: by size, then lexicographically by sorted member list.
bool canonical_less(const PointSet& a, const PointSet& b);

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const { return s.hash(); }
};

}  // namespace gradedrel
