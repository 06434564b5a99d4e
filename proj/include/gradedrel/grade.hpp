#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace gradedrel {

/// A level index of the graded family, or TOP (+infinity, the grade of a diagonal pair).
class Grade {
 public:
  constexpr Grade() = default;
  constexpr Grade(int level) : level_(level) {}  // NOLINT: implicit from int is intended

  static constexpr Grade top() {
    Grade g;
    g.top_ = true;
    return g;
  }

  constexpr bool is_top() const { return top_; }
  // Only meaningful when !is_top().
  constexpr int level() const { return level_; }

  friend constexpr bool operator==(Grade a, Grade b) {
    return a.top_ == b.top_ && (a.top_ || a.level_ == b.level_);
  }
  friend constexpr std::strong_ordering operator<=>(Grade a, Grade b) {
    if (a.top_ || b.top_) return a.top_ <=> b.top_;
    return a.level_ <=> b.level_;
  }

  std::string to_string() const { return top_ ? std::string("TOP") : std::to_string(level_); }
  friend std::ostream& operator<<(std::ostream& os, Grade g) { return os << g.to_string(); }

 private:
  int level_ = 0;
  bool top_ = false;
};

/// Explicitly stored level range [lo, hi]. Below lo every pair is related, above hi only the diagonal.
struct Window {
  int lo = 0;
  int hi = 0;

  constexpr int below() const { return lo - 1; }
  constexpr int above() const { return hi + 1; }
  constexpr int span() const { return hi - lo + 1; }
  constexpr bool contains(int n) const { return lo <= n && n <= hi; }

  friend constexpr bool operator==(const Window&, const Window&) = default;
};

}  // namespace gradedrel
