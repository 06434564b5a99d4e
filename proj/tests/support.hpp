#pragma once

// Fixtures and brute-force oracles shared by the test binaries. Oracles work on plain
// integers and boost rationals so they never route through the code under test.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gradedrel/bridge.hpp"
#include "gradedrel/dynamics.hpp"
#include "gradedrel/system.hpp"

namespace fixtures {

using namespace gradedrel;

inline constexpr int kTop = INT_MAX / 4;

// Off-diagonal rows as plain ints; diagonal entries are ignored.
inline RelationalSystem make(std::vector<std::string> labels, int lo, int hi,
                             const std::vector<std::vector<int>>& rows) {
  GradeMatrix g(rows.size(), Grade(lo - 1));
  for (std::size_t x = 0; x < rows.size(); ++x)
    for (std::size_t y = x + 1; y < rows.size(); ++y) g.set(x, y, Grade(rows[x][y]));
  return RelationalSystem(std::move(labels), Window{lo, hi}, std::move(g));
}

inline RelationalSystem ex_a() {
  return make({"0", "1/4", "1/2", "3/4", "1"}, 0, 3,
              {{0, 2, 1, 0, 0}, {2, 0, 2, 1, 0}, {1, 2, 0, 2, 1}, {0, 1, 2, 0, 2}, {0, 0, 1, 2, 0}});
}

inline RelationalSystem ex_b() { return make({"p", "q", "r"}, 0, 6, {{0, 1, 0}, {1, 0, 5}, {0, 5, 0}}); }

inline RelationalSystem ex_c() {
  std::vector<std::vector<int>> rows(6, std::vector<int>(6, 0));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) rows[a][b] = std::min(a, b);  // index 5 plays infinity
  return make({"0", "1", "2", "3", "4", "inf"}, 0, 5, rows);
}

inline RelationalSystem ex_e() { return make({"a", "b"}, 3, 4, {{0, 3}, {3, 0}}); }

inline SelfMap successor() { return SelfMap({1, 2, 3, 4, 5, 5}); }
inline SelfMap reflection() { return SelfMap({4, 3, 2, 1, 0}); }
inline SelfMap swap() { return SelfMap({1, 0}); }

// Grade as an int, TOP -> kTop.
inline int g(const RelationalSystem& s, std::size_t x, std::size_t y) {
  const Grade v = s.grade(x, y);
  return v.is_top() ? kTop : v.level();
}

// 2^(-grade) as a rational; 0 on the diagonal.
inline Rational dist(const RelationalSystem& s, std::size_t x, std::size_t y) {
  if (x == y) return Rational(0);
  const int k = g(s, x, y);
  const BigInt p = BigInt(1) << (k < 0 ? -k : k);
  return k < 0 ? Rational(p) : Rational(BigInt(1), p);
}

// Grade forms of the composition conditions.
inline bool oracle_transitive(const RelationalSystem& s) {
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const int m = std::min(g(s, x, z), g(s, z, y));
        if (m >= s.window().lo && std::min(m, s.window().hi) > g(s, x, y)) return false;
      }
  return true;
}

inline bool oracle_r9(const RelationalSystem& s) {
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const int m = std::min({g(s, x, z), g(s, z, y), s.window().hi + 1});
        if (m >= s.window().lo && g(s, x, y) < m - 1) return false;
      }
  return true;
}

inline bool oracle_r10(const RelationalSystem& s) {
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w) {
          const int m = std::min({g(s, x, z), g(s, z, w), g(s, w, y), s.window().hi + 1});
          if (m >= s.window().lo && g(s, x, y) < m - 1) return false;
        }
  return true;
}

// Random system drawn directly: grades uniform in [lo-1, hi].
inline RelationalSystem random_system(std::mt19937_64& rng, std::size_t max_points = 7) {
  std::uniform_int_distribution<std::size_t> size_d(1, max_points);
  std::uniform_int_distribution<int> lo_d(-3, 3), span_d(0, 5);
  const std::size_t n = size_d(rng);
  const int lo = lo_d(rng);
  const int hi = lo + span_d(rng);
  std::uniform_int_distribution<int> grade_d(lo - 1, hi);
  GradeMatrix m(n, Grade(lo - 1));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) m.set(x, y, Grade(grade_d(rng)));
  return RelationalSystem::unlabelled(Window{lo, hi}, std::move(m));
}

inline SelfMap random_map(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  std::vector<std::size_t> image(n);
  for (auto& v : image) v = d(rng);
  return SelfMap(std::move(image));
}

}  // namespace fixtures
