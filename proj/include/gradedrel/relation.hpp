#pragma once

#include <cstddef>
#include <vector>

#include "gradedrel/point_set.hpp"

namespace gradedrel {

/// A binary relation on {0, ..., n-1}; row x holds the points related to x.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : rows_(n, PointSet(n)) {}

  static Relation diagonal(std::size_t n);
  static Relation full(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  bool test(std::size_t x, std::size_t y) const { return rows_[x].contains(y); }
  void set(std::size_t x, std::size_t y) { rows_[x].insert(y); }
  void reset(std::size_t x, std::size_t y) { rows_[x].erase(y); }
  const PointSet& row(std::size_t x) const { return rows_[x]; }

  bool is_subset_of(const Relation& other) const;
  bool is_symmetric() const;
  bool is_reflexive() const;
  bool is_transitive() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::vector<PointSet> rows_;
};

/// Relational composition: (x, y) is in the result iff some z has (x, z) in r and (z, y) in s.
Relation compose(const Relation& r, const Relation& s);

}  // namespace gradedrel
