#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradedrel/dyadic.hpp"
#include "gradedrel/point_set.hpp"
#include "gradedrel/system.hpp"

namespace gradedrel {

Grade mu(const RelationalSystem& sys, std::size_t x, std::size_t y);

/// The induced semimetric 2^(-mu(x, y)), zero on the diagonal.
DyadicValue delta(const RelationalSystem& sys, std::size_t x, std::size_t y);

/// {(x, y) : delta(x, y) <= 2^(-n)}, computed from distances only.
Relation reconstruct_level(const RelationalSystem& sys, int n);

struct BallCollapse {
  int level = 0;             // smallest level g with 2^(-g) <= r, clamped to [lo-1, hi+1]
  PointSet metric_ball;      // {y : delta(x, y) <= r}
  PointSet relational_ball;  // {y : mu(x, y) >= level}

  bool coincide() const { return metric_ball == relational_ball; }
};

/// Metric ball of rational radius r > 0 next to the relational ball it collapses onto.
BallCollapse metric_ball_collapse(const RelationalSystem& sys, std::size_t x, const Rational& r);

/// Ordered triple read as "x to y via z".
struct Triple {
  std::size_t x = 0;
  std::size_t z = 0;
  std::size_t y = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct InframetricConstant {
  DyadicValue value;             // a power of two, at least 1
  std::optional<Triple> witness;  // a triple attaining value (absent when value == 1 is attained trivially)
};

/// Smallest C with d(x, y) <= C * max(d(x, z), d(z, y)) for every triple.
InframetricConstant minimal_inframetric_constant(const RelationalSystem& sys);

enum class ClassLabel { Ultrametric, Metric, Inframetric, SemimetricOnly };
std::string_view to_string(ClassLabel label);

struct ClassificationReport {
  bool is_semimetric = true;
  std::optional<std::pair<std::size_t, std::size_t>> semimetric_witness;

  DyadicValue minimal_c;
  std::optional<Triple> c_witness;
  bool c_verified = true;  // d4 holds at C everywhere and fails at C/2 somewhere

  bool triangle_holds = true;
  std::optional<Triple> triangle_witness;  // largest excess d(x,y) - d(x,z) - d(z,y)
  DyadicValue triangle_lhs;                // d(x, y) at the witness
  DyadicValue triangle_rhs;                // d(x, z) + d(z, y) at the witness

  bool strong_triangle_holds = true;
  std::optional<Triple> strong_witness;

  // Relation-level sufficient conditions, checked on the family itself.
  bool r9 = true;
  bool r10 = true;
  bool transitive = true;

  ClassLabel label = ClassLabel::Ultrametric;

  // A sufficient condition holds while the distance-level conclusion fails.
  bool r9_implication_violated() const;
  bool r10_implication_violated() const;
  bool ultrametric_equivalence_violated() const;
  bool any_implication_violated() const;
};

ClassificationReport classify(const RelationalSystem& sys);

/// Square matrix of nonnegative exact rationals.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const { return n_; }
  const Rational& operator()(std::size_t x, std::size_t y) const { return entries_[x * n_ + y]; }
  Rational& operator()(std::size_t x, std::size_t y) { return entries_[x * n_ + y]; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> entries_;
};

DistanceMatrix delta_matrix(const RelationalSystem& sys);

/// Grades each pair by the largest n with d(x, y) <= 2^(-n), clamped into [lo-1, hi].
RelationalSystem ingest_distance_matrix(const DistanceMatrix& d, Window window,
                                        std::vector<std::string> labels = {});

}  // namespace gradedrel
