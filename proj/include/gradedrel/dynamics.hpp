#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradedrel/hull.hpp"
#include "gradedrel/system.hpp"

namespace gradedrel {

/// Total self-map of {0, ..., n-1}.
class SelfMap {
 public:
  SelfMap() = default;
  explicit SelfMap(std::vector<std::size_t> image);

  static SelfMap identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t x) const { return image_[x]; }
  const std::vector<std::size_t>& image() const { return image_; }

  PointSet apply(const PointSet& s) const;

  friend bool operator==(const SelfMap&, const SelfMap&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// The pair (x < y) stretched most by the map (first in row-major order on ties), with both grades.
struct PairWitness {
  std::size_t x = 0;
  std::size_t y = 0;
  Grade before;
  Grade after;
  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

struct MapCheck {
  bool holds = true;
  std::optional<PairWitness> witness;
};

MapCheck is_homomorphism(const RelationalSystem& sys, const SelfMap& t);
/// Same question as is_homomorphism, answered with exact distances.
MapCheck is_nonexpansive(const RelationalSystem& sys, const SelfMap& t);

PointSet fixed_points(const SelfMap& t);

struct Orbit {
  std::size_t start = 0;
  std::vector<std::size_t> tail;
  std::vector<std::size_t> cycle;
  std::vector<Grade> grade_trace;  // grade(T^k x, T^(k+1) x), one per tail/cycle entry

  std::size_t length() const { return tail.size() + cycle.size(); }
  // T^k x for any k >= 0.
  std::size_t iterate(std::size_t k) const;
  Grade step_grade(std::size_t k) const;
};

Orbit orbit(const RelationalSystem& sys, const SelfMap& t, std::size_t x);

struct RegularityReport {
  std::size_t point = 0;
  bool is_fixed = false;
  bool regular = false;
  std::optional<int> regular_offset;  // smallest n0 >= 1
  bool asymptotically_regular = false;
  std::optional<int> asymptotic_offset;  // smallest n0 >= 0
  bool weak_regular = false;
  bool classical_asymptotic = false;  // the cycle consists of fixed points
};

RegularityReport regularity_report(const RelationalSystem& sys, const SelfMap& t, std::size_t x);

/// Inclusion-minimal admissible sets mapped into themselves. Throws Precondition unless t is a homomorphism.
std::vector<AdmissibleSet> minimal_invariant_admissible(const RelationalSystem& sys, const SelfMap& t,
                                                        HullMode mode,
                                                        std::size_t cap = kDefaultEnumerationCap);

/// Balls B(x, R_n) mapped into themselves on which every point moves by grade exactly n.
std::vector<BallRef> minimal_invariant_balls(const RelationalSystem& sys, const SelfMap& t);

enum class DichotomyOutcome { ContainsFixedPoint, ContainsMinimalInvariantBall, Neither };
std::string_view to_string(DichotomyOutcome o);

struct DichotomyRow {
  std::size_t point = 0;
  BallRef ball;  // B(x, R_mu(x, Tx))
  DichotomyOutcome outcome = DichotomyOutcome::Neither;
  std::optional<std::size_t> fixed_point;
  std::optional<BallRef> invariant_ball;
};

struct DichotomyReport {
  bool hypotheses_met = false;  // per-level transitivity and homomorphism
  std::string note;
  std::vector<DichotomyRow> rows;

  bool has_neither() const;
};

DichotomyReport ks_dichotomy(const RelationalSystem& sys, const SelfMap& t);

enum class RegularityVariant { Regular, Asymptotic };
std::string_view to_string(RegularityVariant v);

struct InvariantBallRow {
  BallRef ball;
  PointSet points;
  PointSet fixed;
};

struct RegularFixedPointReport {
  RegularityVariant variant = RegularityVariant::Regular;
  bool transitive = false;
  bool homomorphism = false;
  bool regularity = false;
  std::vector<InvariantBallRow> invariant_balls;  // one per distinct invariant ball set

  bool hypotheses_met() const { return transitive && homomorphism && regularity; }
  // Hypotheses hold and some invariant ball has no fixed point.
  bool falsified() const;
};

RegularFixedPointReport regular_fixed_point(const RelationalSystem& sys, const SelfMap& t,
                                            RegularityVariant variant);

}  // namespace gradedrel
