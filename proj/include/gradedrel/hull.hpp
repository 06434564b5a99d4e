#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradedrel/bridge.hpp"
#include "gradedrel/dyadic.hpp"
#include "gradedrel/point_set.hpp"
#include "gradedrel/system.hpp"

namespace gradedrel {

/// {y : mu(x, y) >= n}.
PointSet ball(const RelationalSystem& sys, std::size_t x, int n);

// PaperCov intersects only balls centred in the set; ArbitraryCenter intersects every ball containing it.
enum class HullMode { PaperCov, ArbitraryCenter };
std::string_view to_string(HullMode mode);

struct BallRef {
  std::size_t center = 0;
  int level = 0;
  friend bool operator==(const BallRef&, const BallRef&) = default;
};

struct AdmissibleSet {
  PointSet points;
  std::vector<BallRef> witness_balls;
  HullMode mode = HullMode::PaperCov;
};

/// Intersection of the listed balls (the whole ground set for an empty list).
PointSet intersect_balls(const RelationalSystem& sys, const std::vector<BallRef>& balls);

AdmissibleSet hull(const RelationalSystem& sys, const PointSet& a, HullMode mode);

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

/// Every nonempty A with hull(A) == A, in canonical order.
std::vector<AdmissibleSet> enumerate_admissible(const RelationalSystem& sys, HullMode mode,
                                                std::size_t cap = kDefaultEnumerationCap);

/// Closure of a set family under nonempty pairwise intersection; canonical order.
std::vector<PointSet> intersection_closure(std::vector<PointSet> seeds, std::size_t cap = kDefaultEnumerationCap);

struct RadiiReport {
  std::vector<std::pair<std::size_t, DyadicValue>> per_point;  // r_x(A) for x in A
  DyadicValue cheb_radius;
  DyadicValue diameter;
  Grade cheb_grade;  // g_r: the top of r_E(A)
  Grade diam_grade;  // g_delta: the top of delta_E(A)
  std::size_t center = 0;  // a point attaining the Chebyshev radius
};

RadiiReport radii(const RelationalSystem& sys, const PointSet& a);

/// The three readings of "radius strictly below diameter" for one set, computed independently.
struct NormalityCriteria {
  bool by_grades = false;     // g_r > g_delta
  bool by_distances = false;  // r_d < delta_d, exact dyadic
  bool by_relations = false;  // delta_E(A) strictly inside r_E(A), by scanning levels
  int r_e_top = 0;
  int delta_e_top = 0;

  bool agree() const { return by_grades == by_distances && by_distances == by_relations; }
};

/// Requires |A| >= 2.
NormalityCriteria normality_criteria(const RelationalSystem& sys, const PointSet& a);

enum class StructureProperty { Compact, Normal, SphericallyComplete };
std::string_view to_string(StructureProperty p);

struct StructureReport {
  StructureProperty property = StructureProperty::Compact;
  bool holds = true;
  std::optional<PointSet> witness;   // normal: a set with radius == diameter
  std::vector<PointSet> witness_family;  // compact/spherical: the failing family, if any
  std::string note;
  std::size_t examined = 0;
};

StructureReport check_normal_structure(const RelationalSystem& sys, HullMode mode,
                                       std::size_t cap = kDefaultEnumerationCap);
StructureReport check_compact_structure(const RelationalSystem& sys, HullMode mode,
                                        std::size_t cap = kDefaultEnumerationCap);
StructureReport check_spherical_completeness(const RelationalSystem& sys);

/// A maximal set of points pairwise at the largest finite grade; empty for fewer than two points.
PointSet min_distance_clique(const RelationalSystem& sys);

/// Hull computed from metric balls of the induced distance (radius = farthest distance from the centre).
PointSet metric_hull(const RelationalSystem& sys, const PointSet& a, HullMode mode);

/// Admissible family generated by metric balls B(x, r), r ranging over `radii`.
std::vector<PointSet> enumerate_admissible_metric(const RelationalSystem& sys, HullMode mode,
                                                  const std::vector<Rational>& radii,
                                                  std::size_t cap = kDefaultEnumerationCap);

/// Dyadic breakpoints 2^(-n) for n in [lo-2, hi+2].
std::vector<Rational> dyadic_breakpoints(const Window& window);

/// Level m = 1 + floor(log2(1 / w)) for an interval of positive width w, with the two
/// inequalities that make the midpoint ball at level m cover the interval while its
/// endpoints stay unrelated at that level.
struct IntervalLevelWitness {
  int level = 0;
  bool covers = false;     // w / 2 <= 2^(-m)
  bool separates = false;  // 2^(-m) < w
};

IntervalLevelWitness interval_level_witness(const DyadicValue& width);

}  // namespace gradedrel
