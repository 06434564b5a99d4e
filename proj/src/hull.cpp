#include "gradedrel/hull.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "gradedrel/errors.hpp"

namespace gradedrel {

namespace {

void require_nonempty(const RelationalSystem& sys, const PointSet& a) {
  if (a.universe() != sys.size()) throw Error(ErrorCode::StructuralInput, "point set over the wrong ground set");
  if (a.empty()) throw Error(ErrorCode::UndefinedInput, "empty point set");
}

// Tightest level at which the ball centred at c still contains A.
int covering_level(const RelationalSystem& sys, std::size_t c, const PointSet& a) {
  Grade g = Grade::top();
  for (std::size_t y : a.members()) g = std::min(g, sys.grade(c, y));
  return g.is_top() ? sys.window().above() : g.level();
}

std::vector<PointSet> sorted(std::vector<PointSet> sets) {
  std::sort(sets.begin(), sets.end(), canonical_less);
  return sets;
}

std::vector<PointSet> all_balls(const RelationalSystem& sys) {
  std::vector<PointSet> balls;
  std::unordered_set<PointSet, PointSetHash> seen;
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (int n = sys.window().below(); n <= sys.window().above(); ++n) {
      PointSet b = ball(sys, x, n);
      if (seen.insert(b).second) balls.push_back(std::move(b));
    }
  return balls;
}

}  // namespace

PointSet ball(const RelationalSystem& sys, std::size_t x, int n) {
  PointSet out(sys.size());
  for (std::size_t y = 0; y < sys.size(); ++y)
    if (sys.grade(x, y) >= Grade(n)) out.insert(y);
  return out;
}

std::string_view to_string(HullMode mode) {
  return mode == HullMode::PaperCov ? "paper-cov" : "arbitrary-center";
}

PointSet intersect_balls(const RelationalSystem& sys, const std::vector<BallRef>& balls) {
  PointSet out = PointSet::full(sys.size());
  for (const auto& b : balls) out &= ball(sys, b.center, b.level);
  return out;
}

AdmissibleSet hull(const RelationalSystem& sys, const PointSet& a, HullMode mode) {
  require_nonempty(sys, a);
  AdmissibleSet out{PointSet::full(sys.size()), {}, mode};
  const PointSet everything = PointSet::full(sys.size());
  std::optional<BallRef> first_full;
  auto consider = [&](std::size_t c) {
    const BallRef ref{c, covering_level(sys, c, a)};
    const PointSet b = ball(sys, ref.center, ref.level);
    if (b == everything) {
      if (!first_full) first_full = ref;
      return;
    }
    out.points &= b;
    out.witness_balls.push_back(ref);
  };
  if (mode == HullMode::PaperCov) {
    for (std::size_t c : a.members()) consider(c);
  } else {
    for (std::size_t c = 0; c < sys.size(); ++c) consider(c);
  }
  if (out.witness_balls.empty()) out.witness_balls.push_back(*first_full);
  return out;
}

std::vector<PointSet> intersection_closure(std::vector<PointSet> seeds, std::size_t cap) {
  std::vector<PointSet> family;
  std::unordered_set<PointSet, PointSetHash> seen;
  auto add = [&](PointSet s) {
    if (s.empty() || !seen.insert(s).second) return;
    if (family.size() >= cap) {
      throw Error(ErrorCode::Resource, "admissible enumeration exceeded the cap of " + std::to_string(cap) + " sets");
    }
    family.push_back(std::move(s));
  };
  for (auto& s : seeds) add(std::move(s));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(family[i] & family[j]);
  return sorted(std::move(family));
}

std::vector<AdmissibleSet> enumerate_admissible(const RelationalSystem& sys, HullMode mode, std::size_t cap) {
  std::vector<AdmissibleSet> out;
  for (auto& s : intersection_closure(all_balls(sys), cap)) {
    AdmissibleSet h = hull(sys, s, mode);
    if (h.points == s) out.push_back(std::move(h));
    else if (mode == HullMode::ArbitraryCenter) throw std::logic_error("ball intersection is not closed");
  }
  return out;
}

RadiiReport radii(const RelationalSystem& sys, const PointSet& a) {
  require_nonempty(sys, a);
  RadiiReport rep;
  rep.diam_grade = Grade::top();
  std::optional<Grade> best;
  for (std::size_t x : a.members()) {
    Grade farthest = Grade::top();
    for (std::size_t y : a.members()) {
      if (y == x) continue;
      farthest = std::min(farthest, sys.grade(x, y));
      if (x < y) rep.diam_grade = std::min(rep.diam_grade, sys.grade(x, y));
    }
    rep.per_point.emplace_back(x, DyadicValue::from_grade(farthest));
    if (!best || farthest > *best) {
      best = farthest;
      rep.center = x;
    }
  }
  rep.cheb_grade = *best;
  rep.cheb_radius = DyadicValue::from_grade(rep.cheb_grade);
  rep.diameter = DyadicValue::from_grade(rep.diam_grade);
  return rep;
}

NormalityCriteria normality_criteria(const RelationalSystem& sys, const PointSet& a) {
  require_nonempty(sys, a);
  if (a.count() < 2) throw Error(ErrorCode::UndefinedInput, "normality is only asked of sets with two or more points");
  NormalityCriteria c;
  const auto members = a.members();

  const RadiiReport r = radii(sys, a);
  c.by_grades = r.cheb_grade > r.diam_grade;

  std::optional<DyadicValue> cheb;
  DyadicValue diam;
  for (std::size_t x : members) {
    DyadicValue rx;
    for (std::size_t y : members) {
      rx = std::max(rx, delta(sys, x, y));
      diam = std::max(diam, delta(sys, x, y));
    }
    if (!cheb || rx < *cheb) cheb = rx;
  }
  c.by_distances = *cheb < diam;

  const Window w = sys.window();
  c.r_e_top = w.below();
  c.delta_e_top = w.below();
  for (int n = w.below(); n <= w.above(); ++n) {
    const bool centred = std::any_of(members.begin(), members.end(),
                                     [&](std::size_t x) { return a.is_subset_of(ball(sys, x, n)); });
    if (centred) c.r_e_top = n;
    const Relation level = expand_level(sys, n);
    bool square = true;
    for (std::size_t x : members) square = square && a.is_subset_of(level.row(x));
    if (square) c.delta_e_top = n;
  }
  c.by_relations = c.r_e_top > c.delta_e_top;
  return c;
}

std::string_view to_string(StructureProperty p) {
  switch (p) {
    case StructureProperty::Compact: return "compact";
    case StructureProperty::Normal: return "normal";
    case StructureProperty::SphericallyComplete: return "spherically-complete";
  }
  return "?";
}

StructureReport check_normal_structure(const RelationalSystem& sys, HullMode mode, std::size_t cap) {
  StructureReport rep{StructureProperty::Normal};
  for (const auto& a : enumerate_admissible(sys, mode, cap)) {
    if (a.points.count() < 2) continue;
    ++rep.examined;
    const auto crit = normality_criteria(sys, a.points);
    if (!crit.agree()) throw std::logic_error("normality criteria disagree");
    if (!crit.by_grades) {
      rep.holds = false;
      rep.witness = a.points;
      rep.note = "admissible set with Chebyshev radius equal to its diameter";
      return rep;
    }
  }
  if (rep.examined == 0) rep.note = "vacuous: no admissible set with two or more points";
  return rep;
}

StructureReport check_compact_structure(const RelationalSystem& sys, HullMode mode, std::size_t cap) {
  StructureReport rep{StructureProperty::Compact};
  std::vector<PointSet> family;
  for (auto& a : enumerate_admissible(sys, mode, cap)) family.push_back(std::move(a.points));

  // Every maximal chain of successive intersections ends in a minimal nonempty intersection.
  const auto closure = intersection_closure(family, cap);
  rep.examined = closure.size();
  std::vector<PointSet> atoms;
  for (const auto& t : closure) {
    const bool minimal = std::none_of(closure.begin(), closure.end(),
                                      [&](const PointSet& u) { return u.is_subset_of(t) && !(u == t); });
    if (minimal) atoms.push_back(t);
  }
  for (const auto& s : closure) {
    const bool ends_nonempty = std::any_of(atoms.begin(), atoms.end(), [&](const PointSet& t) {
      return !t.empty() && t.is_subset_of(s);
    });
    if (!ends_nonempty) {
      rep.holds = false;
      rep.witness_family = {s};
      break;
    }
  }
  // The subfamily of members through any point has that point in its total intersection.
  for (std::size_t p = 0; p < sys.size() && rep.holds; ++p) {
    PointSet total = PointSet::full(sys.size());
    std::vector<PointSet> through;
    for (const auto& a : family)
      if (a.contains(p)) {
        total &= a;
        through.push_back(a);
      }
    if (total.empty()) {
      rep.holds = false;
      rep.witness_family = std::move(through);
    }
  }
  rep.note = "finite ground set: FIP automatic";
  return rep;
}

StructureReport check_spherical_completeness(const RelationalSystem& sys) {
  StructureReport rep{StructureProperty::SphericallyComplete};
  struct LevelledBall {
    PointSet points;
    int level;
  };
  std::vector<LevelledBall> balls;
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (int n = sys.window().below(); n <= sys.window().above(); ++n) {
      PointSet b = ball(sys, x, n);
      const bool dup = std::any_of(balls.begin(), balls.end(),
                                   [&](const LevelledBall& o) { return o.level == n && o.points == b; });
      if (!dup) balls.push_back({std::move(b), n});
    }
  rep.examined = balls.size();
  // A chain descends to smaller-or-equal balls at larger-or-equal levels; check where chains end.
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const bool minimal = std::none_of(balls.begin(), balls.end(), [&](const LevelledBall& o) {
      return &o != &balls[i] && o.points.is_subset_of(balls[i].points) && o.level >= balls[i].level &&
             !(o.points == balls[i].points && o.level == balls[i].level);
    });
    if (minimal && balls[i].points.empty()) {
      rep.holds = false;
      rep.witness_family = {balls[i].points};
    }
  }
  rep.note = "finite ground set: every ball chain stabilises, so spherical completeness is automatic";
  return rep;
}

PointSet min_distance_clique(const RelationalSystem& sys) {
  const std::size_t n = sys.size();
  PointSet clique(n);
  if (n < 2) return clique;
  int top = sys.window().below();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) top = std::max(top, sys.grade(x, y).level());
  for (std::size_t z = 0; z < n; ++z) {
    bool fits = true;
    for (std::size_t m : clique.members()) fits = fits && sys.grade(z, m) == Grade(top);
    if (!fits) continue;
    if (clique.empty()) {
      // Seed only with a point that has a partner at the top grade.
      bool partner = false;
      for (std::size_t y = 0; y < n; ++y) partner = partner || (y != z && sys.grade(z, y) == Grade(top));
      if (!partner) continue;
    }
    clique.insert(z);
  }
  return clique;
}

PointSet metric_hull(const RelationalSystem& sys, const PointSet& a, HullMode mode) {
  require_nonempty(sys, a);
  PointSet out = PointSet::full(sys.size());
  auto consider = [&](std::size_t c) {
    DyadicValue r;
    for (std::size_t y : a.members()) r = std::max(r, delta(sys, c, y));
    PointSet b(sys.size());
    for (std::size_t y = 0; y < sys.size(); ++y)
      if (delta(sys, c, y) <= r) b.insert(y);
    out &= b;
  };
  if (mode == HullMode::PaperCov) {
    for (std::size_t c : a.members()) consider(c);
  } else {
    for (std::size_t c = 0; c < sys.size(); ++c) consider(c);
  }
  return out;
}

std::vector<PointSet> enumerate_admissible_metric(const RelationalSystem& sys, HullMode mode,
                                                  const std::vector<Rational>& radii, std::size_t cap) {
  std::vector<PointSet> seeds;
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (const auto& r : radii) {
      if (r <= 0) continue;
      PointSet b(sys.size());
      for (std::size_t y = 0; y < sys.size(); ++y)
        if (delta(sys, x, y).to_rational() <= r) b.insert(y);
      seeds.push_back(std::move(b));
    }
  auto closure = intersection_closure(std::move(seeds), cap);
  if (mode == HullMode::ArbitraryCenter) return closure;
  std::vector<PointSet> out;
  for (auto& s : closure)
    if (metric_hull(sys, s, mode) == s) out.push_back(std::move(s));
  return out;
}

std::vector<Rational> dyadic_breakpoints(const Window& window) {
  std::vector<Rational> out;
  for (int n = window.lo - 2; n <= window.hi + 2; ++n) out.push_back(DyadicValue::pow2(-n).to_rational());
  return out;
}

IntervalLevelWitness interval_level_witness(const DyadicValue& width) {
  if (width.is_zero()) throw Error(ErrorCode::UndefinedInput, "interval of zero width");
  IntervalLevelWitness w;
  // floor(log2(1 / width)) == -ceil(log2(width))
  w.level = 1 - width.ceil_log2();
  const DyadicValue radius = DyadicValue::pow2(-w.level);
  w.covers = width.scaled_pow2(-1) <= radius;
  w.separates = radius < width;
  return w;
}

}  // namespace gradedrel
