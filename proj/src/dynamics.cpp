#include "gradedrel/dynamics.hpp"

#include <algorithm>
#include <unordered_set>

#include "gradedrel/bridge.hpp"
#include "gradedrel/errors.hpp"

namespace gradedrel {

namespace {

void require_same_size(const RelationalSystem& sys, const SelfMap& t) {
  if (t.size() != sys.size()) {
    throw Error(ErrorCode::StructuralInput, "map on " + std::to_string(t.size()) + " points for a system of " +
                                                std::to_string(sys.size()));
  }
}

}  // namespace

SelfMap::SelfMap(std::vector<std::size_t> image) : image_(std::move(image)) {
  for (std::size_t x = 0; x < image_.size(); ++x)
    if (image_[x] >= image_.size()) {
      throw Error(ErrorCode::RejectedInput, "image of " + std::to_string(x) + " is out of range");
    }
}

SelfMap SelfMap::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  return SelfMap(std::move(image));
}

PointSet SelfMap::apply(const PointSet& s) const {
  PointSet out(s.universe());
  for (std::size_t x : s.members()) out.insert(image_[x]);
  return out;
}

MapCheck is_homomorphism(const RelationalSystem& sys, const SelfMap& t) {
  require_same_size(sys, t);
  MapCheck out;
  int worst_drop = 0;
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (std::size_t y = x + 1; y < sys.size(); ++y) {
      const Grade before = sys.grade(x, y);
      const Grade after = sys.grade(t(x), t(y));
      if (!(after < before)) continue;
      const int drop = before.level() - after.level();
      if (drop > worst_drop) {
        worst_drop = drop;
        out = {false, PairWitness{x, y, before, after}};
      }
    }
  return out;
}

MapCheck is_nonexpansive(const RelationalSystem& sys, const SelfMap& t) {
  require_same_size(sys, t);
  MapCheck out;
  // Worst stretch d(Tx, Ty) / d(x, y), kept as a fraction and compared by cross-multiplication.
  DyadicValue worst_num, worst_den = DyadicValue::pow2(0);
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (std::size_t y = x + 1; y < sys.size(); ++y) {
      const DyadicValue before = delta(sys, x, y);
      const DyadicValue after = delta(sys, t(x), t(y));
      if (!(after > before) || !(after * worst_den > worst_num * before)) continue;
      worst_num = after;
      worst_den = before;
      out = {false, PairWitness{x, y, mu(sys, x, y), mu(sys, t(x), t(y))}};
    }
  return out;
}

PointSet fixed_points(const SelfMap& t) {
  PointSet out(t.size());
  for (std::size_t x = 0; x < t.size(); ++x)
    if (t(x) == x) out.insert(x);
  return out;
}

std::size_t Orbit::iterate(std::size_t k) const {
  if (k < tail.size()) return tail[k];
  return cycle[(k - tail.size()) % cycle.size()];
}

Grade Orbit::step_grade(std::size_t k) const {
  if (k < tail.size()) return grade_trace[k];
  return grade_trace[tail.size() + (k - tail.size()) % cycle.size()];
}

Orbit orbit(const RelationalSystem& sys, const SelfMap& t, std::size_t x) {
  require_same_size(sys, t);
  if (x >= sys.size()) throw Error(ErrorCode::IndexOutOfRange, "orbit start out of range");
  std::vector<std::size_t> seen_at(sys.size(), sys.size());
  std::vector<std::size_t> path;
  std::size_t cur = x;
  while (seen_at[cur] == sys.size()) {
    seen_at[cur] = path.size();
    path.push_back(cur);
    cur = t(cur);
  }
  Orbit o;
  o.start = x;
  o.tail.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(seen_at[cur]));
  o.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(seen_at[cur]), path.end());
  for (std::size_t p : path) o.grade_trace.push_back(sys.grade(p, t(p)));
  return o;
}

RegularityReport regularity_report(const RelationalSystem& sys, const SelfMap& t, std::size_t x) {
  const Orbit o = orbit(sys, t, x);
  RegularityReport rep;
  rep.point = x;
  if (t(x) == x) {
    rep.is_fixed = rep.regular = rep.asymptotically_regular = rep.weak_regular = rep.classical_asymptotic = true;
    return rep;
  }
  const long m = sys.grade(x, t(x)).level();
  const std::size_t tail = o.tail.size();
  const std::size_t period = o.cycle.size();
  const bool settles = period == 1;  // the orbit ends on a fixed point
  auto at_least = [](Grade g, long bound) { return g.is_top() || g.level() >= bound; };

  // All n >= n0 are covered by n in [n0, max(n0, tail) + period) because the trace is periodic past the tail.
  const Window w = sys.window();
  const long limit = static_cast<long>(tail) + (w.hi - w.below()) + 2;
  for (long n0 = 1; n0 <= limit && !rep.regular; ++n0) {
    const std::size_t end = std::max<std::size_t>(static_cast<std::size_t>(n0), tail) + period;
    bool ok = true;
    for (std::size_t n = static_cast<std::size_t>(n0); n < end && ok; ++n) ok = at_least(o.step_grade(n), m + n0);
    if (ok) {
      rep.regular = true;
      rep.regular_offset = static_cast<int>(n0);
    }
  }

  if (settles) {
    for (std::size_t n0 = 0; n0 <= tail; ++n0) {
      bool ok = true;
      for (std::size_t n = n0; n < tail && ok; ++n) ok = at_least(o.step_grade(n), m + static_cast<long>(n));
      if (ok) {
        rep.asymptotically_regular = true;
        rep.asymptotic_offset = static_cast<int>(n0);
        break;
      }
    }
  }

  DyadicValue cycle_sup;
  for (std::size_t c : o.cycle) cycle_sup = std::max(cycle_sup, delta(sys, c, t(c)));
  rep.weak_regular = cycle_sup < delta(sys, x, t(x));
  rep.classical_asymptotic = settles;
  return rep;
}

std::vector<AdmissibleSet> minimal_invariant_admissible(const RelationalSystem& sys, const SelfMap& t,
                                                        HullMode mode, std::size_t cap) {
  const auto hom = is_homomorphism(sys, t);
  if (!hom.holds) {
    throw Error(ErrorCode::Precondition, "map is not a homomorphism: pair (" + std::to_string(hom.witness->x) + "," +
                                             std::to_string(hom.witness->y) + ") grade " +
                                             hom.witness->before.to_string() + " drops to " +
                                             hom.witness->after.to_string());
  }
  std::vector<AdmissibleSet> invariant;
  for (auto& a : enumerate_admissible(sys, mode, cap))
    if (t.apply(a.points).is_subset_of(a.points)) invariant.push_back(std::move(a));
  std::vector<AdmissibleSet> out;
  for (const auto& a : invariant) {
    const bool minimal = std::none_of(invariant.begin(), invariant.end(), [&](const AdmissibleSet& b) {
      return b.points.is_subset_of(a.points) && !(b.points == a.points);
    });
    if (minimal) out.push_back(a);
  }
  return out;
}

std::vector<BallRef> minimal_invariant_balls(const RelationalSystem& sys, const SelfMap& t) {
  require_same_size(sys, t);
  std::vector<BallRef> out;
  // Level lo-1 is a genuine level of the family (every pair below the window), so it is included.
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (int n = sys.window().below(); n <= sys.window().hi; ++n) {
      const PointSet b = ball(sys, x, n);
      if (!t.apply(b).is_subset_of(b)) continue;
      const auto members = b.members();
      const bool exact = std::all_of(members.begin(), members.end(),
                                     [&](std::size_t y) { return sys.grade(y, t(y)) == Grade(n); });
      if (exact) out.push_back({x, n});
    }
  return out;
}

std::string_view to_string(DichotomyOutcome o) {
  switch (o) {
    case DichotomyOutcome::ContainsFixedPoint: return "contains-fixed-point";
    case DichotomyOutcome::ContainsMinimalInvariantBall: return "contains-minimal-invariant-ball";
    case DichotomyOutcome::Neither: return "NEITHER";
  }
  return "?";
}

bool DichotomyReport::has_neither() const {
  return std::any_of(rows.begin(), rows.end(), [](const DichotomyRow& r) { return r.outcome == DichotomyOutcome::Neither; });
}

DichotomyReport ks_dichotomy(const RelationalSystem& sys, const SelfMap& t) {
  DichotomyReport rep;
  rep.hypotheses_met = check_axiom(sys, AxiomId::Transitive).holds && is_homomorphism(sys, t).holds;
  rep.note = rep.hypotheses_met
                 ? "hypotheses: per-level transitivity and homomorphism; spherical completeness is automatic on a finite ground set"
                 : "hypotheses unmet: needs per-level transitivity and a homomorphism";
  const PointSet fixed = fixed_points(t);
  const auto minimal = minimal_invariant_balls(sys, t);
  for (std::size_t x = 0; x < sys.size(); ++x) {
    if (t(x) == x) continue;
    DichotomyRow row;
    row.point = x;
    row.ball = {x, sys.grade(x, t(x)).level()};
    const PointSet b = ball(sys, x, row.ball.level);
    const PointSet hit = b & fixed;
    if (!hit.empty()) {
      row.outcome = DichotomyOutcome::ContainsFixedPoint;
      row.fixed_point = hit.first();
    } else {
      for (const auto& m : minimal)
        if (ball(sys, m.center, m.level).is_subset_of(b)) {
          row.outcome = DichotomyOutcome::ContainsMinimalInvariantBall;
          row.invariant_ball = m;
          break;
        }
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::string_view to_string(RegularityVariant v) {
  return v == RegularityVariant::Regular ? "regular" : "asymptotic";
}

bool RegularFixedPointReport::falsified() const {
  return hypotheses_met() && std::any_of(invariant_balls.begin(), invariant_balls.end(),
                                         [](const InvariantBallRow& r) { return r.fixed.empty(); });
}

RegularFixedPointReport regular_fixed_point(const RelationalSystem& sys, const SelfMap& t, RegularityVariant variant) {
  RegularFixedPointReport rep;
  rep.variant = variant;
  rep.transitive = check_axiom(sys, AxiomId::Transitive).holds;
  rep.homomorphism = is_homomorphism(sys, t).holds;
  rep.regularity = true;
  for (std::size_t x = 0; x < sys.size() && rep.regularity; ++x) {
    const auto r = regularity_report(sys, t, x);
    rep.regularity = variant == RegularityVariant::Regular ? r.regular : r.asymptotically_regular;
  }
  const PointSet fixed = fixed_points(t);
  std::unordered_set<PointSet, PointSetHash> seen;
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (int n = sys.window().below(); n <= sys.window().above(); ++n) {
      PointSet b = ball(sys, x, n);
      if (!t.apply(b).is_subset_of(b) || !seen.insert(b).second) continue;
      rep.invariant_balls.push_back({{x, n}, b, b & fixed});
    }
  return rep;
}

}  // namespace gradedrel
