#include "gradedrel/harness.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gradedrel/bridge.hpp"
#include "gradedrel/errors.hpp"
#include "gradedrel/hull.hpp"

namespace gradedrel {

namespace {

using Rng = std::mt19937_64;

// Inclusive uniform integer; rejection sampling keeps it identical across standard libraries.
long uniform(Rng& rng, long lo, long hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return lo + static_cast<long>(v % range);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr int kTopLevel = INT_MAX / 4;

std::vector<int> level_table(const RelationalSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<int> g(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) g[x * n + y] = x == y ? kTopLevel : sys.grade(x, y).level();
  return g;
}

RelationalSystem from_level_table(const RelationalSystem& like, const std::vector<int>& g) {
  const std::size_t n = like.size();
  GradeMatrix grades(n, Grade(like.window().below()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) grades.set(x, y, Grade(g[x * n + y]));
  return RelationalSystem(like.labels(), like.window(), std::move(grades));
}

std::string describe(const Triple& t) {
  return "(" + std::to_string(t.x) + ", " + std::to_string(t.y) + " via " + std::to_string(t.z) + ")";
}

// Distinct positive radii: every dyadic breakpoint plus off-grid rationals between them.
std::vector<Rational> sample_radii(const Window& w) {
  std::vector<Rational> out = dyadic_breakpoints(w);
  for (int n = w.lo - 2; n <= w.hi + 2; ++n) {
    const Rational p = DyadicValue::pow2(-n).to_rational();
    out.push_back(p * Rational(3, 4));
    out.push_back(p * Rational(5, 7));
  }
  return out;
}

}  // namespace

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::None: return "none";
    case Constraint::R9: return "r9";
    case Constraint::R10: return "r10";
    case Constraint::Transitive: return "transitive";
  }
  return "?";
}

std::string_view to_string(MapKind k) { return k == MapKind::Any ? "any" : "homomorphism"; }

void GenParams::validate() const {
  if (min_points < 1 || min_points > max_points) throw Error(ErrorCode::Usage, "empty point-count range");
  if (lo_min > lo_max) throw Error(ErrorCode::Usage, "empty window-start range");
  if (span_min < 1 || span_min > span_max) throw Error(ErrorCode::Usage, "window span range must be nonempty and >= 1");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ull));
}

RelationalSystem repair(const RelationalSystem& sys, Constraint constraint) {
  if (constraint == Constraint::None) return sys;
  const std::size_t n = sys.size();
  const int lo = sys.window().lo;
  auto g = level_table(sys);
  auto at = [&](std::size_t x, std::size_t y) -> int& { return g[x * n + y]; };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        int need = at(x, y);
        for (std::size_t z = 0; z < n; ++z) {
          if (constraint == Constraint::R10) {
            for (std::size_t w = 0; w < n; ++w) {
              const int m = std::min({at(x, z), at(z, w), at(w, y)});
              if (m >= lo && m < kTopLevel) need = std::max(need, m - 1);
            }
            continue;
          }
          if (z == x || z == y) continue;
          const int m = std::min(at(x, z), at(z, y));
          if (constraint == Constraint::Transitive) need = std::max(need, m);
          else if (m >= lo) need = std::max(need, m - 1);
        }
        if (need > at(x, y)) {
          at(x, y) = at(y, x) = need;
          changed = true;
        }
      }
  }
  RelationalSystem out = from_level_table(sys, g);
  const AxiomId id = constraint == Constraint::R9 ? AxiomId::R9
                     : constraint == Constraint::R10 ? AxiomId::R10
                                                     : AxiomId::Transitive;
  if (!check_axiom(out, id).holds) throw std::logic_error("repair did not reach its constraint");
  return out;
}

RelationalSystem gen_system(std::uint64_t seed, const GenParams& params) {
  params.validate();
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(
      uniform(rng, static_cast<long>(params.min_points), static_cast<long>(params.max_points)));
  const int lo = static_cast<int>(uniform(rng, params.lo_min, params.lo_max));
  const int span = static_cast<int>(uniform(rng, params.span_min, params.span_max));
  const Window w{lo, lo + span - 1};
  GradeMatrix grades(n, Grade(w.below()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) grades.set(x, y, Grade(static_cast<int>(uniform(rng, w.below(), w.hi))));
  return repair(RelationalSystem::unlabelled(w, std::move(grades)), params.constraint);
}

SelfMap gen_self_map(std::uint64_t seed, const RelationalSystem& sys, MapKind kind, int restarts) {
  Rng rng(seed);
  const std::size_t n = sys.size();
  const long last = static_cast<long>(n) - 1;
  if (kind == MapKind::Any) {
    std::vector<std::size_t> image(n);
    for (auto& v : image) v = static_cast<std::size_t>(uniform(rng, 0, last));
    return SelfMap(std::move(image));
  }
  constexpr std::size_t kUnset = SIZE_MAX;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(i) - 1))]);

    std::vector<std::size_t> image(n, kUnset);
    bool dead_end = false;
    for (std::size_t p : order) {
      std::vector<std::size_t> candidates;
      for (std::size_t v = 0; v < n; ++v) {
        bool ok = true;
        for (std::size_t q = 0; q < n && ok; ++q)
          if (image[q] != kUnset) ok = sys.grade(v, image[q]) >= sys.grade(p, q);
        if (ok) candidates.push_back(v);
      }
      if (candidates.empty()) {
        dead_end = true;
        break;
      }
      image[p] = candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(candidates.size()) - 1))];
    }
    if (dead_end) continue;
    SelfMap t(std::move(image));
    if (is_homomorphism(sys, t).holds) return t;
  }
  return SelfMap::identity(n);
}

namespace {

constexpr std::array<ClaimInfo, 11> kCatalog{{
    {ClaimId::Eq1Roundtrip, "eq1-roundtrip",
     "each level is recovered from the induced distance as {delta <= 2^-n}", Constraint::None, false},
    {ClaimId::HomomorphismIffNonexpansive, "thm-homo-iff-nonexp",
     "a self-map preserves every level iff it is nonexpansive for delta", Constraint::None, true},
    {ClaimId::R9TwoInframetric, "prop-r9-2-inframetric", "R_n^2 within R_(n-1) makes delta a 2-inframetric",
     Constraint::R9, false},
    {ClaimId::R10Metric, "prop-r10-metric", "R_n^3 within R_(n-1) makes delta a metric", Constraint::R10, false},
    {ClaimId::TransitiveUltrametric, "transitive-ultrametric",
     "every level is an equivalence relation iff delta is an ultrametric", Constraint::Transitive, false},
    {ClaimId::KsDichotomy, "thm-ks-dichotomy",
     "for equivalence levels and a homomorphism, every ball B(x, R_mu(x,Tx)) holds a fixed point or a minimal "
     "invariant ball",
     Constraint::Transitive, true},
    {ClaimId::RegularFixedPoint, "thm-regular-fp",
     "for equivalence levels and a regular homomorphism, every invariant ball holds a fixed point",
     Constraint::Transitive, true},
    {ClaimId::AsymptoticFixedPoint, "thm-asymptotic-fp",
     "for equivalence levels and an asymptotically regular homomorphism, every invariant ball holds a fixed point",
     Constraint::Transitive, true},
    {ClaimId::FiniteNormalStructureExists, "finite-normal-structure-exists",
     "no finite system with two or more points has normal structure (min-distance clique witness)",
     Constraint::None, false},
    {ClaimId::HullEquivalence, "hull-equivalence",
     "admissible sets generated by metric balls of any radius equal those generated by relational balls",
     Constraint::None, false},
    {ClaimId::RadiiTranslation, "radii-translation",
     "radius below diameter iff g_r > g_delta iff delta_E strictly inside r_E, on every admissible set",
     Constraint::None, false},
}};

}  // namespace

std::span<const ClaimInfo> claim_catalog() { return kCatalog; }

const ClaimInfo& claim_info(ClaimId id) {
  for (const auto& c : kCatalog)
    if (c.id == id) return c;
  throw Error(ErrorCode::Usage, "unknown claim");
}

std::optional<ClaimId> parse_claim_id(std::string_view name) {
  for (const auto& c : kCatalog)
    if (c.name == name) return c.id;
  return std::nullopt;
}

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Vacuous: return "vacuous";
  }
  return "?";
}

std::string_view to_string(VerdictOutcome o) {
  return o == VerdictOutcome::NoCounterexample ? "no-counterexample" : "counterexample";
}

Instance generate_instance(ClaimId claim, std::uint64_t seed, std::uint64_t index, const GenParams& params) {
  const ClaimInfo& info = claim_info(claim);
  GenParams p = params;
  p.constraint = info.constraint;
  p.map_kind = MapKind::Homomorphism;
  switch (claim) {
    case ClaimId::TransitiveUltrametric:
      // Both directions of the equivalence need non-transitive samples too.
      p.constraint = index % 2 == 0 ? Constraint::Transitive : Constraint::None;
      break;
    case ClaimId::HomomorphismIffNonexpansive:
      p.map_kind = index % 2 == 0 ? MapKind::Any : MapKind::Homomorphism;
      break;
    case ClaimId::FiniteNormalStructureExists:
      p.min_points = std::max<std::size_t>(p.min_points, 2);
      p.max_points = std::max(p.max_points, p.min_points);
      break;
    default:
      break;
  }
  const std::uint64_t s = trial_seed(seed, index);
  Instance inst{gen_system(s, p), std::nullopt};
  if (info.needs_map) inst.map = gen_self_map(splitmix64(s), inst.system, p.map_kind);
  return inst;
}

ClaimResult check_claim(ClaimId claim, const Instance& inst) {
  const RelationalSystem& sys = inst.system;
  const ClaimInfo& info = claim_info(claim);
  if (info.needs_map && !inst.map) throw Error(ErrorCode::Usage, "claim " + std::string(info.name) + " needs a map");
  std::ostringstream locus;

  switch (claim) {
    case ClaimId::Eq1Roundtrip:
      for (int n = sys.window().below(); n <= sys.window().above(); ++n)
        if (reconstruct_level(sys, n) != expand_level(sys, n)) return {ClaimStatus::Fail, "level " + std::to_string(n)};
      return {};

    case ClaimId::HomomorphismIffNonexpansive: {
      const auto h = is_homomorphism(sys, *inst.map);
      const auto d = is_nonexpansive(sys, *inst.map);
      if (h.holds != d.holds || h.witness != d.witness) return {ClaimStatus::Fail, "checks disagree"};
      return {};
    }

    case ClaimId::R9TwoInframetric: {
      if (sys.size() < 2 || !check_axiom(sys, AxiomId::R9).holds) return {ClaimStatus::Vacuous, "r9 fails"};
      const auto c = minimal_inframetric_constant(sys);
      if (c.value > DyadicValue::pow2(1)) {
        locus << "C = " << c.value << " at " << describe(*c.witness);
        return {ClaimStatus::Fail, locus.str()};
      }
      return {};
    }

    case ClaimId::R10Metric: {
      if (!check_axiom(sys, AxiomId::R10).holds) return {ClaimStatus::Vacuous, "r10 fails"};
      const auto rep = classify(sys);
      if (!rep.triangle_holds) {
        locus << "triangle " << describe(*rep.triangle_witness) << ": " << rep.triangle_lhs << " > "
              << rep.triangle_rhs;
        return {ClaimStatus::Fail, locus.str()};
      }
      return {};
    }

    case ClaimId::TransitiveUltrametric: {
      const bool transitive = check_axiom(sys, AxiomId::Transitive).holds;
      const bool strong = classify(sys).strong_triangle_holds;
      if (transitive != strong) {
        locus << "transitive=" << transitive << " strong-triangle=" << strong;
        return {ClaimStatus::Fail, locus.str()};
      }
      return {};
    }

    case ClaimId::KsDichotomy: {
      const auto rep = ks_dichotomy(sys, *inst.map);
      if (!rep.hypotheses_met) return {ClaimStatus::Vacuous, "hypotheses unmet"};
      for (const auto& row : rep.rows)
        if (row.outcome == DichotomyOutcome::Neither) return {ClaimStatus::Fail, "ball at point " + std::to_string(row.point)};
      return {};
    }

    case ClaimId::RegularFixedPoint:
    case ClaimId::AsymptoticFixedPoint: {
      const auto variant =
          claim == ClaimId::RegularFixedPoint ? RegularityVariant::Regular : RegularityVariant::Asymptotic;
      const auto rep = regular_fixed_point(sys, *inst.map, variant);
      if (!rep.hypotheses_met()) return {ClaimStatus::Vacuous, "hypotheses unmet"};
      for (const auto& row : rep.invariant_balls)
        if (row.fixed.empty()) {
          locus << "invariant ball (" << row.ball.center << ", " << row.ball.level << ") has no fixed point";
          return {ClaimStatus::Fail, locus.str()};
        }
      return {};
    }

    case ClaimId::FiniteNormalStructureExists: {
      if (sys.size() < 2) return {ClaimStatus::Vacuous, "fewer than two points"};
      for (HullMode mode : {HullMode::PaperCov, HullMode::ArbitraryCenter}) {
        if (check_normal_structure(sys, mode).holds) {
          return {ClaimStatus::Fail, "normal structure in " + std::string(to_string(mode)) + " mode"};
        }
        const PointSet clique = min_distance_clique(sys);
        const auto r = radii(sys, clique);
        if (hull(sys, clique, mode).points != clique || r.cheb_grade != r.diam_grade || r.cheb_radius != r.diameter) {
          return {ClaimStatus::Fail, "min-distance clique is not a radius == diameter admissible set"};
        }
      }
      return {};
    }

    case ClaimId::HullEquivalence: {
      const auto radii_sample = sample_radii(sys.window());
      for (std::size_t x = 0; x < sys.size(); ++x)
        for (const auto& r : radii_sample)
          if (!metric_ball_collapse(sys, x, r).coincide()) {
            return {ClaimStatus::Fail, "ball at " + std::to_string(x) + " radius " + rational_to_string(r)};
          }
      for (HullMode mode : {HullMode::PaperCov, HullMode::ArbitraryCenter}) {
        std::vector<PointSet> relational;
        for (auto& a : enumerate_admissible(sys, mode)) relational.push_back(std::move(a.points));
        if (enumerate_admissible_metric(sys, mode, radii_sample) != relational) {
          return {ClaimStatus::Fail, "families differ in " + std::string(to_string(mode)) + " mode"};
        }
      }
      return {};
    }

    case ClaimId::RadiiTranslation: {
      for (HullMode mode : {HullMode::PaperCov, HullMode::ArbitraryCenter})
        for (const auto& a : enumerate_admissible(sys, mode)) {
          if (a.points.count() < 2) continue;
          const auto c = normality_criteria(sys, a.points);
          if (!c.agree() || c.r_e_top < c.delta_e_top) {
            return {ClaimStatus::Fail, "criteria disagree on a " + std::to_string(a.points.count()) + "-point set"};
          }
        }
      return {};
    }
  }
  throw Error(ErrorCode::Usage, "unknown claim");
}

Instance shrink(const Instance& instance, const FailurePredicate& still_fails) {
  Instance cur = instance;
  bool changed = true;
  while (changed) {
    changed = false;

    // 1. Drop a point, when the map restricts to the remaining points.
    for (std::size_t p = cur.system.size(); p-- > 0 && !changed;) {
      if (cur.system.size() <= 1) break;
      if (cur.map) {
        bool targeted = false;
        for (std::size_t q = 0; q < cur.map->size(); ++q) targeted = targeted || (q != p && (*cur.map)(q) == p);
        if (targeted) continue;
      }
      std::vector<std::size_t> keep;
      for (std::size_t q = 0; q < cur.system.size(); ++q)
        if (q != p) keep.push_back(q);
      Instance next{restrict_to(cur.system, keep), std::nullopt};
      if (cur.map) {
        std::vector<std::size_t> image;
        for (std::size_t q : keep) {
          const std::size_t tq = (*cur.map)(q);
          image.push_back(tq > p ? tq - 1 : tq);
        }
        next.map = SelfMap(std::move(image));
      }
      if (still_fails(next)) {
        cur = std::move(next);
        changed = true;
      }
    }
    if (changed) continue;

    // 2. Narrow the window from either end, clamping grades into the new range.
    const Window w = cur.system.window();
    const std::array<Window, 2> narrower{Window{w.lo, w.hi - 1}, Window{w.lo + 1, w.hi}};
    for (const Window& nw : narrower) {
      if (nw.lo > nw.hi) continue;
      const std::size_t n = cur.system.size();
      GradeMatrix grades(n, Grade(nw.below()));
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
          grades.set(x, y, Grade(std::clamp(cur.system.grade(x, y).level(), nw.below(), nw.hi)));
      Instance next{RelationalSystem(cur.system.labels(), nw, std::move(grades)), cur.map};
      if (still_fails(next)) {
        cur = std::move(next);
        changed = true;
        break;
      }
    }
    if (changed) continue;

    // 3. Lower one grade toward lo-1.
    const std::size_t n = cur.system.size();
    for (std::size_t x = 0; x < n && !changed; ++x)
      for (std::size_t y = x + 1; y < n && !changed; ++y) {
        const int g = cur.system.grade(x, y).level();
        if (g <= cur.system.window().below()) continue;
        GradeMatrix grades = cur.system.grades();
        grades.set(x, y, Grade(g - 1));
        Instance next{RelationalSystem(cur.system.labels(), cur.system.window(), std::move(grades)), cur.map};
        if (still_fails(next)) {
          cur = std::move(next);
          changed = true;
        }
      }
  }
  return cur;
}

Verdict falsify(ClaimId claim, std::size_t trials, std::uint64_t seed, const GenParams& params) {
  Verdict v;
  v.claim = claim;
  v.trials = trials;
  v.seed = seed;
  for (std::size_t i = 0; i < trials; ++i) {
    Instance inst = generate_instance(claim, seed, i, params);
    const ClaimResult r = check_claim(claim, inst);
    if (r.status == ClaimStatus::Vacuous) ++v.vacuous_trials;
    if (r.status != ClaimStatus::Fail) continue;

    v.outcome = VerdictOutcome::Counterexample;
    v.trial_index = i;
    v.original_points = inst.system.size();
    v.instance = shrink(inst, [claim](const Instance& c) { return check_claim(claim, c).status == ClaimStatus::Fail; });
    v.locus = check_claim(claim, *v.instance).locus;
    return v;
  }
  if (claim == ClaimId::FiniteNormalStructureExists) {
    v.note = "normal structure never holds on a finite system; fixed-point theorems assuming it are vacuous here";
  }
  return v;
}

}  // namespace gradedrel
