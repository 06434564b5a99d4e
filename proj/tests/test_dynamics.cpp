#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradedrel/errors.hpp"
#include "gradedrel/dynamics.hpp"
#include "gradedrel/harness.hpp"
#include "support.hpp"

using namespace gradedrel;
using namespace fixtures;

namespace {

bool oracle_homomorphism(const RelationalSystem& s, const SelfMap& t) {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      if (g(s, t(x), t(y)) < g(s, x, y)) return false;
  return true;
}

bool invariant(const SelfMap& t, const PointSet& b) { return t.apply(b).is_subset_of(b); }

std::vector<Grade> grades(std::initializer_list<int> levels, bool top_last) {
  std::vector<Grade> out(levels.begin(), levels.end());
  if (top_last) out.push_back(Grade::top());
  return out;
}

}  // namespace

TEST_CASE("self maps validate their images") {
  CHECK_THROWS_AS(SelfMap({0, 3, 1}), Error);
  CHECK(SelfMap::identity(3).image() == std::vector<std::size_t>{0, 1, 2});
  try {
    is_homomorphism(ex_a(), swap());
    FAIL("size mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StructuralInput);
  }
}

TEST_CASE("homomorphism and nonexpansive on the fixtures") {
  CHECK(is_homomorphism(ex_a(), reflection()).holds);
  CHECK(is_nonexpansive(ex_a(), reflection()).holds);
  CHECK(is_homomorphism(ex_c(), successor()).holds);
  CHECK(is_homomorphism(ex_b(), SelfMap::identity(3)).holds);
  CHECK(is_nonexpansive(ex_a(), SelfMap({2, 2, 2, 2, 2})).holds);

  const SelfMap collapse({0, 0, 0, 0, 4});
  const auto h = is_homomorphism(ex_a(), collapse);
  const auto ne = is_nonexpansive(ex_a(), collapse);
  CHECK_FALSE(h.holds);
  CHECK_FALSE(ne.holds);
  REQUIRE(ne.witness);
  CHECK(ne.witness->x == 3);
  CHECK(ne.witness->y == 4);
  CHECK(ne.witness->before == Grade(2));
  CHECK(ne.witness->after == Grade(0));
  CHECK(h.witness == ne.witness);
}

TEST_CASE("homomorphism and nonexpansive agree, witnesses included") {
  std::mt19937_64 rng(71);
  int failures = 0;
  for (int t = 0; t < 500; ++t) {
    const auto s = random_system(rng);
    const SelfMap m = t % 2 ? random_map(rng, s.size()) : gen_self_map(rng(), s, MapKind::Homomorphism);
    const auto h = is_homomorphism(s, m);
    const auto ne = is_nonexpansive(s, m);
    REQUIRE(h.holds == oracle_homomorphism(s, m));
    REQUIRE(h.holds == ne.holds);
    REQUIRE(h.witness == ne.witness);
    if (!h.holds) {
      ++failures;
      REQUIRE(dist(s, m(h.witness->x), m(h.witness->y)) > dist(s, h.witness->x, h.witness->y));
    }
  }
  CHECK(failures > 50);
}

TEST_CASE("fixed points") {
  CHECK(fixed_points(reflection()) == PointSet(5, {2}));
  CHECK(fixed_points(successor()) == PointSet(6, {5}));
  CHECK(fixed_points(SelfMap::identity(4)) == PointSet::full(4));
}

TEST_CASE("orbits") {
  const auto o = orbit(ex_c(), successor(), 0);
  CHECK(o.tail == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(o.cycle == std::vector<std::size_t>{5});
  CHECK(o.grade_trace == grades({0, 1, 2, 3, 4}, true));
  CHECK(o.iterate(40) == 5);
  CHECK(o.step_grade(9) == Grade::top());

  const auto r = orbit(ex_a(), reflection(), 0);
  CHECK(r.tail.empty());
  CHECK(r.cycle == std::vector<std::size_t>{0, 4});
  CHECK(r.iterate(3) == 4);

  CHECK(orbit(ex_a(), SelfMap::identity(5), 3).cycle == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(orbit(ex_a(), reflection(), 9), Error);

  std::mt19937_64 rng(73);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_system(rng);
    const SelfMap m = random_map(rng, s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
      const auto ob = orbit(s, m, x);
      std::size_t cur = x;
      for (std::size_t k = 0; k < 3 * s.size(); ++k) {
        REQUIRE(ob.iterate(k) == cur);
        REQUIRE(ob.step_grade(k) == s.grade(cur, m(cur)));
        cur = m(cur);
      }
      REQUIRE_FALSE(ob.cycle.empty());
      REQUIRE(m(ob.cycle.back()) == ob.cycle.front());
    }
  }
}

TEST_CASE("regularity on the fixtures") {
  for (std::size_t x = 0; x < 5; ++x) {
    const auto r = regularity_report(ex_c(), successor(), x);
    CHECK(r.asymptotically_regular);
    CHECK(r.asymptotic_offset == 0);
    CHECK(r.regular);
    CHECK(r.weak_regular);
    CHECK(r.classical_asymptotic);
  }
  const auto fixed = regularity_report(ex_c(), successor(), 5);
  CHECK(fixed.is_fixed);
  CHECK(fixed.regular);
  CHECK(fixed.asymptotically_regular);
  CHECK(fixed.weak_regular);

  const auto refl = regularity_report(ex_a(), reflection(), 0);
  CHECK_FALSE(refl.weak_regular);
  CHECK_FALSE(refl.regular);
  CHECK_FALSE(refl.asymptotically_regular);
  CHECK_FALSE(refl.classical_asymptotic);

  const auto sw = regularity_report(ex_e(), swap(), 0);
  CHECK_FALSE(sw.asymptotically_regular);
  CHECK_FALSE(sw.regular);
}

TEST_CASE("regularity hierarchy and offsets re-verify") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 300; ++t) {
    const auto s = random_system(rng);
    const SelfMap m = t % 2 ? random_map(rng, s.size()) : gen_self_map(rng(), s, MapKind::Homomorphism);
    for (std::size_t x = 0; x < s.size(); ++x) {
      const auto r = regularity_report(s, m, x);
      if (r.asymptotically_regular) REQUIRE(r.regular);
      if (r.regular) REQUIRE(r.weak_regular);
      if (r.is_fixed) continue;
      const auto ob = orbit(s, m, x);
      const int base = g(s, x, m(x));
      auto grade_at = [&](std::size_t n) {
        const Grade v = ob.step_grade(n);
        return v.is_top() ? kTop : v.level();
      };
      // Every n up to a horizon well past the tail plus several periods.
      const std::size_t horizon = 4 * s.size() + 16;
      if (r.regular) {
        const int n0 = *r.regular_offset;
        REQUIRE(n0 >= 1);
        for (std::size_t n = n0; n < horizon; ++n) REQUIRE(grade_at(n) >= base + n0);
        if (n0 > 1) {
          bool smaller_works = true;
          for (std::size_t n = n0 - 1; n < horizon; ++n) smaller_works = smaller_works && grade_at(n) >= base + n0 - 1;
          REQUIRE_FALSE(smaller_works);
        }
      }
      if (r.asymptotically_regular) {
        const int n0 = *r.asymptotic_offset;
        for (std::size_t n = n0; n < horizon; ++n) REQUIRE(grade_at(n) >= base + static_cast<int>(n));
      } else {
        // Some step beyond any candidate offset falls short.
        bool fails_everywhere = true;
        for (std::size_t n0 = 0; n0 < s.size() + 2; ++n0) {
          bool ok = true;
          for (std::size_t n = n0; n < horizon; ++n) ok = ok && grade_at(n) >= base + static_cast<int>(n);
          if (ok) fails_everywhere = false;
        }
        REQUIRE(fails_everywhere);
      }
      REQUIRE(r.classical_asymptotic == (ob.cycle.size() == 1));
    }
  }
}

TEST_CASE("minimal invariant admissible sets") {
  const auto c = minimal_invariant_admissible(ex_c(), successor(), HullMode::PaperCov);
  REQUIRE(c.size() == 1);
  CHECK(c[0].points == PointSet(6, {5}));

  const auto e = minimal_invariant_admissible(ex_e(), swap(), HullMode::PaperCov);
  REQUIRE(e.size() == 1);
  CHECK(e[0].points == PointSet::full(2));

  const auto id = minimal_invariant_admissible(ex_a(), SelfMap::identity(5), HullMode::ArbitraryCenter);
  CHECK(id.size() == 5);
  for (const auto& a : id) CHECK(a.points.count() == 1);

  try {
    minimal_invariant_admissible(ex_a(), SelfMap({0, 0, 0, 0, 4}), HullMode::PaperCov);
    FAIL("non-homomorphism accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::Precondition);
    CHECK(std::string(err.what()).find("(3,4)") != std::string::npos);
  }

  std::mt19937_64 rng(83);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_system(rng, 6);
    const SelfMap m = gen_self_map(rng(), s, MapKind::Homomorphism);
    const PointSet fixed = fixed_points(m);
    for (auto mode : {HullMode::PaperCov, HullMode::ArbitraryCenter}) {
      const auto sets = minimal_invariant_admissible(s, m, mode);
      REQUIRE_FALSE(sets.empty());
      PointSet singletons(s.size());
      for (const auto& a : sets) {
        REQUIRE_FALSE(a.points.empty());
        REQUIRE(invariant(m, a.points));
        REQUIRE(hull(s, a.points, mode).points == a.points);
        for (const auto& b : sets)
          if (!(a.points == b.points)) REQUIRE_FALSE(b.points.is_subset_of(a.points));
        if (a.points.count() == 1) {
          REQUIRE(fixed.contains(a.points.first()));
          singletons.insert(a.points.first());
        }
      }
      REQUIRE(singletons == fixed);
    }
  }
}

TEST_CASE("minimal invariant balls") {
  const auto e = minimal_invariant_balls(ex_e(), swap());
  CHECK(e == std::vector<BallRef>{{0, 3}, {1, 3}});
  CHECK(minimal_invariant_balls(ex_c(), successor()).empty());
  CHECK(minimal_invariant_balls(ex_a(), SelfMap::identity(5)).empty());

  std::mt19937_64 rng(89);
  for (int t = 0; t < 300; ++t) {
    const auto s = random_system(rng);
    const SelfMap m = t % 2 ? random_map(rng, s.size()) : gen_self_map(rng(), s, MapKind::Homomorphism);
    const auto found = minimal_invariant_balls(s, m);
    // Brute force over every centre and level.
    std::vector<BallRef> expect;
    for (std::size_t x = 0; x < s.size(); ++x)
      for (int n = s.window().lo - 1; n <= s.window().hi; ++n) {
        PointSet b(s.size());
        for (std::size_t y = 0; y < s.size(); ++y)
          if (g(s, x, y) >= n) b.insert(y);
        bool exact = invariant(m, b);
        for (std::size_t y : b.members()) exact = exact && g(s, y, m(y)) == n;
        if (exact) expect.push_back({x, n});
      }
    REQUIRE(found == expect);
    for (const auto& b : found) REQUIRE_FALSE(ball(s, b.center, b.level).intersects(fixed_points(m)));
  }
}

TEST_CASE("dichotomy") {
  const auto c = ks_dichotomy(ex_c(), successor());
  CHECK(c.hypotheses_met);
  CHECK(c.rows.size() == 5);
  for (const auto& row : c.rows) {
    CHECK(row.outcome == DichotomyOutcome::ContainsFixedPoint);
    CHECK(row.fixed_point == 5);
  }

  const auto e = ks_dichotomy(ex_e(), swap());
  CHECK(e.hypotheses_met);
  REQUIRE(e.rows.size() == 2);
  for (const auto& row : e.rows) {
    CHECK(row.outcome == DichotomyOutcome::ContainsMinimalInvariantBall);
    REQUIRE(row.invariant_ball);
    CHECK(ball(ex_e(), row.invariant_ball->center, row.invariant_ball->level) == PointSet::full(2));
  }

  CHECK(ks_dichotomy(ex_a(), SelfMap::identity(5)).rows.empty());
  const auto unmet = ks_dichotomy(ex_a(), reflection());
  CHECK_FALSE(unmet.hypotheses_met);
  CHECK(unmet.note.find("unmet") != std::string::npos);
  CHECK(to_string(DichotomyOutcome::Neither) == "NEITHER");

  std::mt19937_64 rng(97);
  GenParams params;
  params.constraint = Constraint::Transitive;
  for (int t = 0; t < 200; ++t) {
    const auto s = gen_system(rng(), params);
    const SelfMap m = gen_self_map(rng(), s, MapKind::Homomorphism);
    const auto rep = ks_dichotomy(s, m);
    REQUIRE(rep.hypotheses_met);
    REQUIRE_FALSE(rep.has_neither());
    for (const auto& row : rep.rows) {
      const PointSet b = ball(s, row.point, row.ball.level);
      REQUIRE(row.ball.level == g(s, row.point, m(row.point)));
      if (row.fixed_point) REQUIRE((b.contains(*row.fixed_point) && m(*row.fixed_point) == *row.fixed_point));
      if (row.invariant_ball) REQUIRE(ball(s, row.invariant_ball->center, row.invariant_ball->level).is_subset_of(b));
    }
  }
}

TEST_CASE("regularity fixed-point reports") {
  const auto c = regular_fixed_point(ex_c(), successor(), RegularityVariant::Asymptotic);
  CHECK(c.hypotheses_met());
  CHECK_FALSE(c.falsified());
  CHECK_FALSE(c.invariant_balls.empty());
  for (const auto& row : c.invariant_balls) CHECK(row.fixed == PointSet(6, {5}));

  const auto e = regular_fixed_point(ex_e(), swap(), RegularityVariant::Asymptotic);
  CHECK_FALSE(e.regularity);
  CHECK_FALSE(e.hypotheses_met());
  CHECK_FALSE(e.falsified());
  const auto er = regular_fixed_point(ex_e(), swap(), RegularityVariant::Regular);
  CHECK_FALSE(er.hypotheses_met());

  const auto id = regular_fixed_point(ex_c(), SelfMap::identity(6), RegularityVariant::Regular);
  CHECK(id.hypotheses_met());
  CHECK_FALSE(id.falsified());

  std::mt19937_64 rng(101);
  GenParams params;
  params.constraint = Constraint::Transitive;
  for (int t = 0; t < 200; ++t) {
    const auto s = gen_system(rng(), params);
    const SelfMap m = gen_self_map(rng(), s, MapKind::Homomorphism);
    for (auto v : {RegularityVariant::Regular, RegularityVariant::Asymptotic}) {
      const auto rep = regular_fixed_point(s, m, v);
      REQUIRE_FALSE(rep.falsified());
      for (const auto& row : rep.invariant_balls) {
        REQUIRE(invariant(m, row.points));
        REQUIRE(row.fixed == (row.points & fixed_points(m)));
      }
    }
  }
}
