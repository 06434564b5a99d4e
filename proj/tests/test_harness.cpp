#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gradedrel/errors.hpp"
#include "gradedrel/formats.hpp"
#include "gradedrel/harness.hpp"
#include "support.hpp"

using namespace gradedrel;
using namespace fixtures;

namespace {

bool same(const Verdict& a, const Verdict& b) {
  if (a.outcome != b.outcome || a.trial_index != b.trial_index || a.vacuous_trials != b.vacuous_trials ||
      a.locus != b.locus || a.instance.has_value() != b.instance.has_value())
    return false;
  if (!a.instance) return true;
  return a.instance->system == b.instance->system && a.instance->map == b.instance->map;
}

bool fails(ClaimId claim, const Instance& inst) { return check_claim(claim, inst).status == ClaimStatus::Fail; }

}  // namespace

TEST_CASE("generation is deterministic and respects its parameters") {
  GenParams p;
  p.min_points = p.max_points = 4;
  p.lo_min = p.lo_max = 0;
  p.span_min = p.span_max = 4;
  CHECK(gen_system(1, p) == gen_system(1, p));
  CHECK(gen_system(1, p).size() == 4);
  CHECK(gen_system(1, p).window() == Window{0, 3});

  std::set<std::vector<int>> distinct;
  GenParams wide;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = gen_system(seed, wide);
    REQUIRE(s.size() >= wide.min_points);
    REQUIRE(s.size() <= wide.max_points);
    REQUIRE(s.window().lo >= wide.lo_min);
    REQUIRE(s.window().lo <= wide.lo_max);
    REQUIRE(s.window().hi - s.window().lo + 1 >= wide.span_min);
    REQUIRE(s.window().hi - s.window().lo + 1 <= wide.span_max);
    std::vector<int> flat;
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y) flat.push_back(g(s, x, y));
    distinct.insert(flat);
  }
  CHECK(distinct.size() > 200);
  CHECK(trial_seed(5, 0) != trial_seed(5, 1));
  CHECK(trial_seed(5, 3) == trial_seed(5, 3));
}

TEST_CASE("parameter validation") {
  GenParams p;
  p.min_points = 5;
  p.max_points = 3;
  CHECK_THROWS_AS(p.validate(), Error);
  GenParams q;
  q.span_min = 0;
  CHECK_THROWS_AS(q.validate(), Error);
  GenParams r;
  r.lo_min = 3;
  r.lo_max = 1;
  try {
    r.validate();
    FAIL("empty range accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Usage);
  }
}

TEST_CASE("repair makes the constraint hold and only raises grades") {
  for (auto [constraint, axiom] : {std::pair{Constraint::R9, AxiomId::R9}, std::pair{Constraint::R10, AxiomId::R10},
                                   std::pair{Constraint::Transitive, AxiomId::Transitive}}) {
    GenParams p;
    p.constraint = constraint;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto s = gen_system(seed, p);
      REQUIRE(check_axiom(s, axiom).holds);
      if (constraint == Constraint::R9) REQUIRE(oracle_r9(s));
      if (constraint == Constraint::R10) REQUIRE(oracle_r10(s));
      if (constraint == Constraint::Transitive) REQUIRE(oracle_transitive(s));
    }
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      const auto raw = random_system(rng);
      const auto fixed = repair(raw, constraint);
      REQUIRE(check_axiom(fixed, axiom).holds);
      for (std::size_t x = 0; x < raw.size(); ++x)
        for (std::size_t y = 0; y < raw.size(); ++y) REQUIRE(fixed.grade(x, y) >= raw.grade(x, y));
      REQUIRE(repair(fixed, constraint) == fixed);
    }
  }
  CHECK(repair(ex_a(), Constraint::None) == ex_a());
  CHECK(repair(ex_c(), Constraint::Transitive) == ex_c());
}

TEST_CASE("generated homomorphisms") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SelfMap t = gen_self_map(seed, ex_c(), MapKind::Homomorphism);
    REQUIRE(is_homomorphism(ex_c(), t).holds);
    REQUIRE(t == gen_self_map(seed, ex_c(), MapKind::Homomorphism));
  }
  GenParams p;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = gen_system(seed, p);
    REQUIRE(is_homomorphism(s, gen_self_map(seed * 3 + 1, s, MapKind::Homomorphism)).holds);
    REQUIRE(gen_self_map(seed, s, MapKind::Any) == gen_self_map(seed, s, MapKind::Any));
  }
  // With no attempts allowed the generator falls back to the identity.
  const SelfMap fallback = gen_self_map(3, ex_a(), MapKind::Homomorphism, 0);
  CHECK(fallback == SelfMap::identity(5));
  CHECK(is_homomorphism(ex_a(), fallback).holds);
}

TEST_CASE("claim catalog covers every catalogued statement once") {
  const std::vector<std::string> expected{
      "eq1-roundtrip",          "thm-homo-iff-nonexp", "prop-r9-2-inframetric",          "prop-r10-metric",
      "transitive-ultrametric", "thm-ks-dichotomy",    "thm-regular-fp",                 "thm-asymptotic-fp",
      "finite-normal-structure-exists", "hull-equivalence", "radii-translation"};
  std::vector<std::string> names;
  for (const auto& info : claim_catalog()) {
    names.emplace_back(info.name);
    CHECK(parse_claim_id(info.name) == info.id);
    CHECK(claim_info(info.id).name == info.name);
    CHECK_FALSE(info.statement.empty());
  }
  CHECK(names == expected);
  CHECK_FALSE(parse_claim_id("thm-banach"));
}

TEST_CASE("claim checkers on the fixtures") {
  CHECK(check_claim(ClaimId::R10Metric, {ex_b(), std::nullopt}).status == ClaimStatus::Fail);
  CHECK(check_claim(ClaimId::R10Metric, {ex_a(), std::nullopt}).status == ClaimStatus::Vacuous);
  CHECK(check_claim(ClaimId::R9TwoInframetric, {ex_a(), std::nullopt}).status == ClaimStatus::Pass);
  CHECK(check_claim(ClaimId::R9TwoInframetric, {ex_b(), std::nullopt}).status == ClaimStatus::Pass);
  CHECK(check_claim(ClaimId::TransitiveUltrametric, {ex_c(), std::nullopt}).status == ClaimStatus::Pass);
  CHECK(check_claim(ClaimId::TransitiveUltrametric, {ex_a(), std::nullopt}).status == ClaimStatus::Pass);
  CHECK(check_claim(ClaimId::KsDichotomy, {ex_c(), successor()}).status == ClaimStatus::Pass);
  CHECK(check_claim(ClaimId::KsDichotomy, {ex_e(), swap()}).status == ClaimStatus::Pass);
  CHECK(check_claim(ClaimId::KsDichotomy, {ex_a(), reflection()}).status == ClaimStatus::Vacuous);
  CHECK(check_claim(ClaimId::AsymptoticFixedPoint, {ex_c(), successor()}).status == ClaimStatus::Pass);
  CHECK(check_claim(ClaimId::AsymptoticFixedPoint, {ex_e(), swap()}).status == ClaimStatus::Vacuous);
  CHECK(check_claim(ClaimId::HomomorphismIffNonexpansive, {ex_a(), SelfMap({0, 0, 0, 0, 4})}).status ==
        ClaimStatus::Pass);
  for (const auto& s : {ex_a(), ex_b(), ex_c(), ex_e()}) {
    CHECK(check_claim(ClaimId::Eq1Roundtrip, {s, std::nullopt}).status == ClaimStatus::Pass);
    CHECK(check_claim(ClaimId::FiniteNormalStructureExists, {s, std::nullopt}).status == ClaimStatus::Pass);
    CHECK(check_claim(ClaimId::HullEquivalence, {s, std::nullopt}).status == ClaimStatus::Pass);
    CHECK(check_claim(ClaimId::RadiiTranslation, {s, std::nullopt}).status == ClaimStatus::Pass);
  }
  CHECK(check_claim(ClaimId::FiniteNormalStructureExists, {make({"x"}, 0, 0, {{0}}), std::nullopt}).status ==
        ClaimStatus::Vacuous);
  CHECK_THROWS_AS(check_claim(ClaimId::KsDichotomy, {ex_c(), std::nullopt}), Error);
}

TEST_CASE("generated instances follow the claim's hypotheses") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto r10 = generate_instance(ClaimId::R10Metric, 9, i, {});
    REQUIRE(check_axiom(r10.system, AxiomId::R10).holds);
    REQUIRE_FALSE(r10.map);
    const auto ks = generate_instance(ClaimId::KsDichotomy, 9, i, {});
    REQUIRE(check_axiom(ks.system, AxiomId::Transitive).holds);
    REQUIRE(ks.map);
    REQUIRE(is_homomorphism(ks.system, *ks.map).holds);
    const auto normal = generate_instance(ClaimId::FiniteNormalStructureExists, 9, i, {});
    REQUIRE(normal.system.size() >= 2);
    REQUIRE(generate_instance(ClaimId::Eq1Roundtrip, 9, i, {}).system ==
            generate_instance(ClaimId::Eq1Roundtrip, 9, i, {}).system);
  }
}

TEST_CASE("falsify finds and shrinks the r10 counterexample") {
  const Verdict v = falsify(ClaimId::R10Metric, 10000, 12);
  REQUIRE(v.outcome == VerdictOutcome::Counterexample);
  REQUIRE(v.instance);
  CHECK(v.instance->system.size() == 3);
  CHECK(v.original_points >= 3);
  CHECK(check_axiom(v.instance->system, AxiomId::R10).holds);
  CHECK_FALSE(classify(v.instance->system).triangle_holds);
  CHECK_FALSE(v.locus.empty());

  // Replay from the serialized bundle.
  const auto bundle = parse_counterexample(serialize_counterexample(v));
  CHECK(bundle.claim == ClaimId::R10Metric);
  CHECK(bundle.seed == 12);
  CHECK(bundle.trial == *v.trial_index);
  CHECK(fails(ClaimId::R10Metric, bundle.instance));
  CHECK(bundle.instance.system == v.instance->system);

  // The shrunk instance is a fixed point of the shrinker.
  const auto again = shrink(*v.instance, [](const Instance& i) { return fails(ClaimId::R10Metric, i); });
  CHECK(again.system == v.instance->system);

  CHECK(same(v, falsify(ClaimId::R10Metric, 10000, 12)));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Verdict w = falsify(ClaimId::R10Metric, 2000, seed);
    REQUIRE(w.outcome == VerdictOutcome::Counterexample);
    REQUIRE(w.instance->system.size() == 3);
  }
}

TEST_CASE("shrinking keeps maps consistent") {
  // A failing predicate that needs a non-fixed point somewhere in the system.
  const FailurePredicate moves = [](const Instance& i) {
    for (std::size_t x = 0; x < i.system.size(); ++x)
      if ((*i.map)(x) != x) return true;
    return false;
  };
  const Instance start{ex_c(), successor()};
  const Instance small = shrink(start, moves);
  CHECK(moves(small));
  CHECK(small.system.size() == 2);
  CHECK(small.map->size() == 2);
  CHECK(small.system.window().lo == small.system.window().hi);
  CHECK(small.system.grade(0, 1) == Grade(small.system.window().below()));
}

TEST_CASE("claims expected to hold produce no counterexample") {
  for (ClaimId claim : {ClaimId::Eq1Roundtrip, ClaimId::HomomorphismIffNonexpansive, ClaimId::R9TwoInframetric,
                        ClaimId::TransitiveUltrametric, ClaimId::KsDichotomy, ClaimId::RegularFixedPoint,
                        ClaimId::AsymptoticFixedPoint, ClaimId::RadiiTranslation}) {
    const Verdict v = falsify(claim, 2000, 3);
    INFO(claim_info(claim).name);
    CHECK(v.outcome == VerdictOutcome::NoCounterexample);
    CHECK(v.trials == 2000);
    CHECK(v.seed == 3);
  }
  CHECK(falsify(ClaimId::HullEquivalence, 300, 3).outcome == VerdictOutcome::NoCounterexample);
  const Verdict homo = falsify(ClaimId::HomomorphismIffNonexpansive, 10000, 1);
  CHECK(homo.outcome == VerdictOutcome::NoCounterexample);
  CHECK(homo.vacuous_trials == 0);

  const Verdict normal = falsify(ClaimId::FiniteNormalStructureExists, 2000, 5);
  CHECK(normal.outcome == VerdictOutcome::NoCounterexample);
  CHECK(normal.note.find("vacuous") != std::string::npos);
}
