#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gradedrel/dynamics.hpp"
#include "gradedrel/system.hpp"

namespace gradedrel {

enum class Constraint { None, R9, R10, Transitive };
enum class MapKind { Any, Homomorphism };

std::string_view to_string(Constraint c);
std::string_view to_string(MapKind k);

struct GenParams {
  std::size_t min_points = 2;
  std::size_t max_points = 7;
  int lo_min = -2;
  int lo_max = 2;
  int span_min = 1;
  int span_max = 6;
  Constraint constraint = Constraint::None;
  MapKind map_kind = MapKind::Any;

  void validate() const;  // throws Usage on empty ranges or span < 1
};

/// Derives an independent 64-bit seed for trial `index` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

RelationalSystem gen_system(std::uint64_t seed, const GenParams& params);

/// Raises grades until the constraint's composition inequalities hold.
RelationalSystem repair(const RelationalSystem& sys, Constraint constraint);

inline constexpr int kHomomorphismRestarts = 64;
SelfMap gen_self_map(std::uint64_t seed, const RelationalSystem& sys, MapKind kind,
                     int restarts = kHomomorphismRestarts);

enum class ClaimId {
  Eq1Roundtrip,
  HomomorphismIffNonexpansive,
  R9TwoInframetric,
  R10Metric,
  TransitiveUltrametric,
  KsDichotomy,
  RegularFixedPoint,
  AsymptoticFixedPoint,
  FiniteNormalStructureExists,
  HullEquivalence,
  RadiiTranslation,
};

struct ClaimInfo {
  ClaimId id;
  std::string_view name;
  std::string_view statement;
  Constraint constraint;  // hypothesis class the generator targets
  bool needs_map;
};

std::span<const ClaimInfo> claim_catalog();
const ClaimInfo& claim_info(ClaimId id);
std::optional<ClaimId> parse_claim_id(std::string_view name);

struct Instance {
  RelationalSystem system;
  std::optional<SelfMap> map;
};

enum class ClaimStatus { Pass, Fail, Vacuous };
std::string_view to_string(ClaimStatus s);

struct ClaimResult {
  ClaimStatus status = ClaimStatus::Pass;
  std::string locus;  // where the failure (or vacuity) was found
};

ClaimResult check_claim(ClaimId claim, const Instance& instance);

/// Instance for trial `index`; generator constraints follow the claim's hypotheses.
Instance generate_instance(ClaimId claim, std::uint64_t seed, std::uint64_t index, const GenParams& params);

using FailurePredicate = std::function<bool(const Instance&)>;

/// Greedy local minimisation: drop points, then narrow the window, then lower grades.
Instance shrink(const Instance& instance, const FailurePredicate& still_fails);

enum class VerdictOutcome { NoCounterexample, Counterexample };
std::string_view to_string(VerdictOutcome o);

struct Verdict {
  ClaimId claim = ClaimId::Eq1Roundtrip;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  VerdictOutcome outcome = VerdictOutcome::NoCounterexample;
  std::size_t vacuous_trials = 0;
  std::optional<Instance> instance;  // shrunk counterexample
  std::optional<std::uint64_t> trial_index;
  std::size_t original_points = 0;
  std::string locus;
  std::string note;
};

Verdict falsify(ClaimId claim, std::size_t trials, std::uint64_t seed, const GenParams& params = {});

}  // namespace gradedrel
