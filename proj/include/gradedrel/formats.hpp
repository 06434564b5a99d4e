#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gradedrel/bridge.hpp"
#include "gradedrel/dynamics.hpp"
#include "gradedrel/errors.hpp"
#include "gradedrel/harness.hpp"
#include "gradedrel/system.hpp"

namespace gradedrel {

// Diagnostic codes emitted by the parsers.
inline constexpr std::string_view kDiagSyntax = "E_SYNTAX";
inline constexpr std::string_view kDiagDimension = "E_DIMENSION";
inline constexpr std::string_view kDiagSymmetry = "E_SYMMETRY";
inline constexpr std::string_view kDiagRange = "E_RANGE";
inline constexpr std::string_view kDiagDiagonal = "E_DIAGONAL";
inline constexpr std::string_view kDiagLabels = "E_LABELS";

// gradedsystem v1
RelationalSystem parse_system_file(std::string_view text);
std::string serialize_system(const RelationalSystem& sys);

// selfmap v1
SelfMap parse_map_file(std::string_view text);
std::string serialize_map(const SelfMap& t);

// distmatrix v1
DistanceMatrix parse_matrix_file(std::string_view text);
std::string serialize_matrix(const DistanceMatrix& d);

/// "p/q", "p", or a decimal literal such as "0.125" or "2.5e-3"; exact.
std::optional<Rational> parse_rational(std::string_view token);

/// Manifest line, then the system file, then (optionally) the map file.
std::string serialize_counterexample(const Verdict& verdict);

struct CounterexampleBundle {
  ClaimId claim;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  Instance instance;
};

CounterexampleBundle parse_counterexample(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace gradedrel
