#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradedrel/grade.hpp"
#include "gradedrel/relation.hpp"

namespace gradedrel {

/// Symmetric matrix of grades; entry (x, y) is the largest level whose relation contains (x, y).
class GradeMatrix {
 public:
  GradeMatrix() = default;
  // Diagonal TOP, off-diagonal initialised to `fill`.
  GradeMatrix(std::size_t n, Grade fill);

  std::size_t size() const { return n_; }
  Grade operator()(std::size_t x, std::size_t y) const { return entries_[x * n_ + y]; }
  // Sets both (x, y) and (y, x).
  void set(std::size_t x, std::size_t y, Grade g);

  friend bool operator==(const GradeMatrix&, const GradeMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Grade> entries_;
};

/// Labelled ground set with a finite window of stored levels and the grade matrix encoding the family.
class RelationalSystem {
 public:
  // Throws Error(RejectedInput) when the grade invariants fail for this window.
  RelationalSystem(std::vector<std::string> labels, Window window, GradeMatrix grades);

  // Labels default to "0", "1", ...
  static RelationalSystem unlabelled(Window window, GradeMatrix grades);

  std::size_t size() const { return grades_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Window& window() const { return window_; }
  const GradeMatrix& grades() const { return grades_; }
  Grade grade(std::size_t x, std::size_t y) const { return grades_(x, y); }

  friend bool operator==(const RelationalSystem&, const RelationalSystem&) = default;

 private:
  std::vector<std::string> labels_;
  Window window_;
  GradeMatrix grades_;
};

std::vector<std::string> default_labels(std::size_t n);

/// Explicit presentation of the family: one relation per level in [window.lo, window.hi].
struct LevelList {
  Window window;
  std::vector<Relation> per_level;

  const Relation& at(int level) const { return per_level[static_cast<std::size_t>(level - window.lo)]; }
};

enum class AxiomId { R1, R2, R4Window, R5, R9, R10, Transitive };

std::string_view to_string(AxiomId id);
std::optional<AxiomId> parse_axiom_id(std::string_view text);

/// Violation witness: an optional level plus the points involved (pair, path or single point).
struct AxiomWitness {
  std::optional<int> level;
  std::vector<std::size_t> points;

  friend bool operator==(const AxiomWitness&, const AxiomWitness&) = default;
};

struct AxiomReport {
  AxiomId axiom;
  bool holds = true;
  std::optional<AxiomWitness> witness;
  std::optional<Grade> bound_grade;  // r5 only
};

/// Checks r1 (symmetry), r2 (nestedness) and r4-window (each stored level reflexive).
std::vector<AxiomReport> validate_level_list(const LevelList& levels);

RelationalSystem compact_to_grades(const LevelList& levels, std::vector<std::string> labels = {});

/// {(x, y) : grade(x, y) >= n}; full below the window, the diagonal above it.
Relation expand_level(const RelationalSystem& sys, int n);

/// Every stored level, [lo, hi].
LevelList expand_all(const RelationalSystem& sys);

AxiomReport check_axiom(const RelationalSystem& sys, AxiomId axiom);

/// Re-checks a reported violation against the system; true iff it still reproduces.
bool replay_witness(const RelationalSystem& sys, const AxiomReport& report);
bool replay_witness(const LevelList& levels, const AxiomReport& report);

/// Restriction of the system to the given points (in the given order).
RelationalSystem restrict_to(const RelationalSystem& sys, const std::vector<std::size_t>& points);

}  // namespace gradedrel
