#include "gradedrel/system.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gradedrel/errors.hpp"

namespace gradedrel {

GradeMatrix::GradeMatrix(std::size_t n, Grade fill) : n_(n), entries_(n * n, fill) {
  for (std::size_t x = 0; x < n; ++x) entries_[x * n + x] = Grade::top();
}

void GradeMatrix::set(std::size_t x, std::size_t y, Grade g) {
  entries_[x * n_ + y] = g;
  entries_[y * n_ + x] = g;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

RelationalSystem::RelationalSystem(std::vector<std::string> labels, Window window, GradeMatrix grades)
    : labels_(std::move(labels)), window_(window), grades_(std::move(grades)) {
  const std::size_t n = grades_.size();
  if (window_.lo > window_.hi) {
    throw Error(ErrorCode::RejectedInput, "window lo " + std::to_string(window_.lo) + " exceeds hi " +
                                              std::to_string(window_.hi));
  }
  if (labels_.size() != n) {
    throw Error(ErrorCode::StructuralInput, std::to_string(labels_.size()) + " labels for " +
                                                std::to_string(n) + " points");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty() || !seen.insert(l).second) throw Error(ErrorCode::RejectedInput, "labels must be distinct and nonempty");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!grades_(x, x).is_top()) {
      throw Error(ErrorCode::RejectedInput, "diagonal entry " + std::to_string(x) + " is not TOP");
    }
    for (std::size_t y = x + 1; y < n; ++y) {
      const Grade g = grades_(x, y);
      if (g != grades_(y, x)) {
        throw Error(ErrorCode::RejectedInput,
                    "grades (" + std::to_string(x) + "," + std::to_string(y) + ") not symmetric");
      }
      if (g.is_top() || g.level() < window_.below() || g.level() > window_.hi) {
        throw Error(ErrorCode::RejectedInput, "grade " + g.to_string() + " at (" + std::to_string(x) + "," +
                                                  std::to_string(y) + ") outside [lo-1, hi]");
      }
    }
  }
}

RelationalSystem RelationalSystem::unlabelled(Window window, GradeMatrix grades) {
  auto labels = default_labels(grades.size());
  return RelationalSystem(std::move(labels), window, std::move(grades));
}

std::string_view to_string(AxiomId id) {
  switch (id) {
    case AxiomId::R1: return "r1";
    case AxiomId::R2: return "r2";
    case AxiomId::R4Window: return "r4-window";
    case AxiomId::R5: return "r5";
    case AxiomId::R9: return "r9";
    case AxiomId::R10: return "r10";
    case AxiomId::Transitive: return "transitive";
  }
  return "?";
}

std::optional<AxiomId> parse_axiom_id(std::string_view text) {
  for (auto id : {AxiomId::R1, AxiomId::R2, AxiomId::R4Window, AxiomId::R5, AxiomId::R9, AxiomId::R10,
                  AxiomId::Transitive}) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

namespace {

using LevelFn = std::function<Relation(int)>;

AxiomReport violation(AxiomId id, int level, std::vector<std::size_t> points) {
  AxiomReport r{id};
  r.holds = false;
  r.witness = AxiomWitness{level, std::move(points)};
  return r;
}

AxiomReport check_symmetric(const LevelFn& level, Window w) {
  for (int n = w.lo; n <= w.hi; ++n) {
    const Relation rel = level(n);
    for (std::size_t x = 0; x < rel.size(); ++x)
      for (std::size_t y : rel.row(x).members())
        if (!rel.test(y, x)) return violation(AxiomId::R1, n, {x, y});
  }
  return AxiomReport{AxiomId::R1};
}

AxiomReport check_nested(const LevelFn& level, Window w) {
  for (int n = w.lo + 1; n <= w.hi; ++n) {
    const Relation cur = level(n);
    const Relation prev = level(n - 1);
    for (std::size_t x = 0; x < cur.size(); ++x)
      for (std::size_t y : cur.row(x).members())
        if (!prev.test(x, y)) return violation(AxiomId::R2, n, {x, y});
  }
  return AxiomReport{AxiomId::R2};
}

AxiomReport check_reflexive(const LevelFn& level, Window w) {
  for (int n = w.lo; n <= w.hi; ++n) {
    const Relation rel = level(n);
    for (std::size_t x = 0; x < rel.size(); ++x)
      if (!rel.test(x, x)) return violation(AxiomId::R4Window, n, {x});
  }
  return AxiomReport{AxiomId::R4Window};
}

// First (x, y) in row-major order with (x, y) in `reach` but not in `target`.
std::optional<std::pair<std::size_t, std::size_t>> first_excess(const Relation& reach, const Relation& target) {
  for (std::size_t x = 0; x < reach.size(); ++x)
    for (std::size_t y : reach.row(x).members())
      if (!target.test(x, y)) return std::pair{x, y};
  return std::nullopt;
}

std::size_t first_middle(const Relation& r, const Relation& s, std::size_t x, std::size_t y) {
  for (std::size_t z : r.row(x).members())
    if (s.test(z, y)) return z;
  return r.size();
}

// `power` = 2 checks R_n^2 against R_{n-1}; 3 checks R_n^3.
AxiomReport check_power(const RelationalSystem& sys, AxiomId id, int power) {
  const Window w = sys.window();
  for (int n = w.lo; n <= w.above(); ++n) {
    const Relation r = expand_level(sys, n);
    const Relation r2 = compose(r, r);
    const Relation reach = power == 2 ? r2 : compose(r2, r);
    const Relation target = expand_level(sys, n - 1);
    if (auto bad = first_excess(reach, target)) {
      const auto [x, y] = *bad;
      if (power == 2) return violation(id, n, {x, first_middle(r, r, x, y), y});
      // x R z R w R y with the smallest z, then the smallest w.
      for (std::size_t z : r.row(x).members()) {
        if (r2.test(z, y)) return violation(id, n, {x, z, first_middle(r, r, z, y), y});
      }
    }
  }
  return AxiomReport{id};
}

// Scans from the top so the witness sits at the finest failing level.
AxiomReport check_transitive(const RelationalSystem& sys) {
  const Window w = sys.window();
  for (int n = w.hi; n >= w.lo; --n) {
    const Relation r = expand_level(sys, n);
    if (auto bad = first_excess(compose(r, r), r)) {
      const auto [x, y] = *bad;
      return violation(AxiomId::Transitive, n, {x, first_middle(r, r, x, y), y});
    }
  }
  return AxiomReport{AxiomId::Transitive};
}

AxiomReport check_bounded(const RelationalSystem& sys) {
  AxiomReport report{AxiomId::R5};
  Grade lowest = Grade::top();
  std::optional<std::pair<std::size_t, std::size_t>> at;
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (std::size_t y = x + 1; y < sys.size(); ++y)
      if (sys.grade(x, y) < lowest) {
        lowest = sys.grade(x, y);
        at = std::pair{x, y};
      }
  report.bound_grade = lowest;
  report.holds = lowest >= Grade(sys.window().lo);
  if (!report.holds) report.witness = AxiomWitness{std::nullopt, {at->first, at->second}};
  return report;
}

bool replay_with(const LevelFn& level, const AxiomReport& report) {
  if (report.holds || !report.witness) return false;
  const auto& w = *report.witness;
  const auto& p = w.points;
  const int n = w.level.value_or(0);
  switch (report.axiom) {
    case AxiomId::R1: {
      const Relation r = level(n);
      return p.size() == 2 && r.test(p[0], p[1]) && !r.test(p[1], p[0]);
    }
    case AxiomId::R2:
      return p.size() == 2 && level(n).test(p[0], p[1]) && !level(n - 1).test(p[0], p[1]);
    case AxiomId::R4Window:
      return p.size() == 1 && !level(n).test(p[0], p[0]);
    case AxiomId::R9: {
      const Relation r = level(n);
      return p.size() == 3 && r.test(p[0], p[1]) && r.test(p[1], p[2]) && !level(n - 1).test(p[0], p[2]);
    }
    case AxiomId::R10: {
      const Relation r = level(n);
      return p.size() == 4 && r.test(p[0], p[1]) && r.test(p[1], p[2]) && r.test(p[2], p[3]) &&
             !level(n - 1).test(p[0], p[3]);
    }
    case AxiomId::Transitive: {
      const Relation r = level(n);
      return p.size() == 3 && r.test(p[0], p[1]) && r.test(p[1], p[2]) && !r.test(p[0], p[2]);
    }
    case AxiomId::R5:
      return false;  // handled by the system overload
  }
  return false;
}

void require_shape(const LevelList& levels) {
  if (levels.per_level.empty()) throw Error(ErrorCode::StructuralInput, "empty level list");
  if (static_cast<int>(levels.per_level.size()) != levels.window.span()) {
    throw Error(ErrorCode::StructuralInput, "level list has " + std::to_string(levels.per_level.size()) +
                                                " relations for a window of span " +
                                                std::to_string(levels.window.span()));
  }
  const std::size_t n = levels.per_level.front().size();
  for (const auto& r : levels.per_level)
    if (r.size() != n) throw Error(ErrorCode::StructuralInput, "levels disagree on the point count");
}

LevelFn level_fn(const LevelList& levels) {
  return [&levels](int n) {
    const std::size_t size = levels.per_level.front().size();
    if (n < levels.window.lo) return Relation::full(size);
    if (n > levels.window.hi) return Relation::diagonal(size);
    return levels.at(n);
  };
}

LevelFn level_fn(const RelationalSystem& sys) {
  return [&sys](int n) { return expand_level(sys, n); };
}

}  // namespace

std::vector<AxiomReport> validate_level_list(const LevelList& levels) {
  require_shape(levels);
  const auto level = level_fn(levels);
  return {check_symmetric(level, levels.window), check_nested(level, levels.window),
          check_reflexive(level, levels.window)};
}

RelationalSystem compact_to_grades(const LevelList& levels, std::vector<std::string> labels) {
  for (const auto& report : validate_level_list(levels)) {
    if (!report.holds) {
      throw Error(ErrorCode::RejectedInput,
                  "level list fails " + std::string(to_string(report.axiom)) + " at level " +
                      std::to_string(report.witness->level.value_or(0)));
    }
  }
  const Window w = levels.window;
  const std::size_t n = levels.per_level.front().size();
  GradeMatrix grades(n, Grade(w.below()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (int level = w.hi; level >= w.lo; --level)
        if (levels.at(level).test(x, y)) {
          grades.set(x, y, Grade(level));
          break;
        }
  if (labels.empty()) labels = default_labels(n);
  return RelationalSystem(std::move(labels), w, std::move(grades));
}

Relation expand_level(const RelationalSystem& sys, int n) {
  Relation r(sys.size());
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (std::size_t y = 0; y < sys.size(); ++y)
      if (sys.grade(x, y) >= Grade(n)) r.set(x, y);
  return r;
}

LevelList expand_all(const RelationalSystem& sys) {
  LevelList out{sys.window(), {}};
  for (int n = sys.window().lo; n <= sys.window().hi; ++n) out.per_level.push_back(expand_level(sys, n));
  return out;
}

AxiomReport check_axiom(const RelationalSystem& sys, AxiomId axiom) {
  const auto level = level_fn(sys);
  switch (axiom) {
    case AxiomId::R1: return check_symmetric(level, sys.window());
    case AxiomId::R2: return check_nested(level, sys.window());
    case AxiomId::R4Window: return check_reflexive(level, sys.window());
    case AxiomId::R5: return check_bounded(sys);
    case AxiomId::R9: return check_power(sys, AxiomId::R9, 2);
    case AxiomId::R10: return check_power(sys, AxiomId::R10, 3);
    case AxiomId::Transitive: return check_transitive(sys);
  }
  throw Error(ErrorCode::Usage, "unknown axiom id");
}

bool replay_witness(const RelationalSystem& sys, const AxiomReport& report) {
  if (report.axiom == AxiomId::R5) {
    if (report.holds || !report.witness || report.witness->points.size() != 2) return false;
    const auto& p = report.witness->points;
    return sys.grade(p[0], p[1]) < Grade(sys.window().lo);
  }
  return replay_with(level_fn(sys), report);
}

bool replay_witness(const LevelList& levels, const AxiomReport& report) {
  require_shape(levels);
  return replay_with(level_fn(levels), report);
}

RelationalSystem restrict_to(const RelationalSystem& sys, const std::vector<std::size_t>& points) {
  GradeMatrix grades(points.size(), Grade(sys.window().below()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    labels.push_back(sys.labels()[points[i]]);
    for (std::size_t j = i + 1; j < points.size(); ++j) grades.set(i, j, sys.grade(points[i], points[j]));
  }
  return RelationalSystem(std::move(labels), sys.window(), std::move(grades));
}

}  // namespace gradedrel
