#include "gradedrel/bridge.hpp"

#include "gradedrel/errors.hpp"

namespace gradedrel {

namespace {

void check_index(const RelationalSystem& sys, std::size_t x) {
  if (x >= sys.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "point " + std::to_string(x) + " outside a ground set of " + std::to_string(sys.size()));
  }
}

std::vector<DyadicValue> distance_table(const RelationalSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<DyadicValue> d(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) d[x * n + y] = delta(sys, x, y);
  return d;
}

}  // namespace

Grade mu(const RelationalSystem& sys, std::size_t x, std::size_t y) {
  check_index(sys, x);
  check_index(sys, y);
  return sys.grade(x, y);
}

DyadicValue delta(const RelationalSystem& sys, std::size_t x, std::size_t y) {
  return DyadicValue::from_grade(mu(sys, x, y));
}

Relation reconstruct_level(const RelationalSystem& sys, int n) {
  const DyadicValue bound = DyadicValue::pow2(-n);
  Relation r(sys.size());
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (std::size_t y = 0; y < sys.size(); ++y)
      if (delta(sys, x, y) <= bound) r.set(x, y);
  return r;
}

BallCollapse metric_ball_collapse(const RelationalSystem& sys, std::size_t x, const Rational& r) {
  check_index(sys, x);
  if (r <= 0) throw Error(ErrorCode::UndefinedInput, "ball radius must be positive");
  const Window w = sys.window();
  BallCollapse out;
  out.level = w.above();
  for (int g = w.below(); g <= w.above(); ++g) {
    if (DyadicValue::pow2(-g).to_rational() <= r) {
      out.level = g;
      break;
    }
  }
  out.metric_ball = PointSet(sys.size());
  out.relational_ball = PointSet(sys.size());
  for (std::size_t y = 0; y < sys.size(); ++y) {
    if (delta(sys, x, y).to_rational() <= r) out.metric_ball.insert(y);
    if (sys.grade(x, y) >= Grade(out.level)) out.relational_ball.insert(y);
  }
  return out;
}

InframetricConstant minimal_inframetric_constant(const RelationalSystem& sys) {
  const std::size_t n = sys.size();
  if (n < 2) throw Error(ErrorCode::UndefinedInput, "inframetric constant needs at least two points");
  std::optional<int> worst;
  Triple at;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const int m = std::min(sys.grade(x, z), sys.grade(z, y)).level();
        const int deficit = m - sys.grade(x, y).level();
        if (!worst || deficit > *worst) {
          worst = deficit;
          at = Triple{x, z, y};
        }
      }
  InframetricConstant out{DyadicValue::pow2(0), std::nullopt};
  if (worst && *worst >= 0) {
    out.value = DyadicValue::pow2(*worst);
    out.witness = at;
  }
  return out;
}

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::Ultrametric: return "ultrametric";
    case ClassLabel::Metric: return "metric";
    case ClassLabel::Inframetric: return "C-inframetric";
    case ClassLabel::SemimetricOnly: return "semimetric-only";
  }
  return "?";
}

bool ClassificationReport::r9_implication_violated() const { return r9 && minimal_c > DyadicValue::pow2(1); }
bool ClassificationReport::r10_implication_violated() const { return r10 && !triangle_holds; }
bool ClassificationReport::ultrametric_equivalence_violated() const { return transitive != strong_triangle_holds; }
bool ClassificationReport::any_implication_violated() const {
  return r9_implication_violated() || r10_implication_violated() || ultrametric_equivalence_violated();
}

ClassificationReport classify(const RelationalSystem& sys) {
  const std::size_t n = sys.size();
  const auto d = distance_table(sys);
  auto at = [&](std::size_t x, std::size_t y) -> const DyadicValue& { return d[x * n + y]; };

  ClassificationReport rep;
  for (std::size_t x = 0; x < n && rep.is_semimetric; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool ok = (x == y) ? at(x, y).is_zero() : (!at(x, y).is_zero() && at(x, y) == at(y, x));
      if (!ok) {
        rep.is_semimetric = false;
        rep.semimetric_witness = std::pair{x, y};
        break;
      }
    }

  rep.r9 = check_axiom(sys, AxiomId::R9).holds;
  rep.r10 = check_axiom(sys, AxiomId::R10).holds;
  rep.transitive = check_axiom(sys, AxiomId::Transitive).holds;

  if (n >= 2) {
    const auto c = minimal_inframetric_constant(sys);
    rep.minimal_c = c.value;
    rep.c_witness = c.witness;
  } else {
    rep.minimal_c = DyadicValue::pow2(0);
  }
  const DyadicValue half_c = rep.minimal_c.scaled_pow2(-1);
  bool tight = rep.minimal_c == DyadicValue::pow2(0);

  std::optional<DyadicValue> worst_excess;
  // Worst strong-triangle ratio lhs / max, compared by cross-multiplication.
  std::optional<std::pair<DyadicValue, DyadicValue>> worst_ratio;

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const DyadicValue& lhs = at(x, y);
        const DyadicValue rhs = at(x, z) + at(z, y);
        const DyadicValue& mx = std::max(at(x, z), at(z, y));

        if (lhs > rhs) {
          rep.triangle_holds = false;
          const DyadicValue excess = lhs - rhs;
          if (!worst_excess || excess > *worst_excess) {
            worst_excess = excess;
            rep.triangle_witness = Triple{x, z, y};
            rep.triangle_lhs = lhs;
            rep.triangle_rhs = rhs;
          }
        }
        if (lhs > mx) {
          rep.strong_triangle_holds = false;
          if (!worst_ratio || lhs * worst_ratio->second > worst_ratio->first * mx) {
            worst_ratio = std::pair{lhs, mx};
            rep.strong_witness = Triple{x, z, y};
          }
        }
        if (lhs > rep.minimal_c * mx) rep.c_verified = false;
        if (lhs > half_c * mx) tight = true;
      }
  if (!tight) rep.c_verified = false;

  if (!rep.is_semimetric) {
    rep.label = ClassLabel::SemimetricOnly;
  } else if (rep.strong_triangle_holds) {
    rep.label = ClassLabel::Ultrametric;
  } else if (rep.triangle_holds) {
    rep.label = ClassLabel::Metric;
  } else if (rep.minimal_c <= DyadicValue::pow2(1)) {
    rep.label = ClassLabel::Inframetric;
  } else {
    rep.label = ClassLabel::SemimetricOnly;
  }
  return rep;
}

DistanceMatrix delta_matrix(const RelationalSystem& sys) {
  DistanceMatrix d(sys.size());
  for (std::size_t x = 0; x < sys.size(); ++x)
    for (std::size_t y = 0; y < sys.size(); ++y) d(x, y) = delta(sys, x, y).to_rational();
  return d;
}

RelationalSystem ingest_distance_matrix(const DistanceMatrix& d, Window window, std::vector<std::string> labels) {
  const std::size_t n = d.size();
  if (window.lo > window.hi) throw Error(ErrorCode::Usage, "window lo exceeds hi");
  auto where = [](std::size_t x, std::size_t y) {
    return " at (" + std::to_string(x) + "," + std::to_string(y) + ")";
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (d(x, x) != 0) throw Error(ErrorCode::RejectedInput, "nonzero diagonal" + where(x, x));
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (d(x, y) < 0) throw Error(ErrorCode::RejectedInput, "negative distance" + where(x, y));
      if (d(x, y) == 0) throw Error(ErrorCode::RejectedInput, "zero off-diagonal distance" + where(x, y));
      if (d(x, y) != d(y, x)) throw Error(ErrorCode::RejectedInput, "asymmetric distance" + where(x, y));
    }
  }
  GradeMatrix grades(n, Grade(window.below()));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (int level = window.hi; level >= window.lo; --level)
        if (at_most_pow2(d(x, y), level)) {
          grades.set(x, y, Grade(level));
          break;
        }
  if (labels.empty()) labels = default_labels(n);
  return RelationalSystem(std::move(labels), window, std::move(grades));
}

}  // namespace gradedrel
