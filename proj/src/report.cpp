#include "gradedrel/report.hpp"

#include <sstream>

namespace gradedrel {

namespace {

Json label(const RelationalSystem& sys, std::size_t x) { return sys.labels()[x]; }

Json triple(const std::optional<Triple>& t, const RelationalSystem& sys) {
  if (!t) return nullptr;
  return Json{{"x", label(sys, t->x)}, {"via", label(sys, t->z)}, {"y", label(sys, t->y)}};
}

Json ball_ref(const BallRef& b, const RelationalSystem& sys) {
  return Json{{"center", label(sys, b.center)}, {"level", b.level}};
}

Json system_json(const RelationalSystem& sys) {
  Json grades = Json::array();
  for (std::size_t x = 0; x < sys.size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < sys.size(); ++y) row.push_back(to_json(sys.grade(x, y)));
    grades.push_back(std::move(row));
  }
  return Json{{"labels", sys.labels()}, {"window", {sys.window().lo, sys.window().hi}}, {"grades", std::move(grades)}};
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar(const Json& j) {
  if (j.is_null()) return "none";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool inline_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!is_scalar(e) && !(e.is_array() && inline_array(e))) return false;
  }
  return true;
}

std::string inline_form(const Json& j) {
  if (!j.is_array()) return scalar(j);
  std::string out = "[";
  bool first = true;
  for (const auto& e : j) {
    if (!first) out += ", ";
    first = false;
    out += inline_form(e);
  }
  return out + "]";
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_scalar(value) || inline_array(value)) {
        os << pad << key << ": " << inline_form(value) << "\n";
      } else {
        os << pad << key << ":" << (value.empty() ? " " + inline_form(value) : "") << "\n";
        render(value, indent + 1, os);
      }
    }
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& e : j) {
      if (is_scalar(e) || inline_array(e)) {
        os << pad << "- " << inline_form(e) << "\n";
      } else {
        os << pad << "[" << i << "]\n";
        render(e, indent + 1, os);
      }
      ++i;
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

Json to_json(Grade g) {
  if (g.is_top()) return "TOP";
  return g.level();
}

Json to_json(const DyadicValue& v) { return v.to_string(); }

Json to_json(const PointSet& s, const RelationalSystem& sys) {
  Json out = Json::array();
  for (std::size_t x : s.members()) out.push_back(label(sys, x));
  return out;
}

Json to_json(const AxiomReport& r, const RelationalSystem& sys) {
  Json out{{"axiom", to_string(r.axiom)}, {"holds", r.holds}};
  if (r.witness) {
    Json pts = Json::array();
    for (std::size_t p : r.witness->points) pts.push_back(label(sys, p));
    out["witness"] = Json{{"level", r.witness->level ? Json(*r.witness->level) : Json(nullptr)}, {"points", pts}};
  } else {
    out["witness"] = nullptr;
  }
  if (r.bound_grade) out["bound_grade"] = to_json(*r.bound_grade);
  return out;
}

Json to_json(const ClassificationReport& r, const RelationalSystem& sys) {
  Json semi_witness = nullptr;
  if (r.semimetric_witness) {
    semi_witness = Json::array({label(sys, r.semimetric_witness->first), label(sys, r.semimetric_witness->second)});
  }
  return Json{
      {"class", to_string(r.label)},
      {"semimetric", r.is_semimetric},
      {"semimetric_witness", semi_witness},
      {"inframetric_constant", to_json(r.minimal_c)},
      {"inframetric_witness", triple(r.c_witness, sys)},
      {"inframetric_verified", r.c_verified},
      {"triangle",
       {{"holds", r.triangle_holds},
        {"witness", triple(r.triangle_witness, sys)},
        {"lhs", r.triangle_witness ? to_json(r.triangle_lhs) : Json(nullptr)},
        {"rhs", r.triangle_witness ? to_json(r.triangle_rhs) : Json(nullptr)}}},
      {"strong_triangle", {{"holds", r.strong_triangle_holds}, {"witness", triple(r.strong_witness, sys)}}},
      {"relations", {{"r9", r.r9}, {"r10", r.r10}, {"transitive", r.transitive}}},
      {"violations",
       {{"r9_implies_2_inframetric", r.r9_implication_violated()},
        {"r10_implies_metric", r.r10_implication_violated()},
        {"transitive_iff_ultrametric", r.ultrametric_equivalence_violated()}}},
  };
}

Json to_json(const AdmissibleSet& a, const RelationalSystem& sys) {
  Json balls = Json::array();
  for (const auto& b : a.witness_balls) balls.push_back(ball_ref(b, sys));
  return Json{{"points", to_json(a.points, sys)}, {"mode", to_string(a.mode)}, {"balls", std::move(balls)}};
}

Json to_json(const RadiiReport& r, const RelationalSystem& sys) {
  Json per_point = Json::array();
  for (const auto& [x, v] : r.per_point) per_point.push_back(Json{{"point", label(sys, x)}, {"radius", to_json(v)}});
  return Json{{"per_point", std::move(per_point)}, {"chebyshev_radius", to_json(r.cheb_radius)},
              {"diameter", to_json(r.diameter)},   {"radius_grade", to_json(r.cheb_grade)},
              {"diameter_grade", to_json(r.diam_grade)}, {"center", label(sys, r.center)}};
}

Json to_json(const StructureReport& r, const RelationalSystem& sys) {
  Json family = Json::array();
  for (const auto& s : r.witness_family) family.push_back(to_json(s, sys));
  return Json{{"property", to_string(r.property)},
              {"holds", r.holds},
              {"witness", r.witness ? to_json(*r.witness, sys) : Json(nullptr)},
              {"witness_family", std::move(family)},
              {"examined", r.examined},
              {"note", r.note}};
}

Json to_json(const MapCheck& c, const RelationalSystem& sys) {
  Json witness = nullptr;
  if (c.witness) {
    witness = Json{{"x", label(sys, c.witness->x)},
                   {"y", label(sys, c.witness->y)},
                   {"grade_before", to_json(c.witness->before)},
                   {"grade_after", to_json(c.witness->after)}};
  }
  return Json{{"holds", c.holds}, {"witness", witness}};
}

Json to_json(const Orbit& o, const RelationalSystem& sys) {
  Json tail = Json::array();
  Json cycle = Json::array();
  Json trace = Json::array();
  for (std::size_t x : o.tail) tail.push_back(label(sys, x));
  for (std::size_t x : o.cycle) cycle.push_back(label(sys, x));
  for (Grade g : o.grade_trace) trace.push_back(to_json(g));
  return Json{{"start", label(sys, o.start)}, {"tail", tail}, {"cycle", cycle}, {"grade_trace", trace}};
}

Json to_json(const RegularityReport& r, const RelationalSystem& sys) {
  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"point", label(sys, r.point)},
              {"fixed", r.is_fixed},
              {"regular", r.regular},
              {"regular_offset", opt(r.regular_offset)},
              {"asymptotically_regular", r.asymptotically_regular},
              {"asymptotic_offset", opt(r.asymptotic_offset)},
              {"weak_regular", r.weak_regular},
              {"classical_asymptotic", r.classical_asymptotic}};
}

Json to_json(const DichotomyReport& r, const RelationalSystem& sys) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{
        {"point", label(sys, row.point)},
        {"ball", ball_ref(row.ball, sys)},
        {"outcome", to_string(row.outcome)},
        {"fixed_point", row.fixed_point ? label(sys, *row.fixed_point) : Json(nullptr)},
        {"invariant_ball", row.invariant_ball ? ball_ref(*row.invariant_ball, sys) : Json(nullptr)},
    });
  }
  return Json{{"hypotheses_met", r.hypotheses_met}, {"note", r.note}, {"rows", std::move(rows)}};
}

Json to_json(const RegularFixedPointReport& r, const RelationalSystem& sys) {
  Json balls = Json::array();
  for (const auto& b : r.invariant_balls) {
    balls.push_back(Json{{"ball", ball_ref(b.ball, sys)},
                         {"points", to_json(b.points, sys)},
                         {"fixed_points", to_json(b.fixed, sys)}});
  }
  return Json{{"variant", to_string(r.variant)},
              {"transitive", r.transitive},
              {"homomorphism", r.homomorphism},
              {"regularity", r.regularity},
              {"hypotheses_met", r.hypotheses_met()},
              {"falsified", r.falsified()},
              {"invariant_balls", std::move(balls)}};
}

Json to_json(const Verdict& v) {
  const ClaimInfo& info = claim_info(v.claim);
  Json out{{"claim", info.name},
           {"statement", info.statement},
           {"trials", v.trials},
           {"seed", v.seed},
           {"outcome", to_string(v.outcome)},
           {"vacuous_trials", v.vacuous_trials},
           {"note", v.note}};
  if (v.instance) {
    Json ce{{"trial", v.trial_index ? Json(*v.trial_index) : Json(nullptr)},
            {"original_points", v.original_points},
            {"points", v.instance->system.size()},
            {"locus", v.locus},
            {"system", system_json(v.instance->system)}};
    ce["map"] = v.instance->map ? Json(v.instance->map->image()) : Json(nullptr);
    out["counterexample"] = std::move(ce);
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

std::string render_human(const Json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

}  // namespace gradedrel
