#include "gradedrel/cli.hpp"

#include <CLI11.hpp>

#include "gradedrel/formats.hpp"
#include "gradedrel/report.hpp"

namespace gradedrel {

namespace {

struct Options {
  bool json = false;
  bool quiet = false;
};

void emit(const Json& report, const Options& opts, std::ostream& out) {
  if (opts.quiet) return;
  if (opts.json) {
    out << report.dump(2) << "\n";
  } else {
    out << render_human(report);
  }
}

RelationalSystem load_system(const std::string& path) { return parse_system_file(read_file(path)); }

SelfMap load_map(const std::string& path, const RelationalSystem& sys) {
  SelfMap t = parse_map_file(read_file(path));
  if (t.size() != sys.size()) {
    throw ParseError(Diagnostic{std::string(kDiagDimension), 2, 1,
                                "map has " + std::to_string(t.size()) + " points, system has " +
                                    std::to_string(sys.size())});
  }
  return t;
}

HullMode parse_mode(const std::string& mode) {
  return mode == "closure" ? HullMode::ArbitraryCenter : HullMode::PaperCov;
}

int cmd_validate(const std::string& path, const Options& opts, std::ostream& out) {
  const RelationalSystem sys = load_system(path);
  Json axioms = Json::array();
  for (AxiomId id : {AxiomId::R5, AxiomId::R9, AxiomId::R10, AxiomId::Transitive}) {
    axioms.push_back(to_json(check_axiom(sys, id), sys));
  }
  emit(Json{{"command", "validate"},
            {"file", path},
            {"points", sys.size()},
            {"window", {sys.window().lo, sys.window().hi}},
            {"diagnostics", Json::array()},
            {"axioms", std::move(axioms)}},
       opts, out);
  return kExitOk;
}

int cmd_classify(const std::string& path, const Options& opts, std::ostream& out) {
  const RelationalSystem sys = load_system(path);
  const ClassificationReport r = classify(sys);
  Json report{{"command", "classify"}, {"file", path}};
  report.update(to_json(r, sys));
  emit(report, opts, out);
  return r.any_implication_violated() ? kExitViolation : kExitOk;
}

int cmd_hulls(const std::string& path, const std::string& mode, const Options& opts, std::ostream& out) {
  const RelationalSystem sys = load_system(path);
  const HullMode m = parse_mode(mode);
  Json sets = Json::array();
  for (const AdmissibleSet& a : enumerate_admissible(sys, m)) {
    Json entry = to_json(a, sys);
    entry["radii"] = to_json(radii(sys, a.points), sys);
    if (a.points.count() >= 2) {
      const NormalityCriteria c = normality_criteria(sys, a.points);
      entry["radius_below_diameter"] = Json{{"by_grades", c.by_grades},
                                            {"by_distances", c.by_distances},
                                            {"by_relations", c.by_relations},
                                            {"radius_relation_top", c.r_e_top},
                                            {"diameter_relation_top", c.delta_e_top}};
    } else {
      entry["radius_below_diameter"] = nullptr;
    }
    sets.push_back(std::move(entry));
  }
  emit(Json{{"command", "hulls"}, {"file", path}, {"mode", to_string(m)}, {"admissible", std::move(sets)}}, opts,
       out);
  return kExitOk;
}

int cmd_structure(const std::string& path, const std::string& mode, const Options& opts, std::ostream& out) {
  const RelationalSystem sys = load_system(path);
  const HullMode m = parse_mode(mode);
  emit(Json{{"command", "structure"},
            {"file", path},
            {"mode", to_string(m)},
            {"compact", to_json(check_compact_structure(sys, m), sys)},
            {"normal", to_json(check_normal_structure(sys, m), sys)},
            {"spherical", to_json(check_spherical_completeness(sys), sys)}},
       opts, out);
  return kExitOk;
}

int cmd_dynamics(const std::string& sys_path, const std::string& map_path, const Options& opts, std::ostream& out) {
  const RelationalSystem sys = load_system(sys_path);
  const SelfMap t = load_map(map_path, sys);
  const MapCheck homo = is_homomorphism(sys, t);
  const MapCheck nonexp = is_nonexpansive(sys, t);
  Json points = Json::array();
  for (std::size_t x = 0; x < sys.size(); ++x) {
    Json entry = to_json(regularity_report(sys, t, x), sys);
    entry["orbit"] = to_json(orbit(sys, t, x), sys);
    points.push_back(std::move(entry));
  }
  emit(Json{{"command", "dynamics"},
            {"file", sys_path},
            {"map", map_path},
            {"homomorphism", to_json(homo, sys)},
            {"nonexpansive", to_json(nonexp, sys)},
            {"agree", homo.holds == nonexp.holds},
            {"fixed_points", to_json(fixed_points(t), sys)},
            {"points", std::move(points)}},
       opts, out);
  return homo.holds == nonexp.holds ? kExitOk : kExitViolation;
}

int cmd_fixpoint(const std::string& sys_path, const std::string& map_path, const Options& opts, std::ostream& out) {
  const RelationalSystem sys = load_system(sys_path);
  const SelfMap t = load_map(map_path, sys);
  const MapCheck homo = is_homomorphism(sys, t);
  Json report{{"command", "fixpoint"},
              {"file", sys_path},
              {"map", map_path},
              {"homomorphism", to_json(homo, sys)},
              {"fixed_points", to_json(fixed_points(t), sys)}};

  Json minimal = nullptr;
  Json balls = nullptr;
  if (homo.holds) {
    minimal = Json::array();
    for (const auto& a : minimal_invariant_admissible(sys, t, HullMode::PaperCov)) minimal.push_back(to_json(a, sys));
    balls = Json::array();
    for (const BallRef& b : minimal_invariant_balls(sys, t)) {
      balls.push_back(Json{{"center", sys.labels()[b.center]},
                           {"level", b.level},
                           {"points", to_json(ball(sys, b.center, b.level), sys)}});
    }
  }
  report["minimal_invariant_admissible"] = std::move(minimal);
  report["minimal_invariant_balls"] = std::move(balls);

  const DichotomyReport ks = ks_dichotomy(sys, t);
  const RegularFixedPointReport regular = regular_fixed_point(sys, t, RegularityVariant::Regular);
  const RegularFixedPointReport asymptotic = regular_fixed_point(sys, t, RegularityVariant::Asymptotic);
  report["dichotomy"] = to_json(ks, sys);
  report["regular"] = to_json(regular, sys);
  report["asymptotic"] = to_json(asymptotic, sys);
  emit(report, opts, out);

  const bool violated = (ks.hypotheses_met && ks.has_neither()) || regular.falsified() || asymptotic.falsified();
  return violated ? kExitViolation : kExitOk;
}

int cmd_falsify(const std::string& claim_name, std::size_t trials, std::uint64_t seed, const std::string& bundle_path,
                const Options& opts, std::ostream& out) {
  const auto claim = parse_claim_id(claim_name);
  if (!claim) {
    std::string known;
    for (const auto& info : claim_catalog()) known += " " + std::string(info.name);
    throw Error(ErrorCode::Usage, "unknown claim '" + claim_name + "'; known claims:" + known);
  }
  const Verdict v = falsify(*claim, trials, seed);
  if (v.instance && !bundle_path.empty()) write_file(bundle_path, serialize_counterexample(v));
  emit(to_json(v), opts, out);
  return v.outcome == VerdictOutcome::Counterexample ? kExitViolation : kExitOk;
}

int cmd_ingest(const std::string& path, const std::vector<int>& window, const std::string& out_path,
               const Options& opts, std::ostream& out) {
  const DistanceMatrix d = parse_matrix_file(read_file(path));
  const RelationalSystem sys = ingest_distance_matrix(d, Window{window[0], window[1]});
  const std::string text = serialize_system(sys);
  if (out_path.empty()) {
    if (!opts.quiet) out << text;
    return kExitOk;
  }
  write_file(out_path, text);
  Json grades = Json::array();
  for (std::size_t x = 0; x < sys.size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < sys.size(); ++y) row.push_back(to_json(sys.grade(x, y)));
    grades.push_back(std::move(row));
  }
  emit(Json{{"command", "ingest"},
            {"file", path},
            {"output", out_path},
            {"window", {window[0], window[1]}},
            {"grades", std::move(grades)}},
       opts, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded relational systems: validation, classification, hulls, dynamics and claim falsification",
               "gradedrel"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);

  Options opts;
  app.add_flag("--json", opts.json, "Machine-readable report");
  app.add_flag("--quiet", opts.quiet, "Suppress the report; exit status only");

  std::string system_path, map_path, mode = "paper", claim, bundle_path, output;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::vector<int> window;
  const std::vector<std::string> modes{"paper", "closure"};

  auto* validate = app.add_subcommand("validate", "Parse and validate a system file");
  validate->add_option("system", system_path)->required();

  auto* cls = app.add_subcommand("classify", "Classify the induced distance");
  cls->add_option("system", system_path)->required();

  auto* hulls = app.add_subcommand("hulls", "Enumerate admissible sets with radii");
  hulls->add_option("system", system_path)->required();
  hulls->add_option("--mode", mode, "Hull operator: paper (centres in the set) or closure (any centre)")->check(CLI::IsMember(modes));

  auto* structure = app.add_subcommand("structure", "Compact, normal and spherical-completeness reports");
  structure->add_option("system", system_path)->required();
  structure->add_option("--mode", mode, "Hull operator: paper (centres in the set) or closure (any centre)")->check(CLI::IsMember(modes));

  auto* dynamics = app.add_subcommand("dynamics", "Homomorphism, nonexpansiveness, orbits and regularity");
  dynamics->add_option("system", system_path)->required();
  dynamics->add_option("map", map_path)->required();

  auto* fixpoint = app.add_subcommand("fixpoint", "Fixed points, minimal invariant sets and the dichotomy");
  fixpoint->add_option("system", system_path)->required();
  fixpoint->add_option("map", map_path)->required();

  auto* fals = app.add_subcommand("falsify", "Search for a counterexample to a catalogued claim");
  fals->add_option("claim", claim)->required();
  fals->add_option("--trials", trials, "Number of random instances (default 1000)")->check(CLI::PositiveNumber);
  fals->add_option("--seed", seed, "Base seed (default 0)");
  fals->add_option("-o,--output", bundle_path, "Write the shrunk counterexample here");

  auto* ingest = app.add_subcommand("ingest", "Grade a distance matrix into a system file");
  ingest->add_option("matrix", system_path)->required();
  ingest->add_option("--window", window, "Grade window lo hi")->expected(2)->required()->allow_extra_args(false);
  ingest->add_option("-o,--output", output, "Write the system file here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(system_path, opts, out);
    if (*cls) return cmd_classify(system_path, opts, out);
    if (*hulls) return cmd_hulls(system_path, mode, opts, out);
    if (*structure) return cmd_structure(system_path, mode, opts, out);
    if (*dynamics) return cmd_dynamics(system_path, map_path, opts, out);
    if (*fixpoint) return cmd_fixpoint(system_path, map_path, opts, out);
    if (*fals) return cmd_falsify(claim, trials, seed, bundle_path, opts, out);
    if (*ingest) {
      if (window[0] > window[1]) throw Error(ErrorCode::Usage, "--window lo must not exceed hi");
      return cmd_ingest(system_path, window, output, opts, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.diagnostic().to_string() << "\n";
    if (opts.json && !opts.quiet) {
      const Diagnostic& d = e.diagnostic();
      out << Json{{"diagnostics", Json::array({Json{{"code", d.code},
                                                    {"line", d.line},
                                                    {"column", d.column},
                                                    {"message", d.message}}})}}
                 .dump(2)
          << "\n";
    }
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gradedrel
