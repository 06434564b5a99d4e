#pragma once

#include <string>

#include <json.hpp>

#include "gradedrel/bridge.hpp"
#include "gradedrel/dynamics.hpp"
#include "gradedrel/harness.hpp"
#include "gradedrel/hull.hpp"
#include "gradedrel/system.hpp"

namespace gradedrel {

using Json = nlohmann::ordered_json;

Json to_json(Grade g);
Json to_json(const DyadicValue& v);
Json to_json(const PointSet& s, const RelationalSystem& sys);
Json to_json(const AxiomReport& r, const RelationalSystem& sys);
Json to_json(const ClassificationReport& r, const RelationalSystem& sys);
Json to_json(const AdmissibleSet& a, const RelationalSystem& sys);
Json to_json(const RadiiReport& r, const RelationalSystem& sys);
Json to_json(const StructureReport& r, const RelationalSystem& sys);
Json to_json(const MapCheck& c, const RelationalSystem& sys);
Json to_json(const Orbit& o, const RelationalSystem& sys);
Json to_json(const RegularityReport& r, const RelationalSystem& sys);
Json to_json(const DichotomyReport& r, const RelationalSystem& sys);
Json to_json(const RegularFixedPointReport& r, const RelationalSystem& sys);
Json to_json(const Verdict& v);

/// Indented "key: value" rendering of a report; carries exactly the fields of the JSON form.
std::string render_human(const Json& report);

}  // namespace gradedrel
