#pragma once

#include <string>

#include "json.hpp"

#include "actsel/cover.hpp"
#include "actsel/generator.hpp"
#include "actsel/ilp.hpp"
#include "actsel/selector.hpp"
#include "actsel/spectral.hpp"

namespace actsel {

using Json = nlohmann::json;

/// Parsed system file: {"n":2,"m":2,"A":[...],"B":[...]} with row-major
/// arrays and optional "name"/"description".
struct SystemFile {
  LinearSystem system;
  std::string name;
  std::string description;
};

/// Reads and parses a JSON document; ParseError messages carry the line.
Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

SystemFile system_from_json(const Json& doc);
Json system_to_json(const LinearSystem& sys, const std::string& name = {});

/// {"universe": p, "coverage": [...], "sets": [[...], ...]}, 1-based.
Json cover_instance_to_json(const CoverInstance& inst);
CoverInstance cover_instance_from_json(const Json& doc);

/// {"chosen": [...], "optimal": bool}, 1-based.
Json cover_solution_to_json(const CoverSolution& sol);

/// {"m": m, "blocks": [{"required": r, "rows": [[...], ...]}]}, 1-based.
Json ilp_model_to_json(const IlpModel& model);
IlpModel ilp_model_from_json(const Json& doc);

Json complex_to_json(Complex z);
Json selection_result_to_json(const SelectionResult& result);
Json verify_report_to_json(const VerifyReport& report);

GeneratorSpec generator_spec_from_json(const Json& doc);

}  // namespace actsel
