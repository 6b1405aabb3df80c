#include "actsel/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "actsel/error.hpp"

namespace actsel {
namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) parse_fail("expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

int positive_int(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    parse_fail(std::string("field '") + key + "' must be a positive integer");
  }
  return v.get<int>();
}

Eigen::MatrixXd row_major(const Json& doc, const char* key, int rows, int cols) {
  const Json& v = field(doc, key);
  if (!v.is_array()) parse_fail(std::string("field '") + key + "' must be an array");
  const std::size_t expected = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (v.size() != expected) {
    parse_fail(std::string("field '") + key + "': expected " + std::to_string(expected) +
               " entries, got " + std::to_string(v.size()));
  }
  Eigen::MatrixXd out(rows, cols);
  for (std::size_t k = 0; k < expected; ++k) {
    if (!v[k].is_number()) {
      parse_fail(std::string("field '") + key + "': entry " + std::to_string(k) + " is not a number");
    }
    out(static_cast<Eigen::Index>(k) / cols, static_cast<Eigen::Index>(k) % cols) = v[k].get<double>();
  }
  return out;
}

Json one_based(const IndexSet& s) {
  Json out = Json::array();
  for (int j : s) out.push_back(j + 1);
  return out;
}

IndexSet zero_based(const Json& v, const std::string& what, int upper) {
  if (!v.is_array()) parse_fail(what + " must be an array");
  IndexSet s;
  for (const Json& e : v) {
    if (!e.is_number_integer()) parse_fail(what + " must contain integers");
    const int idx = e.get<int>();
    if (idx < 1 || idx > upper) {
      parse_fail(what + ": index " + std::to_string(idx) + " outside 1.." + std::to_string(upper));
    }
    s.push_back(idx - 1);
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) parse_fail(what + " repeats an index");
  return s;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    parse_fail("malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json_text(buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

SystemFile system_from_json(const Json& doc) {
  const int n = positive_int(doc, "n");
  const int m = positive_int(doc, "m");
  Eigen::MatrixXd a = row_major(doc, "A", n, n);
  Eigen::MatrixXd b = row_major(doc, "B", n, m);
  std::string name = doc.value("name", std::string());
  std::string description = doc.value("description", std::string());
  return SystemFile{LinearSystem(std::move(a), std::move(b)), std::move(name), std::move(description)};
}

Json system_to_json(const LinearSystem& sys, const std::string& name) {
  Json doc;
  if (!name.empty()) doc["name"] = name;
  doc["n"] = sys.n();
  doc["m"] = sys.m();
  Json a = Json::array(), b = Json::array();
  for (int r = 0; r < sys.n(); ++r) {
    for (int c = 0; c < sys.n(); ++c) a.push_back(sys.a()(r, c));
    for (int c = 0; c < sys.m(); ++c) b.push_back(sys.b()(r, c));
  }
  doc["A"] = std::move(a);
  doc["B"] = std::move(b);
  return doc;
}

Json cover_instance_to_json(const CoverInstance& inst) {
  Json doc;
  doc["universe"] = inst.universe;
  doc["coverage"] = inst.coverage;
  Json sets = Json::array();
  for (const IndexSet& set : inst.sets) sets.push_back(one_based(set));
  doc["sets"] = std::move(sets);
  return doc;
}

CoverInstance cover_instance_from_json(const Json& doc) {
  CoverInstance inst;
  const Json& universe = field(doc, "universe");
  if (!universe.is_number_integer() || universe.get<int>() < 0) {
    parse_fail("field 'universe' must be a nonnegative integer");
  }
  inst.universe = universe.get<int>();
  const Json& coverage = field(doc, "coverage");
  if (!coverage.is_array()) parse_fail("field 'coverage' must be an array");
  for (const Json& b : coverage) {
    if (!b.is_number_integer()) parse_fail("field 'coverage' must contain integers");
    inst.coverage.push_back(b.get<int>());
  }
  const Json& sets = field(doc, "sets");
  if (!sets.is_array()) parse_fail("field 'sets' must be an array");
  for (std::size_t j = 0; j < sets.size(); ++j) {
    inst.sets.push_back(zero_based(sets[j], "set " + std::to_string(j + 1), inst.universe));
  }
  try {
    inst.validate();
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return inst;
}

Json cover_solution_to_json(const CoverSolution& sol) {
  return Json{{"chosen", one_based(sol.chosen)}, {"optimal", sol.optimal}};
}

Json ilp_model_to_json(const IlpModel& model) {
  Json blocks = Json::array();
  for (const IlpBlock& block : model.blocks) {
    Json rows = Json::array();
    for (const IndexSet& row : block.rows) rows.push_back(one_based(row));
    blocks.push_back(Json{{"required", block.required}, {"rows", std::move(rows)}});
  }
  return Json{{"m", model.m}, {"blocks", std::move(blocks)}};
}

IlpModel ilp_model_from_json(const Json& doc) {
  IlpModel model;
  model.m = positive_int(doc, "m");
  const Json& blocks = field(doc, "blocks");
  if (!blocks.is_array()) parse_fail("field 'blocks' must be an array");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    IlpBlock block;
    block.required = positive_int(blocks[b], "required");
    const Json& rows = field(blocks[b], "rows");
    if (!rows.is_array()) parse_fail("block " + std::to_string(b + 1) + ": 'rows' must be an array");
    for (const Json& row : rows) {
      block.rows.push_back(zero_based(row, "block " + std::to_string(b + 1) + " row", model.m));
    }
    model.blocks.push_back(std::move(block));
  }
  try {
    model.validate();
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return model;
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json selection_result_to_json(const SelectionResult& result) {
  Json certificate = Json::array();
  for (const ModeMargin& mm : result.certificate) {
    certificate.push_back(Json{{"lambda", complex_to_json(mm.lambda)}, {"margin", mm.margin}});
  }
  Json doc{{"chosen", one_based(result.chosen)},
           {"cardinality", result.cardinality()},
           {"method", std::string(to_string(result.method))},
           {"optimal", result.optimal},
           {"fault_budget", result.fault_budget},
           {"certificate", std::move(certificate)}};
  if (!result.coverage.empty()) doc["coverage"] = result.coverage;
  return doc;
}

Json verify_report_to_json(const VerifyReport& report) {
  Json margins = Json::array();
  for (const ModeMargin& mm : report.margins) {
    margins.push_back(Json{{"lambda", complex_to_json(mm.lambda)}, {"margin", mm.margin}});
  }
  Json doc{{"passed", report.passed}, {"margins", std::move(margins)}};
  if (report.violation) {
    doc["violation"] = Json{{"lambda", complex_to_json(report.violation->lambda)},
                            {"faults", one_based(report.violation->faults)}};
  }
  return doc;
}

GeneratorSpec generator_spec_from_json(const Json& doc) {
  auto spec_fail = [](const std::string& what) { throw Error(ErrorKind::SpecError, what); };
  GeneratorSpec spec;
  try {
    const Json& eigs = field(doc, "eigenvalues");
    if (!eigs.is_array()) spec_fail("'eigenvalues' must be an array");
    for (const Json& e : eigs) {
      EigenvalueSpec es;
      es.value = {e.at("re").get<double>(), e.value("im", 0.0)};
      es.conjugate_pair = es.value.imag() != 0.0;
      es.alg_mult = e.value("alg", 1);
      es.geo_mult = e.value("geo", 1);
      spec.eigenvalues.push_back(es);
    }
    spec.actuators_per_mode = field(doc, "actuators_per_mode").get<std::vector<int>>();
    if (doc.contains("m")) spec.m = doc.at("m").get<int>();
    spec.overlap = doc.value("overlap", 0.0);
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.conditioning = doc.value("conditioning", 1e3);
    spec.dependent_modes = doc.value("dependent_modes", 0);
    if (doc.contains("n") && doc.at("n").get<int>() != spec.n()) {
      spec_fail("declared n = " + std::to_string(doc.at("n").get<int>()) +
                " but algebraic multiplicities sum to " + std::to_string(spec.n()));
    }
  } catch (const Json::exception& e) {
    spec_fail(std::string("generator spec: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) spec_fail(e.what());
    throw;
  }
  spec.validate();
  return spec;
}

}  // namespace actsel
