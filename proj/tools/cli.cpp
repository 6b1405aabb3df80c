#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "actsel/bench.hpp"
#include "actsel/cover.hpp"
#include "actsel/generator.hpp"
#include "actsel/ilp.hpp"
#include "actsel/io.hpp"
#include "actsel/reduction.hpp"
#include "actsel/selector.hpp"
#include "actsel/spectral.hpp"

namespace actsel::cli {
namespace {

struct Common {
  Tolerances tol;
  Limits limits;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
};

std::string complex_text(Complex z) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%.6g%+.6gi", z.real(), z.imag());
  return buffer;
}

std::string join(const IndexSet& s, const char* sep) {
  std::string out;
  for (int j : s) out += (out.empty() ? "" : sep) + std::to_string(j + 1);
  return out;
}

// "1,3,4" -> {0, 2, 3}; range errors surface as IndexOutOfRange.
IndexSet parse_set(const std::string& text, int m) {
  IndexSet s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorKind::IndexOutOfRange, "bad actuator index '" + item + "'");
    if (value < 1 || value > m) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "actuator index " + std::to_string(value) + " outside 1.." + std::to_string(m));
    }
    s.push_back(value - 1);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Json analysis_json(const SpectralDecomposition& dec, const Tolerances& tol, const Limits& limits) {
  Json modes = Json::array();
  for (const Mode& mode : dec.modes) {
    Json rows = Json::array();
    for (int r : mode.zero_rows) rows.push_back(r + 1);
    modes.push_back(Json{{"lambda", complex_to_json(mode.lambda)},
                         {"alg_mult", mode.alg_mult},
                         {"geo_mult", mode.geo_mult},
                         {"zero_rows", std::move(rows)},
                         {"blocks", mode.block_sizes},
                         {"conjugate_pair", mode.conjugate_of.has_value()}});
  }
  Json doc{{"n", dec.n()},
           {"m", dec.m()},
           {"p", dec.p()},
           {"max_geo_mult", dec.max_geo_mult()},
           {"residual", dec.residual},
           {"modes", std::move(modes)}};
  const auto t_sets = detect_spark_structure(dec, 0, tol, limits);
  doc["certified"] = t_sets.has_value();
  if (t_sets) {
    Json ts = Json::array();
    for (const IndexSet& t : *t_sets) {
      Json one = Json::array();
      for (int j : t) one.push_back(j + 1);
      ts.push_back(std::move(one));
    }
    doc["t_sets"] = std::move(ts);
  }
  return doc;
}

void print_analysis_text(std::ostream& out, const Json& doc) {
  out << "n = " << doc["n"] << ", m = " << doc["m"] << ", p = " << doc["p"]
      << ", G(A) = " << doc["max_geo_mult"] << ", residual = " << doc["residual"].get<double>()
      << "\n";
  out << "mode  lambda                      a    g  zero rows\n";
  int i = 1;
  for (const Json& mode : doc["modes"]) {
    char line[160];
    std::string rows;
    for (const Json& r : mode["zero_rows"]) rows += (rows.empty() ? "" : " ") + std::to_string(r.get<int>());
    std::snprintf(line, sizeof line, "%4d  %-26s %2d %4d  %s\n", i++,
                  complex_text({mode["lambda"]["re"].get<double>(), mode["lambda"]["im"].get<double>()}).c_str(),
                  mode["alg_mult"].get<int>(), mode["geo_mult"].get<int>(), rows.c_str());
    out << line;
  }
  out << "multicover structure certified (f = 0): " << (doc["certified"].get<bool>() ? "yes" : "no")
      << "\n";
}

void print_selection_text(std::ostream& out, const SelectionResult& result) {
  out << "chosen       : " << join(result.chosen, " ") << "\n"
      << "cardinality  : " << result.cardinality() << "\n"
      << "method       : " << to_string(result.method) << "\n"
      << "optimal      : " << (result.optimal ? "true" : "false") << "\n"
      << "fault budget : " << result.fault_budget << "\n"
      << "mode  lambda                      PBH margin\n";
  int i = 1;
  for (const ModeMargin& mm : result.certificate) {
    char line[128];
    std::snprintf(line, sizeof line, "%4d  %-26s  %.3e\n", i++, complex_text(mm.lambda).c_str(), mm.margin);
    out << line;
  }
}

void add_tolerance_flags(CLI::App& app, Common& common) {
  app.add_option("--tol-rank", common.tol.rank_rel, "relative singular-value rank threshold")
      ->capture_default_str();
  app.add_option("--tol-cluster", common.tol.eig_cluster, "relative eigenvalue clustering radius")
      ->capture_default_str();
  app.add_option("--tol-residual", common.tol.residual_max, "maximum Jordan reconstruction residual")
      ->capture_default_str();
  app.add_option("--cap-enum", common.limits.enumeration, "subset enumeration cap")->capture_default_str();
  app.add_option("--cap-states", common.limits.dp_states, "multicover DP state cap")->capture_default_str();
}

// Each command lists only the formats it can write; bench defaults to csv.
void add_format(CLI::App& app, Common& common, const std::vector<std::string>& allowed) {
  app.add_option("--format", common.format, "output format")
      ->check(CLI::IsMember(allowed))
      ->default_str(allowed.front());
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::InfeasibleCover: return kInfeasible;
    case ErrorKind::Uncontrollable: return kUncontrollable;
    case ErrorKind::NotCertified:
    case ErrorKind::StrategyUnavailable: return kNotCertified;
    case ErrorKind::VerificationFailed: return kVerifyFailed;
    case ErrorKind::DecompositionFailed: return kDecompositionFailed;
    case ErrorKind::ModeTooLarge:
    case ErrorKind::StateSpaceTooLarge:
    case ErrorKind::InstanceTooLarge:
    case ErrorKind::FaultEnumerationTooLarge: return kBudgetExceeded;
    case ErrorKind::ConditioningFailed: return kConditioningFailed;
    case ErrorKind::IndexOutOfRange: return kUsage;
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidShape:
    case ErrorKind::ParseError:
    case ErrorKind::SpecError: return kDataError;
    case ErrorKind::IoError: return kNoInput;
  }
  return kSoftware;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal and fault-tolerant actuator selection for linear systems"};
  app.require_subcommand(1);
  Common common;
  std::string input;
  int faults = 0;
  std::string strategy = "auto";
  std::string set_text;
  int trials = 10;
  std::vector<std::string> algorithms{"ilp", "dp", "greedy", "brute"};
  bool timing = false;
  int jobs = 1;
  std::string cover_algorithm = "dp";

  auto* analyze = app.add_subcommand("analyze", "Jordan structure and multicover certification");
  analyze->add_option("system", input, "system JSON file")->required();
  add_tolerance_flags(*analyze, common);
  add_format(*analyze, common, {"json", "text"});

  auto* select_cmd = app.add_subcommand("select", "minimal (fault-tolerant) actuator set");
  select_cmd->add_option("system", input, "system JSON file")->required();
  select_cmd->add_option("--faults", faults, "simultaneous actuator faults to tolerate")
      ->check(CLI::NonNegativeNumber);
  select_cmd->add_option("--strategy", strategy, "auto, ilp, multicover, greedy or brute")
      ->check(CLI::IsMember({"auto", "ilp", "multicover", "greedy", "brute"}));
  add_tolerance_flags(*select_cmd, common);
  add_format(*select_cmd, common, {"json", "text"});

  auto* reduce = app.add_subcommand("reduce", "emit the set-multicover instance");
  reduce->add_option("system", input, "system JSON file")->required();
  reduce->add_option("--faults", faults, "fault budget")->check(CLI::NonNegativeNumber);
  add_tolerance_flags(*reduce, common);
  add_format(*reduce, common, {"json"});

  auto* verify_cmd = app.add_subcommand("verify", "PBH certificate of an actuator set");
  verify_cmd->add_option("system", input, "system JSON file")->required();
  verify_cmd->add_option("--set", set_text, "1-based actuator list, e.g. 1,3,4")->required();
  verify_cmd->add_option("--faults", faults, "fault budget")->check(CLI::NonNegativeNumber);
  add_tolerance_flags(*verify_cmd, common);
  add_format(*verify_cmd, common, {"json", "text"});

  auto* bench = app.add_subcommand("bench", "benchmark solvers on generated instances");
  bench->add_option("spec", input, "generator spec JSON file")->required();
  bench->add_option("--trials", trials, "number of instances")->check(CLI::NonNegativeNumber);
  bench->add_option("--algorithms", algorithms, "subset of ilp,dp,greedy,brute")->delimiter(',');
  bench->add_option("--faults", faults, "fault budget")->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", common.seed, "override the generator seed");
  bench->add_flag("--timing", timing, "fill the runtime_ms column (not reproducible)");
  bench->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  add_tolerance_flags(*bench, common);
  add_format(*bench, common, {"csv", "json"});

  auto* generate_cmd = app.add_subcommand("generate", "write a random system from a generator spec");
  generate_cmd->add_option("spec", input, "generator spec JSON file")->required();
  generate_cmd->add_option("--seed", common.seed, "override the generator seed");

  auto* cover_cmd = app.add_subcommand("cover", "solve a set-multicover instance file");
  cover_cmd->add_option("instance", input, "cover instance JSON file")->required();
  cover_cmd->add_option("--algorithm", cover_algorithm, "dp, greedy or brute")
      ->check(CLI::IsMember({"dp", "greedy", "brute"}));
  cover_cmd->add_option("--cap-states", common.limits.dp_states, "multicover DP state cap");

  auto* export_cmd = app.add_subcommand("export-ilp", "write the selection ILP as JSON");
  export_cmd->add_option("system", input, "system JSON file")->required();
  export_cmd->add_option("--faults", faults, "fault budget")->check(CLI::NonNegativeNumber);
  add_tolerance_flags(*export_cmd, common);
  add_format(*export_cmd, common, {"json"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) {
      const SystemFile file = system_from_json(read_json_file(input));
      const SpectralDecomposition dec = decompose(file.system, common.tol);
      const Json doc = analysis_json(dec, common.tol, common.limits);
      if (common.format == "text") {
        print_analysis_text(out, doc);
      } else {
        out << doc.dump(2) << "\n";
      }
      return kOk;
    }

    if (*select_cmd) {
      const SystemFile file = system_from_json(read_json_file(input));
      SelectOptions options{parse_strategy(strategy), common.tol, common.limits};
      const SelectionResult result = actsel::select(file.system, faults, options);
      if (common.format == "text") {
        print_selection_text(out, result);
      } else {
        out << selection_result_to_json(result).dump(2) << "\n";
      }
      return kOk;
    }

    if (*reduce) {
      const SystemFile file = system_from_json(read_json_file(input));
      const SpectralDecomposition dec = decompose(file.system, common.tol);
      const FeasibilityReport feas = feasibility(dec, faults);
      if (!feas.feasible) {
        throw Error(ErrorKind::Infeasible, "mode " + std::to_string(*feas.violating_mode + 1) +
                                               ": g_i + f exceeds m");
      }
      const auto t_sets = detect_spark_structure(dec, faults, common.tol, common.limits);
      if (!t_sets) {
        throw Error(ErrorKind::NotCertified,
                    "full-spark / zero-complement structure not present; use the ILP path");
      }
      out << cover_instance_to_json(to_cover_instance(dec, *t_sets, faults)).dump() << "\n";
      return kOk;
    }

    if (*verify_cmd) {
      const SystemFile file = system_from_json(read_json_file(input));
      const IndexSet s = parse_set(set_text, file.system.m());
      const VerifyReport report = verify(file.system, s, faults, common.tol, common.limits);
      if (common.format == "text") {
        out << (report.passed ? "PASS" : "FAIL") << "\n";
        for (const ModeMargin& mm : report.margins) {
          out << "  lambda " << complex_text(mm.lambda) << "  margin " << mm.margin << "\n";
        }
      } else {
        out << verify_report_to_json(report).dump(2) << "\n";
      }
      if (!report.passed) {
        err << "PBH test fails at lambda = " << complex_text(report.violation->lambda)
            << " with faults F = {" << join(report.violation->faults, ",") << "}\n";
        return kVerifyFailed;
      }
      return kOk;
    }

    if (*bench) {
      if (bench->count("--format") == 0) common.format = "csv";
      GeneratorSpec spec = generator_spec_from_json(read_json_file(input));
      if (common.seed) spec.seed = *common.seed;
      BenchOptions options;
      options.trials = trials;
      options.algorithms = algorithms;
      options.faults = faults;
      options.select.tol = common.tol;
      options.select.limits = common.limits;
      options.timing = timing;
      options.jobs = jobs;
      const BenchReport report = run_bench(spec, options);
      if (common.format == "json") {
        out << bench_to_json(report).dump(2) << "\n";
      } else {
        write_bench_csv(out, report);
        if (const auto fraction = report.greedy_bound_fraction()) {
          err << "greedy within H(p) x optimum on " << (*fraction * 100.0) << "% of instances\n";
        }
      }
      return kOk;
    }

    if (*generate_cmd) {
      GeneratorSpec spec = generator_spec_from_json(read_json_file(input));
      if (common.seed) spec.seed = *common.seed;
      const GeneratedSystem generated = generate(spec);
      out << system_to_json(generated.system).dump(2) << "\n";
      return kOk;
    }

    if (*cover_cmd) {
      const CoverInstance inst = cover_instance_from_json(read_json_file(input));
      CoverSolution solution;
      if (cover_algorithm == "greedy") {
        solution = greedy_multicover(inst);
      } else if (cover_algorithm == "brute") {
        solution = brute_force_cover(inst);
      } else {
        solution = exact_multicover_dp(inst, common.limits.dp_states);
      }
      out << cover_solution_to_json(solution).dump() << "\n";
      return kOk;
    }

    if (*export_cmd) {
      const SystemFile file = system_from_json(read_json_file(input));
      const SpectralDecomposition dec = decompose(file.system, common.tol);
      const SelectionMatrices sel = faults == 0 ? build_nominal(dec, common.tol, common.limits)
                                                : build_robust(dec, faults, common.tol, common.limits);
      out << ilp_model_to_json(build_model(sel)).dump() << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error [ParseError]: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kSoftware;
  }
  return kUsage;
}

}  // namespace actsel::cli
