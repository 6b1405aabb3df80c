#include "actsel/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include "actsel/combinatorics.hpp"
#include "actsel/error.hpp"
#include "actsel/reduction.hpp"

namespace actsel {
namespace {

Strategy strategy_for(const std::string& algorithm) {
  if (algorithm == "ilp") return Strategy::Ilp;
  if (algorithm == "dp") return Strategy::Multicover;
  if (algorithm == "greedy") return Strategy::Greedy;
  if (algorithm == "brute") return Strategy::Brute;
  throw Error(ErrorKind::InvalidInput, "unknown benchmark algorithm '" + algorithm + "'");
}

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

BenchTrial run_trial(const GeneratorSpec& spec, const BenchOptions& options, int t) {
  BenchTrial trial;
  trial.trial = t;
  trial.seed = spec.seed + static_cast<std::uint64_t>(t);
  GeneratorSpec trial_spec = spec;
  trial_spec.seed = trial.seed;

  std::optional<LinearSystem> sys;
  try {
    sys = generate(trial_spec).system;
    const SpectralDecomposition dec = decompose(*sys, options.select.tol);
    trial.p = dec.p();
    if (const auto t_sets = detect_spark_structure(dec, options.faults, options.select.tol,
                                                   options.select.limits)) {
      trial.coverage = to_cover_instance(dec, *t_sets, options.faults).coverage;
    }
    if (sys->m() <= options.select.limits.brute_force_sets) {
      trial.optimum = static_cast<int>(
          brute_force_selection(*sys, options.faults, options.select.tol, options.select.limits).size());
    }
  } catch (const Error& e) {
    trial.error = std::string(to_string(e.kind()));
  }

  for (const std::string& algorithm : options.algorithms) {
    BenchRow row;
    row.trial = t;
    row.algorithm = algorithm;
    if (trial.error) {
      row.status = *trial.error;
      trial.rows.push_back(std::move(row));
      continue;
    }
    SelectOptions select = options.select;
    select.strategy = strategy_for(algorithm);
    const auto started = std::chrono::steady_clock::now();
    try {
      const SelectionResult result = actsel::select(*sys, options.faults, select);
      row.cardinality = result.cardinality();
      row.status = result.optimal ? "true" : "false";
      if (trial.optimum && *trial.optimum > 0) {
        row.gap = static_cast<double>(result.cardinality()) / *trial.optimum;
      }
      if (algorithm == "greedy" && trial.optimum) {
        trial.greedy_within_bound =
            result.cardinality() <= harmonic(trial.p) * *trial.optimum + 1e-12;
      }
    } catch (const Error& e) {
      row.status = std::string(to_string(e.kind()));
    }
    if (options.timing) {
      row.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
    }
    trial.rows.push_back(std::move(row));
  }
  return trial;
}

}  // namespace

std::optional<double> BenchReport::greedy_bound_fraction() const {
  int total = 0, within = 0;
  for (const BenchTrial& t : trials) {
    if (!t.greedy_within_bound) continue;
    ++total;
    within += *t.greedy_within_bound ? 1 : 0;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(within) / total;
}

BenchReport run_bench(const GeneratorSpec& spec, const BenchOptions& options) {
  spec.validate();
  if (options.trials < 0) throw Error(ErrorKind::InvalidInput, "trial count must be nonnegative");
  for (const std::string& algorithm : options.algorithms) strategy_for(algorithm);

  BenchReport report;
  report.trials.resize(options.trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < options.trials; t = next++) {
      report.trials[t] = run_trial(spec, options, t);
    }
  };
  const int jobs = std::clamp(options.jobs, 1, std::max(1, options.trials));
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "trial,algorithm,cardinality,optimal,gap,runtime_ms\n";
  for (const BenchTrial& trial : report.trials) {
    for (const BenchRow& row : trial.rows) {
      out << row.trial << ',' << row.algorithm << ','
          << (row.cardinality ? std::to_string(*row.cardinality) : "") << ',' << row.status << ','
          << (row.gap ? fixed(*row.gap, 4) : "") << ','
          << (row.runtime_ms ? fixed(*row.runtime_ms, 3) : "") << '\n';
    }
  }
}

Json bench_to_json(const BenchReport& report) {
  Json trials = Json::array();
  for (const BenchTrial& trial : report.trials) {
    Json rows = Json::array();
    for (const BenchRow& row : trial.rows) {
      Json r{{"algorithm", row.algorithm}, {"status", row.status}};
      r["cardinality"] = row.cardinality ? Json(*row.cardinality) : Json(nullptr);
      r["gap"] = row.gap ? Json(*row.gap) : Json(nullptr);
      if (row.runtime_ms) r["runtime_ms"] = *row.runtime_ms;
      rows.push_back(std::move(r));
    }
    Json t{{"trial", trial.trial}, {"seed", trial.seed}, {"p", trial.p}, {"rows", std::move(rows)}};
    if (!trial.coverage.empty()) t["coverage"] = trial.coverage;
    if (trial.optimum) t["optimum"] = *trial.optimum;
    if (trial.greedy_within_bound) t["greedy_within_bound"] = *trial.greedy_within_bound;
    if (trial.error) t["error"] = *trial.error;
    trials.push_back(std::move(t));
  }
  Json doc{{"trials", std::move(trials)}};
  const auto fraction = report.greedy_bound_fraction();
  doc["greedy_within_bound_fraction"] = fraction ? Json(*fraction) : Json(nullptr);
  return doc;
}

}  // namespace actsel
