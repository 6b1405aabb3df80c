#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "actsel/generator.hpp"
#include "actsel/io.hpp"
#include "actsel/selector.hpp"

namespace actsel {

/// Algorithms the harness knows: "ilp", "dp", "greedy", "brute".
struct BenchOptions {
  int trials = 10;
  std::vector<std::string> algorithms{"ilp", "dp", "greedy", "brute"};
  int faults = 0;
  SelectOptions select;
  /// Wall-clock timing is opt-in; without it the output is a pure function
  /// of the generator spec and options.
  bool timing = false;
  int jobs = 1;
};

struct BenchRow {
  int trial = 0;
  std::string algorithm;
  std::optional<int> cardinality;
  std::string status;              // "true", "false" (optimal flag) or an error kind
  std::optional<double> gap;       // cardinality / brute-force optimum
  std::optional<double> runtime_ms;
};

struct BenchTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  int p = 0;
  std::vector<int> coverage;       // multicover requirements when certified
  std::optional<int> optimum;      // brute-force reference
  std::optional<bool> greedy_within_bound;
  std::optional<std::string> error;
  std::vector<BenchRow> rows;
};

struct BenchReport {
  std::vector<BenchTrial> trials;

  /// Fraction of trials with a greedy result where greedy <= H(p) * optimum.
  std::optional<double> greedy_bound_fraction() const;
};

/// Runs `options.trials` generated instances; trial t uses seed spec.seed + t.
BenchReport run_bench(const GeneratorSpec& spec, const BenchOptions& options);

/// CSV with header trial,algorithm,cardinality,optimal,gap,runtime_ms.
void write_bench_csv(std::ostream& out, const BenchReport& report);
Json bench_to_json(const BenchReport& report);

}  // namespace actsel
