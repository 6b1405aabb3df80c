#include "actsel/selector.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>

#include "actsel/combinatorics.hpp"
#include "actsel/cover.hpp"
#include "actsel/error.hpp"
#include "actsel/ilp.hpp"
#include "actsel/reduction.hpp"

namespace actsel {
namespace {

std::string describe(Complex z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

IndexSet normalized(IndexSet s, int m) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int j : s) {
    if (j < 0 || j >= m) {
      throw Error(ErrorKind::IndexOutOfRange, "actuator index " + std::to_string(j + 1) +
                                                  " outside 1.." + std::to_string(m));
    }
  }
  return s;
}

// Core of verify with the eigenvalues supplied by the caller.
VerifyReport verify_at(const LinearSystem& sys, const std::vector<Complex>& eigs,
                       const IndexSet& s, int f, const Tolerances& tol, const Limits& limits) {
  const int faults = std::min(f, static_cast<int>(s.size()));
  if (binomial(static_cast<int>(s.size()), faults) > limits.fault_sets) {
    throw Error(ErrorKind::FaultEnumerationTooLarge,
                "C(" + std::to_string(s.size()) + ", " + std::to_string(faults) +
                    ") fault sets exceed cap " + std::to_string(limits.fault_sets));
  }
  VerifyReport report;
  report.passed = true;
  for (Complex lambda : eigs) {
    report.margins.push_back({lambda, std::numeric_limits<double>::infinity()});
  }
  for_each_combination(static_cast<int>(s.size()), faults, [&](const std::vector<int>& drop) {
    IndexSet kept;
    IndexSet removed;
    std::size_t d = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (d < drop.size() && drop[d] == static_cast<int>(k)) {
        removed.push_back(s[k]);
        ++d;
      } else {
        kept.push_back(s[k]);
      }
    }
    for (ModeMargin& mm : report.margins) {
      // margin > rank_rel is exactly the rank test of pbh_check_at.
      const double margin = pbh_margin(sys, mm.lambda, kept);
      mm.margin = std::min(mm.margin, margin);
      if (!(margin > tol.rank_rel)) {
        report.passed = false;
        report.violation = PbhViolation{mm.lambda, removed};
        return false;
      }
    }
    return true;
  });
  return report;
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Auto: return "auto";
    case Strategy::Ilp: return "ilp";
    case Strategy::Multicover: return "multicover";
    case Strategy::Greedy: return "greedy";
    case Strategy::Brute: return "brute";
  }
  return "auto";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::IlpExact: return "ilp_exact";
    case Method::MulticoverDp: return "multicover_dp";
    case Method::MulticoverGreedy: return "multicover_greedy";
    case Method::BruteForce: return "brute_force";
  }
  return "ilp_exact";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::Auto, Strategy::Ilp, Strategy::Multicover, Strategy::Greedy,
                     Strategy::Brute}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorKind::InvalidInput, "unknown strategy '" + std::string(name) + "'");
}

FeasibilityReport feasibility(const SpectralDecomposition& dec, int f) {
  FeasibilityReport report;
  for (int i = 0; i < dec.p(); ++i) {
    if (dec.modes[i].geo_mult + f > dec.m()) {
      report.feasible = false;
      report.violating_mode = i;
      return report;
    }
  }
  return report;
}

VerifyReport verify(const LinearSystem& sys, const IndexSet& s, int f, const Tolerances& tol,
                    const Limits& limits) {
  if (f < 0) throw Error(ErrorKind::InvalidInput, "fault budget must be nonnegative");
  const IndexSet set = normalized(s, sys.m());
  return verify_at(sys, distinct_eigenvalues(sys.a(), tol), set, f, tol, limits);
}

IndexSet brute_force_selection(const LinearSystem& sys, int f, const Tolerances& tol,
                               const Limits& limits) {
  if (f < 0) throw Error(ErrorKind::InvalidInput, "fault budget must be nonnegative");
  if (sys.m() > limits.brute_force_sets) {
    throw Error(ErrorKind::InstanceTooLarge, "brute-force selection limited to " +
                                                 std::to_string(limits.brute_force_sets) +
                                                 " actuators");
  }
  const std::vector<Complex> eigs = distinct_eigenvalues(sys.a(), tol);
  IndexSet found;
  for (int k = 0; k <= sys.m(); ++k) {
    const bool exhausted = for_each_combination(sys.m(), k, [&](const std::vector<int>& s) {
      if (!verify_at(sys, eigs, s, f, tol, limits).passed) return true;
      found = s;
      return false;
    });
    if (!exhausted) return found;
  }
  throw Error(ErrorKind::Uncontrollable, "no actuator subset passes the PBH test");
}

SelectionResult select(const LinearSystem& sys, int f, const SelectOptions& options) {
  const Tolerances& tol = options.tol;
  tol.validate();
  if (f < 0) throw Error(ErrorKind::InvalidInput, "fault budget must be nonnegative");

  const SpectralDecomposition dec = decompose(sys, tol);
  const FeasibilityReport feas = feasibility(dec, f);
  if (!feas.feasible) {
    const int i = *feas.violating_mode;
    throw Error(ErrorKind::Infeasible,
                "mode " + std::to_string(i + 1) + " (lambda = " + describe(dec.modes[i].lambda) +
                    "): g_i + f = " + std::to_string(dec.modes[i].geo_mult) + " + " +
                    std::to_string(f) + " > m = " + std::to_string(dec.m()));
  }
  for (int i = 0; i < dec.p(); ++i) {
    const RankRule rule{tol.rank_rel, dec.zero_floor(i, tol)};
    if (rank_with(dec.mode_rows(i), rule) < dec.modes[i].geo_mult) {
      throw Error(ErrorKind::Uncontrollable,
                  "mode " + std::to_string(i + 1) + " (lambda = " +
                      describe(dec.modes[i].lambda) + ") is uncontrollable even with all actuators");
    }
  }

  SelectionResult result;
  result.fault_budget = f;
  bool solved = false;

  if (options.strategy == Strategy::Brute) {
    result.chosen = brute_force_selection(sys, f, tol, options.limits);
    result.method = Method::BruteForce;
    result.optimal = true;
    solved = true;
  }

  if (!solved && options.strategy != Strategy::Ilp) {
    const auto t_sets = detect_spark_structure(dec, f, tol, options.limits);
    if (!t_sets) {
      if (options.strategy != Strategy::Auto) {
        throw Error(ErrorKind::StrategyUnavailable,
                    "multicover reduction not certified: some B-bar block is not a full spark "
                    "frame with enough nonzero columns");
      }
    } else {
      const CoverInstance inst = to_cover_instance(dec, *t_sets, f);
      if (options.strategy == Strategy::Greedy) {
        result.chosen = greedy_multicover(inst).chosen;
        result.method = Method::MulticoverGreedy;
        result.optimal = false;
        result.coverage = inst.coverage;
        solved = true;
      } else {
        try {
          result.chosen = exact_multicover_dp(inst, options.limits.dp_states).chosen;
          result.method = Method::MulticoverDp;
          result.optimal = true;
          result.coverage = inst.coverage;
          solved = true;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::StateSpaceTooLarge || options.strategy != Strategy::Auto) throw;
        }
      }
    }
  }

  if (!solved) {
    const SelectionMatrices sel = f == 0 ? build_nominal(dec, tol, options.limits)
                                         : build_robust(dec, f, tol, options.limits);
    result.chosen = solve_exact(build_model(sel)).chosen;
    result.method = Method::IlpExact;
    result.optimal = true;
  }

  const VerifyReport report = verify(sys, result.chosen, f, tol, options.limits);
  if (!report.passed) {
    std::string faults;
    for (int j : report.violation->faults) faults += (faults.empty() ? "" : ",") + std::to_string(j + 1);
    throw Error(ErrorKind::VerificationFailed,
                "selected set fails the PBH test at lambda = " +
                    describe(report.violation->lambda) + " with faults {" + faults + "}");
  }
  result.certificate = report.margins;
  return result;
}

}  // namespace actsel
