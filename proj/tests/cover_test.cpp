#include <gtest/gtest.h>

#include <random>

#include "actsel/combinatorics.hpp"
#include "actsel/cover.hpp"
#include "actsel/error.hpp"
#include "oracles.hpp"

using namespace actsel;

namespace {

CoverInstance instance(int p, std::vector<int> b, std::vector<IndexSet> sets) {
  CoverInstance inst{p, std::move(b), std::move(sets)};
  inst.validate();
  return inst;
}

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no actsel::Error thrown";
  return ErrorKind::IoError;
}

CoverInstance random_instance(std::mt19937_64& rng, int max_m) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  CoverInstance inst;
  inst.universe = pick(1, 5);
  const int m = pick(1, max_m);
  const double density = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
  inst.sets.resize(m);
  std::vector<int> avail(inst.universe, 0);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < inst.universe; ++i) {
      if (std::bernoulli_distribution(density)(rng)) {
        inst.sets[j].push_back(i);
        ++avail[i];
      }
    }
  }
  for (int i = 0; i < inst.universe; ++i) {
    if (avail[i] == 0) {
      inst.sets[pick(0, m - 1)].push_back(i);
      avail[i] = 1;
    }
    inst.coverage.push_back(pick(1, std::min(3, avail[i])));
  }
  for (IndexSet& s : inst.sets) std::sort(s.begin(), s.end());
  inst.validate();
  return inst;
}

}  // namespace

TEST(Greedy, Examples) {
  EXPECT_EQ(greedy_multicover(instance(1, {1}, {{0}})).chosen, (IndexSet{0}));
  EXPECT_EQ(greedy_multicover(instance(2, {1, 1}, {{0, 1}, {0}, {1}})).chosen, (IndexSet{0}));
  const CoverSolution s = greedy_multicover(instance(1, {2}, {{0}, {0}, {0}}));
  EXPECT_EQ(s.chosen, (IndexSet{0, 1}));
  EXPECT_FALSE(s.optimal);
}

TEST(ExactDp, Examples) {
  const CoverInstance dominant = instance(2, {1, 1}, {{0, 1}, {0}, {1}});
  EXPECT_EQ(exact_multicover_dp(dominant).cardinality(), greedy_multicover(dominant).cardinality());

  const CoverInstance classic = instance(6, {1, 1, 1, 1, 1, 1},
                                         {{0, 1, 2}, {3, 4, 5}, {0, 3}, {1, 4}, {2, 5}});
  ASSERT_EQ(oracle::min_cover(classic)->size(), 2u);
  const CoverSolution dp = exact_multicover_dp(classic);
  EXPECT_EQ(dp.chosen, (IndexSet{0, 1}));
  EXPECT_TRUE(dp.optimal);

  EXPECT_EQ(exact_multicover_dp(instance(1, {2}, {{0}, {0}})).cardinality(), 2);
}

TEST(ExactDp, GreedyCanBeStrictlyWorse) {
  const CoverInstance inst = instance(6, {1, 1, 1, 1, 1, 1},
                                      {{0, 1, 2}, {3, 4, 5}, {0, 1, 3, 4}, {2}, {5}});
  EXPECT_EQ(greedy_multicover(inst).cardinality(), 3);
  EXPECT_EQ(exact_multicover_dp(inst).chosen, (IndexSet{0, 1}));
}

TEST(BruteForce, ExamplesAndErrors) {
  for (const CoverInstance& inst :
       {instance(2, {1, 1}, {{0, 1}, {0}, {1}}),
        instance(6, {1, 1, 1, 1, 1, 1}, {{0, 1, 2}, {3, 4, 5}, {0, 3}, {1, 4}, {2, 5}}),
        instance(1, {2}, {{0}, {0}})}) {
    EXPECT_EQ(brute_force_cover(inst).cardinality(), exact_multicover_dp(inst).cardinality());
  }
  const CoverInstance infeasible = instance(1, {2}, {{0}, {}});
  EXPECT_EQ(kind_of([&] { brute_force_cover(infeasible); }), ErrorKind::InfeasibleCover);
  EXPECT_EQ(kind_of([&] { greedy_multicover(infeasible); }), ErrorKind::InfeasibleCover);
  EXPECT_EQ(kind_of([&] { exact_multicover_dp(infeasible); }), ErrorKind::InfeasibleCover);

  const CoverSolution empty = brute_force_cover(instance(0, {}, {{}, {}}));
  EXPECT_TRUE(empty.chosen.empty());
  EXPECT_TRUE(empty.optimal);
}

TEST(Caps, AreEnforced) {
  const CoverInstance inst = instance(3, {3, 3, 3}, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  EXPECT_EQ(kind_of([&] { exact_multicover_dp(inst, 63); }), ErrorKind::StateSpaceTooLarge);
  EXPECT_EQ(exact_multicover_dp(inst, 64).cardinality(), 3);
  CoverInstance wide{1, {1}, std::vector<IndexSet>(26, IndexSet{0})};
  EXPECT_EQ(kind_of([&] { brute_force_cover(wide); }), ErrorKind::InstanceTooLarge);
}

TEST(Validate, RejectsMalformedInstances) {
  EXPECT_EQ(kind_of([] { CoverInstance{2, {1}, {{0}}}.validate(); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { CoverInstance{1, {0}, {{0}}}.validate(); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { CoverInstance{1, {1}, {{1}}}.validate(); }), ErrorKind::InvalidInput);
}

TEST(CoverProperties, ExactnessGuaranteesDeterminism) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 600; ++trial) {
    const CoverInstance inst = random_instance(rng, 12);
    const auto reference = oracle::min_cover(inst);
    ASSERT_TRUE(reference.has_value());
    const CoverSolution dp = exact_multicover_dp(inst);
    const CoverSolution brute = brute_force_cover(inst);
    const CoverSolution greedy = greedy_multicover(inst);
    EXPECT_EQ(dp.chosen, *reference);
    EXPECT_EQ(brute.chosen, *reference);
    EXPECT_TRUE(inst.covered_by(dp.chosen));
    EXPECT_TRUE(inst.covered_by(greedy.chosen));
    const double opt = static_cast<double>(reference->size());
    EXPECT_LE(greedy.cardinality(), oracle::harmonic(inst.universe) * opt + 1e-12);
    EXPECT_LE(greedy.cardinality(), oracle::harmonic(inst.max_set_size()) * opt + 1e-12);
    EXPECT_EQ(greedy_multicover(inst).chosen, greedy.chosen);
    EXPECT_EQ(exact_multicover_dp(inst).chosen, dp.chosen);
  }
}

TEST(Combinatorics, BinomialAndEnumeration) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(3, 5), 0u);
  for (int n = 0; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<IndexSet> seen;
      for_each_combination(n, k, [&](const IndexSet& s) {
        seen.push_back(s);
        return true;
      });
      EXPECT_EQ(seen, oracle::subsets(n, k));
    }
  }
  EXPECT_NEAR(harmonic(3), 1.0 + 0.5 + 1.0 / 3.0, 1e-15);
}
