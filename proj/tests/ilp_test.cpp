#include <gtest/gtest.h>

#include <random>

#include "actsel/error.hpp"
#include "actsel/ilp.hpp"
#include "actsel/reduction.hpp"
#include "oracles.hpp"

using namespace actsel;

namespace {

Eigen::MatrixXd mat(int rows, int cols, std::initializer_list<double> values) {
  Eigen::MatrixXd out(rows, cols);
  auto it = values.begin();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out(r, c) = *it++;
  }
  return out;
}

IlpModel model_for(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int f = 0) {
  const Tolerances tol;
  const auto dec = decompose(LinearSystem(a, b), tol);
  return build_model(f == 0 ? build_nominal(dec, tol) : build_robust(dec, f, tol));
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

// Random model with rows of fixed size per block; every block has at least
// one row, so y = 1 is always feasible.
IlpModel random_model(std::mt19937_64& rng, int max_m) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  IlpModel model;
  model.m = pick(1, max_m);
  const int blocks = pick(1, 5);
  for (int b = 0; b < blocks; ++b) {
    IlpBlock block;
    block.required = pick(1, std::min(3, model.m));
    auto all = oracle::subsets(model.m, block.required);
    std::shuffle(all.begin(), all.end(), rng);
    const int rows = pick(1, std::min<int>(6, static_cast<int>(all.size())));
    block.rows.assign(all.begin(), all.begin() + rows);
    std::sort(block.rows.begin(), block.rows.end());
    model.blocks.push_back(std::move(block));
  }
  model.validate();
  return model;
}

}  // namespace

TEST(BuildModel, Examples) {
  const IlpModel decoupled = model_for(mat(2, 2, {1, 0, 0, 2}), Eigen::MatrixXd::Identity(2, 2));
  ASSERT_EQ(decoupled.blocks.size(), 2u);
  for (const IlpBlock& block : decoupled.blocks) {
    EXPECT_EQ(block.required, 1);
    EXPECT_EQ(block.slack_dim(), 1);
  }

  const IlpModel repeated = model_for(Eigen::MatrixXd::Identity(2, 2), mat(2, 3, {1, 0, 1, 0, 1, 1}));
  ASSERT_EQ(repeated.blocks.size(), 1u);
  EXPECT_EQ(repeated.blocks[0].required, 2);
  EXPECT_EQ(repeated.blocks[0].slack_dim(), 3);

  const IlpModel robust = model_for(mat(1, 1, {1}), mat(1, 2, {1, 2}), 1);
  ASSERT_EQ(robust.blocks.size(), 1u);
  EXPECT_EQ(robust.blocks[0].required, 2);
  EXPECT_EQ(robust.blocks[0].rows, (std::vector<IndexSet>{{0, 1}}));
}

TEST(SolveExact, Examples) {
  const IlpModel decoupled = model_for(mat(2, 2, {1, 0, 0, 2}), Eigen::MatrixXd::Identity(2, 2));
  const IlpModel shared = model_for(mat(2, 2, {1, 0, 0, 2}), mat(2, 1, {1, 1}));
  const IlpModel repeated = model_for(Eigen::MatrixXd::Identity(2, 2), mat(2, 3, {1, 0, 1, 0, 1, 1}));
  EXPECT_EQ(solve_exact(decoupled).chosen, (IndexSet{0, 1}));
  EXPECT_EQ(solve_exact(shared).chosen, (IndexSet{0}));
  EXPECT_EQ(solve_exact(repeated).chosen, (IndexSet{0, 1}));
  EXPECT_TRUE(solve_exact(repeated).optimal);
  for (const IlpModel* model : {&decoupled, &shared, &repeated}) {
    EXPECT_EQ(solve_with_oracle(*model).chosen, solve_exact(*model).chosen);
    EXPECT_EQ(solve_with_oracle(*model).chosen, *oracle::min_ilp(*model));
  }
}

TEST(SolveWithOracle, SmallModels) {
  IlpModel one{1, {IlpBlock{1, {{0}}}}};
  EXPECT_EQ(solve_with_oracle(one).chosen, (IndexSet{0}));
  IlpModel both{2, {IlpBlock{2, {{0, 1}}}}};
  EXPECT_EQ(solve_with_oracle(both).chosen, (IndexSet{0, 1}));
  IlpModel wide{26, {IlpBlock{1, {{0}}}}};
  EXPECT_EQ(kind_of([&] { solve_with_oracle(wide); }), ErrorKind::InstanceTooLarge);
  EXPECT_EQ(solve_exact(wide).chosen, (IndexSet{0}));
}

TEST(Model, ValidationAndSatisfaction) {
  EXPECT_EQ(kind_of([] { IlpModel{2, {IlpBlock{2, {{0}}}}}.validate(); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { IlpModel{2, {IlpBlock{1, {{2}}}}}.validate(); }), ErrorKind::InvalidInput);
  const IlpModel hopeless{2, {IlpBlock{1, {}}}};
  EXPECT_EQ(kind_of([&] { solve_exact(hopeless); }), ErrorKind::Infeasible);
  const IlpBlock block{2, {{0, 2}, {1, 3}}};
  EXPECT_TRUE(block.satisfied_by({0, 1, 2}));
  EXPECT_FALSE(block.satisfied_by({0, 1}));
}

TEST(SolveExact, MatchesOracleOnRandomModels) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 600; ++trial) {
    const IlpModel model = random_model(rng, 12);
    const IlpSolution exact = solve_exact(model);
    const IlpSolution reference = solve_with_oracle(model);
    const auto independent = oracle::min_ilp(model);
    ASSERT_TRUE(independent.has_value());
    EXPECT_EQ(exact.chosen, *independent);
    EXPECT_EQ(reference.chosen, *independent);
    EXPECT_TRUE(model.satisfied_by(exact.chosen));
    // Minimality: no single actuator can be dropped.
    for (std::size_t k = 0; k < exact.chosen.size(); ++k) {
      IndexSet smaller = exact.chosen;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
      EXPECT_FALSE(model.satisfied_by(smaller));
    }
  }
}

TEST(SolveExact, HandlesWiderModels) {
  // Beyond the oracle's reach: check feasibility and agreement with a
  // restricted oracle on the union of useful columns.
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    IlpModel model = random_model(rng, 16);
    model.m = 40;
    const IlpSolution exact = solve_exact(model);
    EXPECT_TRUE(model.satisfied_by(exact.chosen));
    IlpModel narrow = model;
    narrow.m = 16;
    EXPECT_EQ(exact.chosen, *oracle::min_ilp(narrow));
  }
}
