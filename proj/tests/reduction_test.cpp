#include <gtest/gtest.h>

#include <random>

#include "actsel/error.hpp"
#include "actsel/generator.hpp"
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

SpectralDecomposition dec_of(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return decompose(LinearSystem(a, b), Tolerances{});
}

const Eigen::MatrixXd kDiag12 = mat(2, 2, {1, 0, 0, 2});
const Eigen::MatrixXd kSpark = mat(2, 3, {1, 0, 1, 0, 1, 1});

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

void expect_well_formed(const SelectionMatrices& sel) {
  for (const ModeSelection& mode : sel.per_mode) {
    ASSERT_FALSE(mode.rows.empty());
    const Eigen::MatrixXi w = mode.dense(sel.m);
    for (Eigen::Index r = 0; r < w.rows(); ++r) EXPECT_EQ(w.row(r).sum(), mode.required);
    for (std::size_t r = 1; r < mode.rows.size(); ++r) EXPECT_LT(mode.rows[r - 1], mode.rows[r]);
  }
}

}  // namespace

TEST(BuildNominal, Examples) {
  const Tolerances tol;
  const auto decoupled = build_nominal(dec_of(kDiag12, Eigen::MatrixXd::Identity(2, 2)), tol);
  ASSERT_EQ(decoupled.per_mode.size(), 2u);
  EXPECT_EQ(decoupled.per_mode[0].rows, (std::vector<IndexSet>{{0}}));
  EXPECT_EQ(decoupled.per_mode[1].rows, (std::vector<IndexSet>{{1}}));
  EXPECT_EQ(decoupled.fault_budget, 0);

  // All three 2x2 minors of [[1,0,1],[0,1,1]] are nonzero.
  ASSERT_TRUE(oracle::full_spark_det(kSpark.cast<Complex>()));
  const auto repeated = build_nominal(dec_of(Eigen::MatrixXd::Identity(2, 2), kSpark), tol);
  ASSERT_EQ(repeated.per_mode.size(), 1u);
  EXPECT_EQ(repeated.per_mode[0].required, 2);
  EXPECT_EQ(repeated.per_mode[0].rows, (std::vector<IndexSet>{{0, 1}, {0, 2}, {1, 2}}));

  const auto jordan = build_nominal(dec_of(mat(2, 2, {2, 1, 0, 2}), mat(2, 1, {0, 1})), tol);
  EXPECT_EQ(jordan.per_mode[0].rows, (std::vector<IndexSet>{{0}}));
}

TEST(BuildNominal, Errors) {
  const Tolerances tol;
  EXPECT_EQ(kind_of([&] { build_nominal(dec_of(kDiag12, mat(2, 1, {1, 0})), tol); }),
            ErrorKind::Uncontrollable);
  Limits tight;
  tight.enumeration = 2;
  EXPECT_EQ(kind_of([&] { build_nominal(dec_of(Eigen::MatrixXd::Identity(2, 2), kSpark), tol, tight); }),
            ErrorKind::ModeTooLarge);
}

TEST(BuildRobust, Examples) {
  const Tolerances tol;
  const auto dec = dec_of(Eigen::MatrixXd::Identity(2, 2), kSpark);
  const auto robust0 = build_robust(dec, 0, tol);
  const auto nominal = build_nominal(dec, tol);
  EXPECT_EQ(robust0.per_mode[0].rows, nominal.per_mode[0].rows);

  const auto scalar = build_robust(dec_of(mat(1, 1, {1}), mat(1, 2, {1, 2})), 1, tol);
  EXPECT_EQ(scalar.per_mode[0].required, 2);
  EXPECT_EQ(scalar.per_mode[0].rows, (std::vector<IndexSet>{{0, 1}}));
  EXPECT_EQ(scalar.fault_budget, 1);

  try {
    build_robust(dec_of(mat(1, 1, {1}), mat(1, 1, {1})), 1, tol);
    ADD_FAILURE() << "expected Infeasible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
    EXPECT_NE(std::string(e.what()).find("mode 1"), std::string::npos) << e.what();
  }
}

TEST(DetectSparkStructure, Examples) {
  const Tolerances tol;
  const auto decoupled = detect_spark_structure(dec_of(kDiag12, Eigen::MatrixXd::Identity(2, 2)), 0, tol);
  ASSERT_TRUE(decoupled.has_value());
  EXPECT_EQ(*decoupled, (std::vector<IndexSet>{{0}, {1}}));

  const auto spark = detect_spark_structure(dec_of(Eigen::MatrixXd::Identity(2, 2), kSpark), 0, tol);
  ASSERT_TRUE(spark.has_value());
  EXPECT_EQ(*spark, (std::vector<IndexSet>{{0, 1, 2}}));

  const Eigen::MatrixXd proportional = mat(2, 3, {1, 2, 0, 1, 2, 1});
  EXPECT_FALSE(detect_spark_structure(dec_of(Eigen::MatrixXd::Identity(2, 2), proportional), 0, tol));

  // Robust size condition: |T_i| = 1 < g_i + f.
  EXPECT_FALSE(detect_spark_structure(dec_of(kDiag12, Eigen::MatrixXd::Identity(2, 2)), 1, tol));
}

TEST(ToCoverInstance, Examples) {
  const auto d1 = dec_of(kDiag12, Eigen::MatrixXd::Identity(2, 2));
  const CoverInstance c1 = to_cover_instance(d1, {{0}, {1}}, 0);
  EXPECT_EQ(c1.universe, 2);
  EXPECT_EQ(c1.sets, (std::vector<IndexSet>{{0}, {1}}));
  EXPECT_EQ(c1.coverage, (std::vector<int>{1, 1}));

  const auto d2 = dec_of(Eigen::MatrixXd::Identity(2, 2), kSpark);
  const CoverInstance c2 = to_cover_instance(d2, {{0, 1, 2}}, 0);
  EXPECT_EQ(c2.sets, (std::vector<IndexSet>{{0}, {0}, {0}}));
  EXPECT_EQ(c2.coverage, (std::vector<int>{2}));

  const auto d3 = dec_of(mat(1, 1, {1}), mat(1, 2, {1, 2}));
  const CoverInstance c3 = to_cover_instance(d3, {{0, 1}}, 1);
  EXPECT_EQ(c3.sets, (std::vector<IndexSet>{{0}, {0}}));
  EXPECT_EQ(c3.coverage, (std::vector<int>{2}));
}

TEST(ComputeK, Examples) {
  const Tolerances tol;
  EXPECT_EQ(compute_k(build_nominal(dec_of(kDiag12, Eigen::MatrixXd::Identity(2, 2)), tol)), 1);
  EXPECT_EQ(compute_k(build_nominal(dec_of(kDiag12, mat(2, 1, {1, 1})), tol)), 2);
}

TEST(ReductionProperties, OnGeneratedSystems) {
  std::mt19937_64 rng(31);
  const Tolerances tol;
  int certified = 0;
  for (int trial = 0; trial < 250; ++trial) {
    oracle::SpecOptions opt;
    opt.faults = static_cast<int>(trial % 2);
    const GeneratorSpec spec = oracle::random_spec(rng, opt);
    const GeneratedSystem gen = generate(spec);
    SpectralDecomposition dec;
    SelectionMatrices nominal, robust;
    try {
      dec = decompose(gen.system, tol);
      nominal = build_nominal(dec, tol);
      robust = build_robust(dec, opt.faults, tol);
    } catch (const Error& e) {
      // Dependent pairs may leave a robust mode without any full-spark subset.
      EXPECT_TRUE(e.kind() == ErrorKind::Uncontrollable || e.kind() == ErrorKind::DecompositionFailed)
          << e.what();
      continue;
    }
    expect_well_formed(nominal);
    expect_well_formed(robust);
    EXPECT_EQ(build_robust(dec, 0, tol).per_mode.size(), nominal.per_mode.size());
    for (std::size_t i = 0; i < nominal.per_mode.size(); ++i) {
      EXPECT_EQ(build_robust(dec, 0, tol).per_mode[i].rows, nominal.per_mode[i].rows);
    }

    // Monotonicity: an extra generic column never shrinks any alpha_i.
    Eigen::MatrixXd wider(gen.system.n(), gen.system.m() + 1);
    wider << gen.system.b(), Eigen::VectorXd::Random(gen.system.n());
    const auto wider_sel = build_nominal(decompose(LinearSystem(gen.system.a(), wider), tol), tol);
    ASSERT_EQ(wider_sel.per_mode.size(), nominal.per_mode.size());
    for (std::size_t i = 0; i < nominal.per_mode.size(); ++i) {
      EXPECT_GE(wider_sel.per_mode[i].rows.size(), nominal.per_mode[i].rows.size());
    }

    const auto t_sets = detect_spark_structure(dec, opt.faults, tol);
    if (!t_sets) continue;
    ++certified;
    const CoverInstance inst = to_cover_instance(dec, *t_sets, opt.faults);
    for (int i = 0; i < dec.p(); ++i) {
      EXPECT_EQ(inst.coverage[i], dec.modes[i].geo_mult + opt.faults);
      for (int j = 0; j < inst.set_count(); ++j) {
        const bool in_t = std::binary_search((*t_sets)[i].begin(), (*t_sets)[i].end(), j);
        const bool in_r = std::binary_search(inst.sets[j].begin(), inst.sets[j].end(), i);
        EXPECT_EQ(in_t, in_r);
      }
    }
    EXPECT_EQ(compute_k(robust), inst.max_set_size());
    const auto cover_opt = oracle::min_cover(inst);
    const auto ilp_opt = oracle::min_ilp(build_model(robust));
    ASSERT_TRUE(cover_opt && ilp_opt);
    EXPECT_EQ(cover_opt->size(), ilp_opt->size());
  }
  EXPECT_GE(certified, 150);
}
