#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rbftune/errors.hpp"
#include "rbftune/loocv.hpp"
#include "rbftune/random.hpp"
#include "rbftune/rbf.hpp"

using namespace rbftune;

namespace {

double rel_dev(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Rippa, MatchesBruteForceLeaveOneOut) {
  Rng rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 5 + rng.below(26);
    const auto ds = sample_function(TestFunction::F1, random_points(n, 2, 100 + trial));
    const auto family = static_cast<KernelFamily>(trial % 3);
    const double eps = 0.5 + 9.5 * rng.uniform01();
    const RbfKernel k(family, eps);
    EXPECT_LE(rel_dev(rippa_errors(k, ds), oracle::loo_residuals(k, ds)), 1e-8)
        << to_string(family) << " n=" << n << " eps=" << eps;
  }
}

TEST(Rippa, LargerInstanceBlockedInverse) {
  // n above the base block size of the triangular inverse
  const auto ds = sample_function(TestFunction::F2, halton_points(150, 2));
  const RbfKernel k(KernelFamily::Matern2, 4.0);
  ASSERT_GT(Eigen::LLT<Eigen::MatrixXd>(assemble(k, ds.locations())).rcond(), 1e-6);
  EXPECT_LE(rel_dev(rippa_errors(k, ds), oracle::loo_residuals(k, ds, oracle::Precision::Double)),
            1e-8);
}

TEST(Rippa, IllConditionedSmallSystemStaysAccurate) {
  // cond(K) around 1e13: a double-precision evaluation is off by ~1e-5 here
  const auto ds = sample_function(TestFunction::F1, random_points(30, 2, 1));
  const RbfKernel k(KernelFamily::Gaussian, 0.793);
  ASSERT_LT(Eigen::LLT<Eigen::MatrixXd>(assemble(k, ds.locations())).rcond(), 1e-10);
  EXPECT_LE(rel_dev(rippa_errors(k, ds), oracle::loo_residuals(k, ds)), 1e-8);
}

TEST(Er, InfinityNormOfRippaErrors) {
  const auto ds = sample_function(TestFunction::F1, halton_points(40, 2));
  const auto e = rippa_errors(RbfKernel(KernelFamily::Wendland2, 1.5), ds);
  EXPECT_DOUBLE_EQ(er(KernelFamily::Wendland2, 1.5, ds), e.cwiseAbs().maxCoeff());
}

TEST(GridSearch, LatticeAndArgmin) {
  const auto ds = sample_function(TestFunction::F1, halton_points(60, 2));
  const auto res = grid_search(KernelFamily::Matern2, ds, 20.0, 50);
  ASSERT_EQ(res.trace.size(), 50u);
  double best = INFINITY;
  for (std::size_t k = 0; k < 50; ++k) {
    EXPECT_NEAR(res.trace[k].epsilon, 0.4 * static_cast<double>(k + 1), 1e-12);
    best = std::min(best, res.trace[k].value);
  }
  EXPECT_EQ(res.best_error, best);
  const double q = res.best_epsilon / 0.4;
  EXPECT_NEAR(q, std::round(q), 1e-9);
  EXPECT_GE(res.elapsed, 0.0);
}

TEST(GridSearch, TiesGoToSmallerEpsilon) {
  // identically zero data: Er is 0 everywhere it can be computed
  const DataSet ds(halton_points(20, 2), Eigen::VectorXd::Zero(20));
  const auto res = grid_search(KernelFamily::Wendland2, ds, 10.0, 10);
  EXPECT_DOUBLE_EQ(res.best_epsilon, 1.0);
  EXPECT_EQ(res.best_error, 0.0);
}

TEST(GridSearch, InvalidArguments) {
  const auto ds = sample_function(TestFunction::F1, halton_points(30, 2));
  EXPECT_THROW(grid_search(KernelFamily::Gaussian, ds, 0.0, 4), DomainError);
  EXPECT_THROW(grid_search(KernelFamily::Gaussian, ds, 20.0, 0), DomainError);
}

TEST(Minimize, SyntheticLogQuadratic) {
  const auto obj = [](double e) { return std::pow(std::log(e) - std::log(2.0), 2); };
  const auto res = minimize_bounded(obj, 0.0, 20.0, 10.0);
  EXPECT_NEAR(res.best_epsilon, 2.0, 1e-3);
  EXPECT_LE(res.trace.size(), 200u);
  EXPECT_EQ(res.trace.front().epsilon, 10.0);
}

TEST(Minimize, MinimumAtBoundary) {
  const auto res = minimize_bounded([](double e) { return -e; }, 0.0, 20.0, 10.0);
  EXPECT_NEAR(res.best_epsilon, 20.0, 1e-4);
  const auto res2 = minimize_bounded([](double e) { return e; }, 0.0, 20.0, 10.0);
  EXPECT_LT(res2.best_epsilon, 1e-4);
  EXPECT_GT(res2.best_epsilon, 0.0);
}

TEST(Minimize, ToleratesInfiniteRegion) {
  const auto obj = [](double e) { return e < 3.0 ? INFINITY : (e - 5.0) * (e - 5.0); };
  const auto res = minimize_bounded(obj, 0.0, 20.0, 10.0);
  EXPECT_NEAR(res.best_epsilon, 5.0, 1e-3);
}

TEST(Minimize, RespectsEvaluationBudget) {
  MinimizeOptions opts;
  opts.max_evaluations = 7;
  opts.tolerance = 1e-14;
  const auto res = minimize_bounded([](double e) { return std::sin(e); }, 0.0, 20.0, 10.0, opts);
  EXPECT_LE(res.trace.size(), 7u);
}

TEST(OptimizerSearch, TraceStartsAtStartValueAndBeatsCoarseGrid) {
  const auto ds = sample_function(TestFunction::F1, halton_points(100, 2));
  const auto res = optimizer_search(KernelFamily::Matern2, ds, 20.0, 10.0);
  EXPECT_EQ(res.trace.front().epsilon, 10.0);
  EXPECT_DOUBLE_EQ(res.trace.front().value, er(KernelFamily::Matern2, 10.0, ds));
  EXPECT_GT(res.best_epsilon, 0.0);
  EXPECT_LE(res.best_epsilon, 20.0);
  EXPECT_LE(res.best_error, res.trace.front().value);
}

TEST(Minimize, EverywhereInfiniteThrows) {
  EXPECT_THROW(minimize_bounded([](double) { return INFINITY; }, 0.0, 20.0, 10.0), SearchFailedError);
}
