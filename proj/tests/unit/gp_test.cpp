#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rbftune/errors.hpp"
#include "rbftune/gp.hpp"

using namespace rbftune;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST(Matern52, Values) {
  EXPECT_DOUBLE_EQ(matern52(0.0, 2.0, 1.5), 1.5);
  EXPECT_NEAR(matern52(1.0, 1.0, 1.0), 0.523994108831820310592713250761, 1e-15);
  EXPECT_THROW(matern52(-1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(matern52(1.0, 0.0, 1.0), DomainError);
}

TEST(Gp, InterpolatesTrainingTargets) {
  const auto x = vec({0.5, 2.0, 3.1, 7.0, 11.0, 15.5});
  const auto y = vec({-3.0, -1.0, -0.2, -2.5, -8.0, -30.0});
  const auto gp = GpSurrogate::fit(x, y);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto p = gp.predict(x(i));
    EXPECT_LE(std::abs(p.mean - y(i)), 1e-6 * (1.0 + std::abs(y(i))));
    EXPECT_GE(p.std, 0.0);
  }
}

TEST(Gp, VarianceBoundedByPrior) {
  const auto gp = GpSurrogate::fit(vec({1, 2, 4, 8}), vec({0.1, 0.5, 0.2, -0.3}));
  const double prior_sd = std::sqrt(gp.signal_variance()) * gp.target_std();
  for (double q = -5.0; q <= 25.0; q += 0.37) {
    const auto p = gp.predict(q);
    EXPECT_GE(p.std, 0.0);
    EXPECT_LE(p.std, prior_sd * (1 + 1e-12));
  }
  EXPECT_NEAR(gp.predict(1e6).std, prior_sd, 1e-9);
  EXPECT_NEAR(gp.predict(1e6).mean, gp.target_mean(), 1e-9);
}

TEST(Gp, MatchesDenseFormula) {
  const auto gp = GpSurrogate::fit(vec({0.3, 1.7, 4.2}), vec({1.0, -0.5, 0.25}));
  for (double q : {0.0, 0.3, 1.0, 2.5, 6.0}) {
    const auto p = gp.predict(q);
    const auto ref = oracle::dense_posterior(gp, q);
    EXPECT_NEAR(p.mean, ref.mean, 1e-10);
    EXPECT_NEAR(p.std * p.std, std::max(ref.var, 0.0), 1e-10);
  }
}

TEST(Gp, StandardizationAndConstantTargets) {
  const auto gp = GpSurrogate::fit(vec({1, 2, 3}), vec({5, 5, 5}));
  EXPECT_DOUBLE_EQ(gp.target_mean(), 5.0);
  EXPECT_DOUBLE_EQ(gp.target_std(), 1.0);
  EXPECT_NEAR(gp.predict(1.5).mean, 5.0, 1e-12);

  const auto gp2 = GpSurrogate::fit(vec({1, 2}), vec({0, 2}));
  EXPECT_DOUBLE_EQ(gp2.target_std(), 1.0);  // population std of {0, 2}
}

TEST(Gp, SinglePointAndDuplicateInputs) {
  const auto one = GpSurrogate::fit(vec({3.0}), vec({-2.0}));
  EXPECT_NEAR(one.predict(3.0).mean, -2.0, 1e-6);
  // two identical inputs need jitter to factor
  const auto dup = GpSurrogate::fit(vec({2.0, 2.0, 5.0}), vec({1.0, 1.0, 0.0}));
  EXPECT_GT(dup.jitter(), 0.0);
  EXPECT_TRUE(std::isfinite(dup.predict(3.0).mean));
}

TEST(Gp, LengthScaleWithinCandidateRange) {
  const auto x = vec({0.0, 5.0, 10.0, 15.0, 20.0});
  const auto gp = GpSurrogate::fit(x, vec({0, 1, 0, 1, 0}));
  EXPECT_GE(gp.length_scale(), 0.2 * (1 - 1e-12));
  EXPECT_LE(gp.length_scale(), 200.0 * (1 + 1e-12));
  EXPECT_TRUE(std::isfinite(gp.log_marginal_likelihood()));
}

TEST(Gp, InputValidation) {
  EXPECT_THROW(GpSurrogate::fit(vec({1, 2}), vec({1})), DomainError);
  EXPECT_THROW(GpSurrogate::fit(Eigen::VectorXd(), Eigen::VectorXd()), DomainError);
  EXPECT_THROW(GpSurrogate::fit(vec({1, NAN}), vec({1, 2})), DomainError);
}

TEST(Gp, ThrowsWhenNothingFactors) {
  GpOptions opts;
  opts.jitter_start = 0.0;  // ladder never leaves zero jitter
  opts.jitter_max = 0.0;
  EXPECT_THROW(GpSurrogate::fit(vec({2.0, 2.0}), vec({1.0, 0.0}), opts), SurrogateFitError);
}
