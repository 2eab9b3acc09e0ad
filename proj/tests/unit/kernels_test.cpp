#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "rbftune/data.hpp"
#include "rbftune/errors.hpp"
#include "rbftune/kernels.hpp"

using namespace rbftune;

namespace {
constexpr KernelFamily kAll[] = {KernelFamily::Gaussian, KernelFamily::Matern2,
                                 KernelFamily::Wendland2};
}

TEST(Phi, OneAtOrigin) {
  for (auto f : kAll) {
    for (double eps : {0.1, 1.0, 7.5}) EXPECT_DOUBLE_EQ(phi(RbfKernel(f, eps), 0.0), 1.0);
  }
}

TEST(Phi, ReferenceValues) {
  EXPECT_NEAR(phi(RbfKernel(KernelFamily::Matern2, 2.0), 1.0), 0.406005849709838075681998484917, 1e-15);
  EXPECT_NEAR(phi(RbfKernel(KernelFamily::Gaussian, 2.0), 1.0), 0.0183156388887341802937180212732, 1e-16);
  EXPECT_DOUBLE_EQ(phi(RbfKernel(KernelFamily::Wendland2, 1.0), 0.5), 0.1875);
}

TEST(Phi, WendlandCompactSupport) {
  const RbfKernel k(KernelFamily::Wendland2, 4.0);
  EXPECT_GT(phi(k, 0.2499), 0.0);
  EXPECT_EQ(phi(k, 0.25), 0.0);
  EXPECT_EQ(phi(k, 3.0), 0.0);
}

TEST(Phi, MonotoneDecreasing) {
  for (auto f : kAll) {
    const RbfKernel k(f, 1.3);
    double prev = phi(k, 0.0);
    for (double r = 0.01; r < 0.76; r += 0.01) {
      const double v = phi(k, r);
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(Phi, Errors) {
  EXPECT_THROW(phi(RbfKernel(KernelFamily::Gaussian, 1.0), -0.1), DomainError);
  EXPECT_THROW(RbfKernel(KernelFamily::Gaussian, 0.0), DomainError);
  EXPECT_THROW(RbfKernel(KernelFamily::Matern2, -1.0), DomainError);
  EXPECT_THROW(RbfKernel(KernelFamily::Matern2, INFINITY), DomainError);
}

TEST(KernelValue, UsesEuclideanDistance) {
  Eigen::RowVectorXd a(2), b(2);
  a << 0, 0;
  b << 0.3, 0.4;
  const RbfKernel k(KernelFamily::Matern2, 2.0);
  EXPECT_DOUBLE_EQ(kernel_value(k, a, b), phi(k, 0.5));
  EXPECT_DOUBLE_EQ(kernel_value(k, a, b), kernel_value(k, b, a));
}

TEST(Assemble, SymmetricUnitDiagonal) {
  const auto pts = random_points(40, 2, 2);
  for (auto f : kAll) {
    const RbfKernel k(f, 3.0);
    const auto K = assemble(k, pts);
    EXPECT_EQ(K, K.transpose());
    EXPECT_TRUE((K.diagonal().array() == 1.0).all());
    EXPECT_DOUBLE_EQ(K(3, 17), kernel_value(k, pts.point(3), pts.point(17)));
  }
}

TEST(Assemble, SmallInstancesArePositiveDefinite) {
  const auto pts = halton_points(25, 2);
  for (auto f : kAll) {
    for (double eps : {2.0, 5.0, 10.0}) {
      const auto K = assemble(RbfKernel(f, eps), pts);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << to_string(f) << " eps=" << eps;
    }
  }
}

TEST(Assemble, RectangularMatchesEntries) {
  const auto rows = random_points(7, 2, 1);
  const auto cols = random_points(4, 2, 2);
  const RbfKernel k(KernelFamily::Gaussian, 1.5);
  const auto A = assemble(k, rows, cols);
  ASSERT_EQ(A.rows(), 7);
  ASSERT_EQ(A.cols(), 4);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(A(i, j), kernel_value(k, rows.point(i), cols.point(j)));
}

TEST(Tokens, KernelFamilies) {
  for (auto f : kAll) EXPECT_EQ(parse_kernel_family(to_string(f)), f);
  EXPECT_THROW(parse_kernel_family("imq"), DomainError);
}
