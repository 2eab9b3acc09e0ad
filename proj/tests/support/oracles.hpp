#pragma once

#include <Eigen/Core>

#include "rbftune/data.hpp"
#include "rbftune/gp.hpp"
#include "rbftune/kernels.hpp"

namespace oracle {

// Leave-one-out residuals f_j - P^j(x_j), each from its own (n-1)-point
// interpolant, assembled and solved by LU in 50-digit arithmetic (or in
// double, which is only trustworthy for well-conditioned systems).
enum class Precision { Double, Digits50 };
Eigen::VectorXd loo_residuals(const rbftune::RbfKernel& kernel, const rbftune::DataSet& data,
                              Precision precision = Precision::Digits50);

// EI as the integral of max(y - best - xi, 0) against the normal density of
// y, by tanh-sinh quadrature in standardized coordinates.
double ei_by_quadrature(double mean, double std, double best, double xi);

struct Posterior {
  double mean;
  double var;
};

// GP posterior from an explicit inverse of the jittered covariance, with the
// hyperparameters and standardization read off a fitted surrogate.
Posterior dense_posterior(const rbftune::GpSurrogate& gp, double x);

// Least-squares coefficients through the normal equations solved by
// complete orthogonal decomposition, kept independent of the pivoted QR path.
Eigen::VectorXd lsq_coefficients(const rbftune::RbfKernel& kernel, const rbftune::DataSet& data,
                                 const rbftune::PointSet& centers);

}  // namespace oracle
