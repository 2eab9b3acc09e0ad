#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "rbftune/data.hpp"
#include "rbftune/kernels.hpp"

namespace rbftune {

struct TracePoint {
  double epsilon;
  double value;
};

/// Outcome of a one-dimensional minimization over the shape parameter.
struct LoocvResult {
  double best_epsilon = 0.0;
  double best_error = 0.0;
  std::vector<TracePoint> trace;  // every evaluation, in evaluation order
  double elapsed = 0.0;           // seconds
};

/// Systems up to this size whose double-precision factor is missing or has an
/// estimated reciprocal condition number below kWideRippaRcond are redone in
/// quad precision, which keeps the errors accurate where double precision
/// only delivers cond(K) * 1e-16.
inline constexpr std::size_t kWideRippaMaxPoints = 64;
inline constexpr double kWideRippaRcond = 1e-6;

/// Leave-one-out errors e_j = c_j / (K^-1)_jj from a single factorization of
/// the full interpolation matrix. Throws ConditioningError.
Eigen::VectorXd rippa_errors(const RbfKernel& kernel, const DataSet& data);

/// Infinity norm of the Rippa errors, +inf when the system cannot be factored.
double er(KernelFamily family, double epsilon, const DataSet& data);

/// Er on {k * eps_max / grid_size : k = 1..grid_size}. Ties go to the smaller
/// epsilon. Throws SearchFailedError when every candidate fails.
LoocvResult grid_search(KernelFamily family, const DataSet& data, double eps_max,
                        std::size_t grid_size);

struct MinimizeOptions {
  double tolerance = 1e-6;           // final bracket width
  std::size_t max_evaluations = 200;
  double initial_step = 0.05;        // fraction of the interval width
};

/// Bracketing + golden-section minimization of `objective` on (lo, hi],
/// starting at `start`. Derivative free and tolerant of +inf values.
LoocvResult minimize_bounded(const std::function<double(double)>& objective, double lo, double hi,
                             double start, const MinimizeOptions& opts = {});

/// Er minimized over (0, eps_max] from `start`.
LoocvResult optimizer_search(KernelFamily family, const DataSet& data, double eps_max,
                             double start, const MinimizeOptions& opts = {});

}  // namespace rbftune
