#pragma once

#include <optional>

#include <Eigen/Core>

#include "rbftune/data.hpp"
#include "rbftune/kernels.hpp"

namespace rbftune::detail {

/// Rippa errors with the kernel matrix assembled and factored in quad
/// precision (long double where the toolchain has no quad type). Meant for
/// small systems only: the linear algebra is plain O(n^3) loops. Returns
/// nullopt when the matrix is not numerically positive definite even there.
std::optional<Eigen::VectorXd> rippa_errors_wide(const RbfKernel& kernel, const DataSet& data);

}  // namespace rbftune::detail
