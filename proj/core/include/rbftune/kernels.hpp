#pragma once

#include <string_view>

#include <Eigen/Core>

#include "rbftune/data.hpp"

namespace rbftune {

enum class KernelFamily {
  Gaussian,   // exp(-(er)^2), C-infinity
  Matern2,    // exp(-er)(er + 1), C2
  Wendland2,  // max(1 - er, 0)^4 (4er + 1), C2, compact support
};

std::string_view to_string(KernelFamily f);
/// CLI tokens `ga`, `m2`, `w2`.
KernelFamily parse_kernel_family(std::string_view token);

/// Radial kernel family plus a positive shape parameter.
class RbfKernel {
 public:
  RbfKernel(KernelFamily family, double epsilon);

  KernelFamily family() const noexcept { return family_; }
  double epsilon() const noexcept { return epsilon_; }

 private:
  KernelFamily family_;
  double epsilon_;
};

using KernelMatrix = Eigen::MatrixXd;

/// phi(epsilon * r). Throws DomainError for negative r.
double phi(const RbfKernel& kernel, double r);

/// phi(epsilon * ||x - z||_2).
double kernel_value(const RbfKernel& kernel, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                    const Eigen::Ref<const Eigen::RowVectorXd>& z);

/// Square symmetric matrix on one point set; one triangle is evaluated and
/// mirrored.
KernelMatrix assemble(const RbfKernel& kernel, const PointSet& points);

/// rows.size() x cols.size() matrix of kernel values. Falls back to the
/// symmetric path when both sets are identical.
KernelMatrix assemble(const RbfKernel& kernel, const PointSet& rows, const PointSet& cols);

}  // namespace rbftune
