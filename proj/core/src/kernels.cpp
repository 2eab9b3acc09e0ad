#include "rbftune/kernels.hpp"

#include <cmath>
#include <string>

#include "rbftune/errors.hpp"

namespace rbftune {

std::string_view to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::Gaussian:
      return "ga";
    case KernelFamily::Matern2:
      return "m2";
    case KernelFamily::Wendland2:
      return "w2";
  }
  return "?";
}

KernelFamily parse_kernel_family(std::string_view token) {
  if (token == "ga") return KernelFamily::Gaussian;
  if (token == "m2") return KernelFamily::Matern2;
  if (token == "w2") return KernelFamily::Wendland2;
  throw DomainError("unknown kernel '" + std::string(token) + "' (expected ga|m2|w2)");
}

RbfKernel::RbfKernel(KernelFamily family, double epsilon) : family_(family), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("shape parameter must be positive and finite, got " +
                      std::to_string(epsilon));
  }
}

namespace {

inline double phi_scaled(KernelFamily family, double s) {
  switch (family) {
    case KernelFamily::Gaussian:
      return std::exp(-s * s);
    case KernelFamily::Matern2:
      return std::exp(-s) * (s + 1.0);
    case KernelFamily::Wendland2: {
      const double t = std::max(1.0 - s, 0.0);
      const double t2 = t * t;
      return t2 * t2 * (4.0 * s + 1.0);
    }
  }
  return 0.0;
}

void check_dims(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) {
    throw DomainError("assemble: empty point set");
  }
  if (a.dim() != b.dim()) {
    throw DomainError("assemble: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()) + ")");
  }
}

}  // namespace

double phi(const RbfKernel& kernel, double r) {
  if (!(r >= 0.0)) {
    throw DomainError("phi: radius must be nonnegative");
  }
  return phi_scaled(kernel.family(), kernel.epsilon() * r);
}

double kernel_value(const RbfKernel& kernel, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                    const Eigen::Ref<const Eigen::RowVectorXd>& z) {
  if (x.size() != z.size()) {
    throw DomainError("kernel_value: dimension mismatch");
  }
  return phi_scaled(kernel.family(), kernel.epsilon() * (x - z).norm());
}

KernelMatrix assemble(const RbfKernel& kernel, const PointSet& points) {
  check_dims(points, points);
  const auto& P = points.coords();
  const Eigen::Index n = P.rows();
  const double eps = kernel.epsilon();
  const KernelFamily family = kernel.family();
  KernelMatrix K(n, n);
  // Column-major storage: fill the lower triangle column by column.
  for (Eigen::Index j = 0; j < n; ++j) {
    K(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      K(i, j) = phi_scaled(family, eps * (P.row(i) - P.row(j)).norm());
    }
  }
  K.triangularView<Eigen::StrictlyUpper>() = K.transpose();
  return K;
}

KernelMatrix assemble(const RbfKernel& kernel, const PointSet& rows, const PointSet& cols) {
  check_dims(rows, cols);
  if (&rows == &cols || rows == cols) {
    return assemble(kernel, rows);
  }
  const auto& R = rows.coords();
  const auto& C = cols.coords();
  const double eps = kernel.epsilon();
  const KernelFamily family = kernel.family();
  KernelMatrix K(R.rows(), C.rows());
  for (Eigen::Index j = 0; j < C.rows(); ++j) {
    for (Eigen::Index i = 0; i < R.rows(); ++i) {
      K(i, j) = phi_scaled(family, eps * (R.row(i) - C.row(j)).norm());
    }
  }
  return K;
}

}  // namespace rbftune
