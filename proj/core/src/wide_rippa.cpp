#include "wide_rippa.hpp"

#include <cmath>
#include <vector>

#ifdef RBFTUNE_HAVE_FLOAT128
#include <quadmath.h>
#endif

namespace rbftune::detail {

namespace {

#ifdef RBFTUNE_HAVE_FLOAT128
using Wide = __float128;
Wide wexp(Wide x) { return expq(x); }
Wide wsqrt(Wide x) { return sqrtq(x); }
#else
using Wide = long double;
Wide wexp(Wide x) { return std::exp(x); }
Wide wsqrt(Wide x) { return std::sqrt(x); }
#endif

Wide wide_phi(KernelFamily family, Wide s) {
  switch (family) {
    case KernelFamily::Gaussian:
      return wexp(-s * s);
    case KernelFamily::Matern2:
      return wexp(-s) * (s + 1);
    case KernelFamily::Wendland2: {
      if (s >= 1) return 0;
      const Wide t = 1 - s;
      return t * t * t * t * (4 * s + 1);
    }
  }
  return 0;
}

}  // namespace

std::optional<Eigen::VectorXd> rippa_errors_wide(const RbfKernel& kernel, const DataSet& data) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const auto& X = data.locations().coords();
  const Wide eps = kernel.epsilon();
  std::vector<Wide> L(n * n, 0);  // row-major lower triangle
  auto at = [&](std::size_t i, std::size_t j) -> Wide& { return L[i * n + j]; };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Wide r2 = 0;
      for (std::size_t k = 0; k < d; ++k) {
        const Wide diff = static_cast<Wide>(X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) -
                          static_cast<Wide>(X(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)));
        r2 += diff * diff;
      }
      at(i, j) = wide_phi(kernel.family(), eps * wsqrt(r2));
    }
  }

  // Cholesky, in place
  for (std::size_t j = 0; j < n; ++j) {
    Wide diag = at(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= at(j, k) * at(j, k);
    if (!(diag > 0)) return std::nullopt;
    const Wide ljj = wsqrt(diag);
    at(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Wide s = at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / ljj;
    }
  }

  // c = L^-T L^-1 f
  std::vector<Wide> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Wide s = data.values()(static_cast<Eigen::Index>(i));
    for (std::size_t k = 0; k < i; ++k) s -= at(i, k) * y[k];
    y[i] = s / at(i, i);
  }
  std::vector<Wide> c(n);
  for (std::size_t i = n; i-- > 0;) {
    Wide s = y[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= at(k, i) * c[k];
    c[i] = s / at(i, i);
  }

  // (K^-1)_jj = squared norm of column j of L^-1; column j solves L z = e_j
  Eigen::VectorXd e(static_cast<Eigen::Index>(n));
  std::vector<Wide> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    Wide norm2 = 0;
    for (std::size_t i = j; i < n; ++i) {
      Wide s = i == j ? Wide(1) : Wide(0);
      for (std::size_t k = j; k < i; ++k) s -= at(i, k) * z[k];
      z[i] = s / at(i, i);
      norm2 += z[i] * z[i];
    }
    e(static_cast<Eigen::Index>(j)) = static_cast<double>(c[j] / norm2);
  }
  if (!e.allFinite()) return std::nullopt;
  return e;
}

}  // namespace rbftune::detail
