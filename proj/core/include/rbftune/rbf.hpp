#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "rbftune/data.hpp"
#include "rbftune/kernels.hpp"

namespace rbftune {

enum class FitKind { Interpolation, LeastSquares };

/// A fitted kernel expansion sum_k c_k kappa(x, center_k).
class RbfModel {
 public:
  RbfModel(RbfKernel kernel, PointSet centers, Eigen::VectorXd coefficients, FitKind kind,
           std::size_t rank);
  RbfModel(RbfKernel kernel, PointSet centers, Eigen::VectorXd coefficients, FitKind kind);

  const RbfKernel& kernel() const noexcept { return kernel_; }
  const PointSet& centers() const noexcept { return centers_; }
  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  FitKind kind() const noexcept { return kind_; }
  /// Numerical rank of the collocation matrix at kRankThreshold (least
  /// squares); the center count for interpolants.
  std::size_t rank() const noexcept { return rank_; }
  bool rank_deficient() const noexcept { return rank_ < centers_.size(); }

 private:
  RbfKernel kernel_;
  PointSet centers_;
  Eigen::VectorXd coefficients_;
  FitKind kind_;
  std::size_t rank_;
};

/// Cholesky factor of a square kernel matrix. On failure the factorization is
/// retried once with a diagonal jitter of 1e-12 * trace / n; a second failure
/// throws ConditioningError carrying `epsilon`.
Eigen::LLT<Eigen::MatrixXd> factor_spd(const KernelMatrix& K, double epsilon);

/// Relative threshold on |R_ii| below which the collocation matrix of a
/// least-squares fit is declared rank deficient.
inline constexpr double kRankThreshold = 1e-12;

struct FitOptions {
  // Throw RankError when the collocation matrix is rank deficient at
  // kRankThreshold. Otherwise the pivoted-QR solution is returned and the
  // deficiency is visible through RbfModel::rank(). Accurate Gaussian fits
  // routinely live in the numerically rank-deficient regime.
  bool strict_rank = false;
};

/// Interpolation when the centers are the data locations, least squares when
/// they are a strict subset. Throws ConfigurationError if a center is not a
/// data location, ConditioningError / RankError on numerical failure.
RbfModel fit(const RbfKernel& kernel, const DataSet& data, const PointSet& centers,
             const FitOptions& opts = {});

/// Interpolant with the centers placed at every data location.
RbfModel fit(const RbfKernel& kernel, const DataSet& data);

Eigen::VectorXd evaluate(const RbfModel& model, const PointSet& queries);

/// Maximum absolute error max_i |p_i - t_i|.
double mae(const Eigen::Ref<const Eigen::VectorXd>& predictions,
           const Eigen::Ref<const Eigen::VectorXd>& truth);

/// mae divided by max_i |t_i|.
double rmae(const Eigen::Ref<const Eigen::VectorXd>& predictions,
            const Eigen::Ref<const Eigen::VectorXd>& truth);

}  // namespace rbftune
