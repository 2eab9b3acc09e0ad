#include "rbftune/rbf.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "rbftune/errors.hpp"

namespace rbftune {

RbfModel::RbfModel(RbfKernel kernel, PointSet centers, Eigen::VectorXd coefficients, FitKind kind)
    : RbfModel(kernel, std::move(centers), std::move(coefficients), kind, 0) {
  rank_ = centers_.size();
}

RbfModel::RbfModel(RbfKernel kernel, PointSet centers, Eigen::VectorXd coefficients, FitKind kind,
                   std::size_t rank)
    : kernel_(kernel),
      centers_(std::move(centers)),
      coefficients_(std::move(coefficients)),
      kind_(kind),
      rank_(rank) {
  if (static_cast<std::size_t>(coefficients_.size()) != centers_.size()) {
    throw DomainError("RbfModel: coefficient count does not match center count");
  }
}

namespace {

bool factor_ok(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return llt.info() == Eigen::Success && llt.matrixLLT().diagonal().allFinite() &&
         (llt.matrixLLT().diagonal().array() > 0.0).all();
}

RbfModel fit_interpolant(const RbfKernel& kernel, const DataSet& data) {
  const KernelMatrix K = assemble(kernel, data.locations());
  const auto llt = factor_spd(K, kernel.epsilon());
  Eigen::VectorXd c = llt.solve(data.values());
  if (!c.allFinite()) {
    throw ConditioningError(kernel.epsilon(), "interpolation solve produced non-finite coefficients");
  }
  return RbfModel(kernel, data.locations(), std::move(c), FitKind::Interpolation);
}

}  // namespace

Eigen::LLT<Eigen::MatrixXd> factor_spd(const KernelMatrix& K, double epsilon) {
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (factor_ok(llt)) {
    return llt;
  }
  const double n = static_cast<double>(K.rows());
  const double jitter = 1e-12 * K.trace() / n;
  Eigen::MatrixXd shifted = K;
  shifted.diagonal().array() += jitter;
  llt.compute(shifted);
  if (factor_ok(llt)) {
    return llt;
  }
  throw ConditioningError(epsilon, "kernel matrix is numerically indefinite at epsilon = " +
                                       std::to_string(epsilon));
}

RbfModel fit(const RbfKernel& kernel, const DataSet& data) {
  if (data.size() == 0) {
    throw DomainError("fit: empty data set");
  }
  return fit_interpolant(kernel, data);
}

RbfModel fit(const RbfKernel& kernel, const DataSet& data, const PointSet& centers,
             const FitOptions& opts) {
  if (data.size() == 0 || centers.empty()) {
    throw DomainError("fit: empty data set or center set");
  }
  // Throws ConfigurationError for a center that is not a data location.
  match_centers(data.locations(), centers);
  if (centers.size() >= data.size()) {
    // With distinct locations, a subset of equal size is the whole set.
    return fit_interpolant(kernel, data);
  }

  const KernelMatrix K = assemble(kernel, data.locations(), centers);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(K.rows(), K.cols());
  qr.setThreshold(kRankThreshold);
  qr.compute(K);
  const auto rank = static_cast<std::size_t>(qr.rank());
  if (qr.nonzeroPivots() == 0 || (opts.strict_rank && rank < centers.size())) {
    throw RankError(kernel.epsilon(), rank, centers.size(),
                    "collocation matrix has rank " + std::to_string(rank) + " < " +
                        std::to_string(centers.size()) + " at epsilon = " +
                        std::to_string(kernel.epsilon()));
  }
  Eigen::VectorXd c = qr.solve(data.values());
  if (!c.allFinite()) {
    throw RankError(kernel.epsilon(), rank, centers.size(),
                    "least-squares solve produced non-finite coefficients");
  }
  return RbfModel(kernel, centers, std::move(c), FitKind::LeastSquares, rank);
}

Eigen::VectorXd evaluate(const RbfModel& model, const PointSet& queries) {
  if (queries.empty()) {
    return Eigen::VectorXd(0);
  }
  if (queries.dim() != model.centers().dim()) {
    throw DomainError("evaluate: query dimension " + std::to_string(queries.dim()) +
                      " does not match center dimension " +
                      std::to_string(model.centers().dim()));
  }
  return assemble(model.kernel(), queries, model.centers()) * model.coefficients();
}

double mae(const Eigen::Ref<const Eigen::VectorXd>& predictions,
           const Eigen::Ref<const Eigen::VectorXd>& truth) {
  if (predictions.size() != truth.size()) {
    throw DomainError("mae: length mismatch");
  }
  if (truth.size() == 0) {
    throw DomainError("mae: empty input");
  }
  return (predictions - truth).cwiseAbs().maxCoeff();
}

double rmae(const Eigen::Ref<const Eigen::VectorXd>& predictions,
            const Eigen::Ref<const Eigen::VectorXd>& truth) {
  const double err = mae(predictions, truth);
  const double scale = truth.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) {
    throw DomainError("rmae: all truth values are zero");
  }
  return err / scale;
}

}  // namespace rbftune
