#pragma once

#include <cstddef>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace rbftune {

/// Matern-5/2 covariance sigma^2 (1 + sqrt5 r/l + 5r^2/(3l^2)) exp(-sqrt5 r/l).
double matern52(double r, double length_scale, double signal_variance);

struct GpPrediction {
  double mean;
  double std;
};

struct GpOptions {
  std::size_t length_scale_candidates = 25;
  double length_scale_lo = 1e-2;  // times the input range
  double length_scale_hi = 10.0;  // times the input range
  double min_range = 1e-3;
  double jitter_start = 1e-10;  // times the signal variance
  double jitter_max = 1e-4;
};

/// Zero-mean GP regression on scalar inputs with a Matern-5/2 covariance.
/// Targets are standardized before fitting and predictions are mapped back
/// to the original scale. Immutable once built.
class GpSurrogate {
 public:
  /// Selects the length scale by maximizing the log marginal likelihood over a
  /// log-spaced grid. Throws SurrogateFitError if no candidate factorizes even
  /// at the largest jitter.
  static GpSurrogate fit(const Eigen::VectorXd& inputs, const Eigen::VectorXd& targets,
                         const GpOptions& opts = {});

  GpPrediction predict(double x) const;

  std::size_t size() const noexcept { return static_cast<std::size_t>(inputs_.size()); }
  const Eigen::VectorXd& inputs() const noexcept { return inputs_; }
  const Eigen::VectorXd& targets() const noexcept { return targets_; }
  double length_scale() const noexcept { return length_scale_; }
  double signal_variance() const noexcept { return signal_variance_; }
  double jitter() const noexcept { return jitter_; }
  double target_mean() const noexcept { return target_mean_; }
  double target_std() const noexcept { return target_std_; }
  double log_marginal_likelihood() const noexcept { return log_marginal_likelihood_; }

 private:
  GpSurrogate() = default;

  Eigen::VectorXd inputs_;
  Eigen::VectorXd targets_;  // original scale
  double length_scale_ = 1.0;
  double signal_variance_ = 1.0;
  double jitter_ = 0.0;
  double target_mean_ = 0.0;
  double target_std_ = 1.0;
  double log_marginal_likelihood_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> factor_;
  Eigen::VectorXd alpha_;  // K^-1 y on the standardized scale
};

inline GpSurrogate gp_fit(const Eigen::VectorXd& inputs, const Eigen::VectorXd& targets) {
  return GpSurrogate::fit(inputs, targets);
}

inline GpPrediction gp_predict(const GpSurrogate& surrogate, double query) {
  return surrogate.predict(query);
}

}  // namespace rbftune
