#include "rbftune/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "rbftune/errors.hpp"

namespace rbftune {

double matern52(double r, double length_scale, double signal_variance) {
  if (!(r >= 0.0) || !(length_scale > 0.0) || !(signal_variance > 0.0)) {
    throw DomainError("matern52: need r >= 0 and positive length scale and variance");
  }
  const double s = std::sqrt(5.0) * r / length_scale;
  return signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

namespace {

struct Candidate {
  double length_scale;
  double jitter;
  double lml;
  Eigen::LLT<Eigen::MatrixXd> factor;
  Eigen::VectorXd alpha;
};

Eigen::MatrixXd covariance(const Eigen::VectorXd& x, double length_scale, double variance) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    K(j, j) = variance;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      K(i, j) = K(j, i) = matern52(std::abs(x(i) - x(j)), length_scale, variance);
    }
  }
  return K;
}

std::optional<Candidate> try_length_scale(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                          double length_scale, double variance,
                                          const GpOptions& opts) {
  const Eigen::MatrixXd K = covariance(x, length_scale, variance);
  for (double jitter = opts.jitter_start * variance; jitter <= opts.jitter_max * variance * 1.0001;
       jitter = jitter > 0.0 ? jitter * 10.0 : std::numeric_limits<double>::infinity()) {
    Eigen::MatrixXd Kj = K;
    Kj.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(Kj);
    if (llt.info() != Eigen::Success || !(llt.matrixLLT().diagonal().array() > 0.0).all()) {
      continue;
    }
    Eigen::VectorXd alpha = llt.solve(y);
    if (!alpha.allFinite()) continue;
    const double n = static_cast<double>(x.size());
    const double lml = -0.5 * y.dot(alpha) -
                       llt.matrixLLT().diagonal().array().log().sum() -
                       0.5 * n * std::log(2.0 * std::numbers::pi);
    if (!std::isfinite(lml)) continue;
    return Candidate{length_scale, jitter, lml, std::move(llt), std::move(alpha)};
  }
  return std::nullopt;
}

}  // namespace

GpSurrogate GpSurrogate::fit(const Eigen::VectorXd& inputs, const Eigen::VectorXd& targets,
                             const GpOptions& opts) {
  if (inputs.size() != targets.size() || inputs.size() == 0) {
    throw DomainError("gp_fit: need equally many (>= 1) inputs and targets");
  }
  if (!inputs.allFinite() || !targets.allFinite()) {
    throw DomainError("gp_fit: non-finite observation");
  }
  if (!(opts.jitter_start >= 0.0 && opts.jitter_max >= opts.jitter_start)) {
    throw DomainError("gp_fit: need 0 <= jitter_start <= jitter_max");
  }
  if (opts.length_scale_candidates < 1) {
    throw DomainError("gp_fit: need at least one length-scale candidate");
  }

  GpSurrogate gp;
  gp.inputs_ = inputs;
  gp.targets_ = targets;
  gp.target_mean_ = targets.mean();
  const double sd =
      std::sqrt((targets.array() - gp.target_mean_).square().sum() / static_cast<double>(targets.size()));
  gp.target_std_ = sd > 0.0 ? sd : 1.0;
  const Eigen::VectorXd y = (targets.array() - gp.target_mean_) / gp.target_std_;

  const double range = std::max(inputs.maxCoeff() - inputs.minCoeff(), opts.min_range);
  const double lo = std::log(opts.length_scale_lo * range);
  const double hi = std::log(opts.length_scale_hi * range);
  const std::size_t count = opts.length_scale_candidates;

  std::optional<Candidate> best;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    const double ell = std::exp(lo + t * (hi - lo));
    auto cand = try_length_scale(inputs, y, ell, gp.signal_variance_, opts);
    if (cand && (!best || cand->lml > best->lml)) {
      best = std::move(cand);
    }
  }
  if (!best) {
    throw SurrogateFitError("gp_fit: covariance matrix not positive definite at maximum jitter");
  }
  gp.length_scale_ = best->length_scale;
  gp.jitter_ = best->jitter;
  gp.log_marginal_likelihood_ = best->lml;
  gp.factor_ = std::move(best->factor);
  gp.alpha_ = std::move(best->alpha);
  return gp;
}

GpPrediction GpSurrogate::predict(double x) const {
  const Eigen::Index n = inputs_.size();
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i) = matern52(std::abs(x - inputs_(i)), length_scale_, signal_variance_);
  }
  const double mean = k.dot(alpha_);
  const Eigen::VectorXd v = factor_.matrixL().solve(k);
  const double var = std::max(signal_variance_ - v.squaredNorm(), 0.0);
  return {mean * target_std_ + target_mean_, std::sqrt(var) * target_std_};
}

}  // namespace rbftune
