#include "rbftune/bo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "rbftune/errors.hpp"

namespace rbftune {

void BoConfig::validate() const {
  if (!(lo >= 0.0 && lo < hi) || !std::isfinite(hi)) {
    throw DomainError("BoConfig: need 0 <= lo < hi < inf");
  }
  if (nstart < 1) throw DomainError("BoConfig: nstart must be >= 1");
  if (!(xi >= 0.0)) throw DomainError("BoConfig: xi must be >= 0");
  if (acquisition_candidates < 1) throw DomainError("BoConfig: need >= 1 acquisition candidate");
}

double expected_improvement(const GpPrediction& pred, double best_so_far, double xi) {
  if (!(pred.std > 0.0)) {
    return 0.0;
  }
  const double improvement = pred.mean - best_so_far - xi;
  const double z = improvement / pred.std;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return std::max(improvement * cdf + pred.std * pdf, 0.0);
}

double propose_next(const GpSurrogate& surrogate, double best_so_far, const BoConfig& config,
                    Rng& rng) {
  double best_x = 0.0;
  double best_ei = -1.0;
  for (std::size_t i = 0; i < config.acquisition_candidates; ++i) {
    const double x = rng.uniform_left_open(config.lo, config.hi);
    const double ei = expected_improvement(surrogate.predict(x), best_so_far, config.xi);
    if (ei > best_ei) {
      best_ei = ei;
      best_x = x;
    }
  }
  return best_x;
}

BoResult optimize(const Objective& objective, const BoConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  Rng init_rng(mix_seed(config.seed, 0));
  Rng acq_rng(mix_seed(config.seed, 1));

  BoResult result;
  result.history.reserve(config.nstart + config.niter);
  const auto evaluate = [&](double eps) {
    double value = kNegInf;
    try {
      value = objective(eps);
    } catch (const Error&) {
      value = kNegInf;
    }
    const bool failed = !std::isfinite(value);
    result.history.push_back({eps, failed ? kNegInf : value, failed});
  };

  for (std::size_t i = 0; i < config.nstart; ++i) {
    evaluate(init_rng.uniform_left_open(config.lo, config.hi));
  }

  for (std::size_t it = 0; it < config.niter; ++it) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& e : result.history) {
      if (!e.failed) {
        xs.push_back(e.epsilon);
        ys.push_back(e.value);
      }
    }
    double next;
    if (xs.empty()) {
      // Nothing to model yet: keep sampling uniformly.
      next = acq_rng.uniform_left_open(config.lo, config.hi);
    } else {
      const auto n = static_cast<Eigen::Index>(xs.size());
      const double best = *std::max_element(ys.begin(), ys.end());
      try {
        const auto surrogate = GpSurrogate::fit(Eigen::Map<const Eigen::VectorXd>(xs.data(), n),
                                                Eigen::Map<const Eigen::VectorXd>(ys.data(), n),
                                                config.gp);
        next = propose_next(surrogate, best, config, acq_rng);
      } catch (const SurrogateFitError&) {
        next = acq_rng.uniform_left_open(config.lo, config.hi);
      }
    }
    evaluate(next);
  }

  bool any = false;
  for (const auto& e : result.history) {
    if (!e.failed && (!any || e.value > result.best_objective)) {
      any = true;
      result.best_objective = e.value;
      result.best_epsilon = e.epsilon;
    }
  }
  if (!any) {
    throw OptimizationFailedError("every objective evaluation failed");
  }
  result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace rbftune
