#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rbftune/gp.hpp"
#include "rbftune/random.hpp"

namespace rbftune {

struct BoConfig {
  double lo = 0.0;   // search interval is (lo, hi]
  double hi = 20.0;
  std::size_t nstart = 5;
  std::size_t niter = 25;
  double xi = 0.01;
  std::size_t acquisition_candidates = 2000;
  std::uint64_t seed = 0;
  GpOptions gp{};

  /// Throws DomainError for an invalid configuration.
  void validate() const;
};

struct Evaluation {
  double epsilon;
  double value;  // -inf when the objective failed
  bool failed;
};

struct BoResult {
  double best_epsilon = 0.0;
  double best_objective = 0.0;
  std::vector<Evaluation> history;
  double elapsed = 0.0;  // seconds
};

/// Objective to maximize. Failure is signalled by throwing rbftune::Error or
/// by returning a non-finite value.
using Objective = std::function<double(double)>;

/// Closed-form EI with exploration offset xi; 0 when std == 0.
double expected_improvement(const GpPrediction& pred, double best_so_far, double xi);

/// Argmax of EI over `config.acquisition_candidates` uniform draws in
/// (lo, hi]; ties go to the first draw.
double propose_next(const GpSurrogate& surrogate, double best_so_far, const BoConfig& config,
                    Rng& rng);

/// nstart uniform evaluations, then niter rounds of fit / propose / evaluate.
/// Failed evaluations stay in the history but are not used to train the
/// surrogate. Throws OptimizationFailedError when every evaluation fails.
BoResult optimize(const Objective& objective, const BoConfig& config);

}  // namespace rbftune
