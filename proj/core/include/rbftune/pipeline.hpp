#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rbftune/bo.hpp"
#include "rbftune/data.hpp"
#include "rbftune/kernels.hpp"
#include "rbftune/loocv.hpp"
#include "rbftune/rbf.hpp"

namespace rbftune {

enum class Method { Loocv, LoocvStar, Bo };

std::string_view to_string(Method m);
/// CLI tokens `loocv`, `loocv-star`, `bo`.
Method parse_method(std::string_view token);

struct BoParams {
  std::size_t nstart = 5;
  std::size_t niter = 25;
  double xi = 0.01;
  std::size_t acquisition_candidates = 2000;
};

struct TuneRequest {
  Method method = Method::Bo;
  KernelFamily family = KernelFamily::Gaussian;
  DataSet data;      // (X, F)
  PointSet centers;  // X~; empty means every data location
  DataSet test;      // evaluation pair, disjoint from the data locations
  double eps_max = 20.0;
  std::size_t grid_size = 500;   // LOOCV
  double start = 10.0;           // LOOCV*
  BoParams bo{};
  double train_fraction = 0.8;   // BO train/validation split
  std::uint64_t seed = 0;
  bool report_rmae = false;
};

struct TuneReport {
  Method method = Method::Bo;
  KernelFamily family = KernelFamily::Gaussian;
  std::size_t n = 0;
  std::size_t centers = 0;
  double center_fraction = 1.0;
  double epsilon_star = 0.0;
  double best_objective = 0.0;  // Er(eps*) for LOOCV, g(eps*) = -MAE_val for BO
  double mae_test = 0.0;
  std::optional<double> rmae_test;
  double elapsed = 0.0;  // seconds spent tuning
  FitKind final_fit = FitKind::Interpolation;
  std::size_t evaluations = 0;
  std::size_t failed_evaluations = 0;
  std::vector<TracePoint> trace;  // (eps, Er) or (eps, g), -inf / +inf for failures
};

/// Split, tune eps on the validation MAE by Bayesian optimization, refit on
/// the complete (X, X~, F) and report the test error.
TuneReport run_bo_pipeline(const TuneRequest& req);

/// Rippa-based tuning on the whole data set (interpolation only), refit and
/// report. Throws UnsupportedConfigurationError for a strict center subset.
TuneReport run_loocv_pipeline(const TuneRequest& req);

/// Dispatch on req.method.
TuneReport run_pipeline(const TuneRequest& req);

/// Center count ceil(fraction * n), guarded against representation error.
std::size_t center_count(std::size_t n, double fraction);

/// Seeded subset of ceil(fraction * n) locations (all of them for 1.0).
/// Subsets drawn with the same seed are nested.
PointSet select_centers(const PointSet& locations, double fraction, std::uint64_t seed);

/// BO pipeline for every center fraction in `fractions`.
std::vector<TuneReport> center_sweep(const DataSet& data, const DataSet& test,
                                     const std::vector<double>& fractions, KernelFamily family,
                                     const BoParams& bo, double eps_max, std::uint64_t seed);

}  // namespace rbftune
