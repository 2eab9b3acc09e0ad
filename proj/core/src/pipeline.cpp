#include "rbftune/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "rbftune/errors.hpp"
#include "rbftune/random.hpp"

namespace rbftune {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Loocv:
      return "loocv";
    case Method::LoocvStar:
      return "loocv-star";
    case Method::Bo:
      return "bo";
  }
  return "?";
}

Method parse_method(std::string_view token) {
  if (token == "loocv") return Method::Loocv;
  if (token == "loocv-star") return Method::LoocvStar;
  if (token == "bo") return Method::Bo;
  throw DomainError("unknown method '" + std::string(token) + "' (expected loocv|loocv-star|bo)");
}

namespace {

// Seed sub-streams of a request.
constexpr std::uint64_t kSplitStream = 10;
constexpr std::uint64_t kBoStream = 11;
constexpr std::uint64_t kCenterStream = 12;

using Clock = std::chrono::steady_clock;

const PointSet& effective_centers(const TuneRequest& req) {
  return req.centers.empty() ? req.data.locations() : req.centers;
}

void validate(const TuneRequest& req) {
  if (req.data.size() == 0) {
    throw DomainError("tune: empty data set");
  }
  if (req.test.size() == 0) {
    throw DomainError("tune: empty test set");
  }
  if (req.test.dim() != req.data.dim()) {
    throw DomainError("tune: test and data dimensions differ");
  }
  if (!(req.eps_max > 0.0)) {
    throw DomainError("tune: eps_max must be positive");
  }
  match_centers(req.data.locations(), effective_centers(req));
  if (!shared_locations(req.data.locations(), req.test.locations()).empty()) {
    throw ConfigurationError("tune: test locations overlap the data locations");
  }
}

void finalize(TuneReport& report, const TuneRequest& req) {
  const RbfKernel kernel(req.family, report.epsilon_star);
  const RbfModel model = fit(kernel, req.data, effective_centers(req));
  const Eigen::VectorXd pred = evaluate(model, req.test.locations());
  report.final_fit = model.kind();
  report.mae_test = mae(pred, req.test.values());
  if (req.report_rmae) {
    report.rmae_test = rmae(pred, req.test.values());
  }
}

TuneReport base_report(const TuneRequest& req) {
  TuneReport report;
  report.method = req.method;
  report.family = req.family;
  report.n = req.data.size();
  report.centers = effective_centers(req).size();
  report.center_fraction =
      static_cast<double>(report.centers) / static_cast<double>(report.n);
  return report;
}

}  // namespace

TuneReport run_bo_pipeline(const TuneRequest& req) {
  if (req.method != Method::Bo) {
    throw ConfigurationError("run_bo_pipeline: request method is not bo");
  }
  validate(req);
  TuneReport report = base_report(req);

  const auto t0 = Clock::now();
  const Split parts =
      split(req.data, effective_centers(req), {req.train_fraction, mix_seed(req.seed, kSplitStream)});

  const Objective objective = [&](double eps) {
    const RbfModel model = fit(RbfKernel(req.family, eps), parts.train, parts.train_centers);
    return -mae(evaluate(model, parts.val.locations()), parts.val.values());
  };
  BoConfig config;
  config.lo = 0.0;
  config.hi = req.eps_max;
  config.nstart = req.bo.nstart;
  config.niter = req.bo.niter;
  config.xi = req.bo.xi;
  config.acquisition_candidates = req.bo.acquisition_candidates;
  config.seed = mix_seed(req.seed, kBoStream);
  const BoResult bo = optimize(objective, config);
  report.elapsed = std::chrono::duration<double>(Clock::now() - t0).count();

  report.epsilon_star = bo.best_epsilon;
  report.best_objective = bo.best_objective;
  report.evaluations = bo.history.size();
  for (const auto& e : bo.history) {
    report.trace.push_back({e.epsilon, e.value});
    if (e.failed) ++report.failed_evaluations;
  }
  finalize(report, req);
  return report;
}

TuneReport run_loocv_pipeline(const TuneRequest& req) {
  if (req.method == Method::Bo) {
    throw ConfigurationError("run_loocv_pipeline: request method is bo");
  }
  validate(req);
  if (effective_centers(req).size() != req.data.size()) {
    throw UnsupportedConfigurationError(
        "Rippa inapplicable: leave-one-out tuning needs the centers to be every data location "
        "(least-squares fits have no full interpolation matrix)");
  }
  TuneReport report = base_report(req);

  const LoocvResult res =
      req.method == Method::Loocv
          ? grid_search(req.family, req.data, req.eps_max, req.grid_size)
          : optimizer_search(req.family, req.data, req.eps_max, req.start);
  report.elapsed = res.elapsed;
  report.epsilon_star = res.best_epsilon;
  report.best_objective = res.best_error;
  report.evaluations = res.trace.size();
  report.trace = res.trace;
  for (const auto& tp : res.trace) {
    if (!std::isfinite(tp.value)) ++report.failed_evaluations;
  }
  finalize(report, req);
  return report;
}

TuneReport run_pipeline(const TuneRequest& req) {
  return req.method == Method::Bo ? run_bo_pipeline(req) : run_loocv_pipeline(req);
}

std::size_t center_count(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

PointSet select_centers(const PointSet& locations, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw DomainError("center fraction must lie in (0, 1]");
  }
  const std::size_t n = locations.size();
  const std::size_t m = center_count(n, fraction);
  if (m >= n) {
    return locations;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(mix_seed(seed, kCenterStream));
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(m);
  return locations.select(idx);
}

std::vector<TuneReport> center_sweep(const DataSet& data, const DataSet& test,
                                     const std::vector<double>& fractions, KernelFamily family,
                                     const BoParams& bo, double eps_max, std::uint64_t seed) {
  std::vector<TuneReport> reports;
  reports.reserve(fractions.size());
  for (double fraction : fractions) {
    TuneRequest req;
    req.method = Method::Bo;
    req.family = family;
    req.data = data;
    req.centers = select_centers(data.locations(), fraction, seed);
    req.test = test;
    req.eps_max = eps_max;
    req.bo = bo;
    req.seed = seed;
    reports.push_back(run_bo_pipeline(req));
    reports.back().center_fraction = fraction;
  }
  return reports;
}

}  // namespace rbftune
