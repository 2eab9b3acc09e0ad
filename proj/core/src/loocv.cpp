#include "rbftune/loocv.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <utility>

#include "rbftune/errors.hpp"
#include "rbftune/rbf.hpp"
#include "wide_rippa.hpp"

namespace rbftune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void finish(LoocvResult& result) {
  result.best_error = kInf;
  for (const auto& tp : result.trace) {
    if (tp.value < result.best_error) {
      result.best_error = tp.value;
      result.best_epsilon = tp.epsilon;
    }
  }
  if (!(result.best_error < kInf)) {
    throw SearchFailedError("every candidate shape parameter failed");
  }
}

// In-place inverse of a lower-triangular matrix by 2x2 block recursion,
//   [A 0; B C]^-1 = [A^-1 0; -C^-1 B A^-1  C^-1],
// which costs n^3/3 flops against n^3 for a triangular solve with I.
void invert_lower(Eigen::Ref<Eigen::MatrixXd> L) {
  const Eigen::Index n = L.rows();
  if (n <= 64) {
    Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
    L.triangularView<Eigen::Lower>().solveInPlace(inv);
    L = inv;
    return;
  }
  const Eigen::Index h = n / 2;
  auto A = L.topLeftCorner(h, h);
  auto B = L.bottomLeftCorner(n - h, h);
  auto C = L.bottomRightCorner(n - h, n - h);
  invert_lower(A);
  invert_lower(C);
  const Eigen::MatrixXd BA = B * A.triangularView<Eigen::Lower>();
  B.noalias() = -(C.triangularView<Eigen::Lower>() * BA);
  L.topRightCorner(h, n - h).setZero();
}

}  // namespace

Eigen::VectorXd rippa_errors(const RbfKernel& kernel, const DataSet& data) {
  if (data.size() == 0) {
    throw DomainError("rippa_errors: empty data set");
  }
  const bool small = data.size() <= kWideRippaMaxPoints;
  const KernelMatrix K = assemble(kernel, data.locations());
  Eigen::LLT<Eigen::MatrixXd> llt;
  try {
    llt = factor_spd(K, kernel.epsilon());
  } catch (const ConditioningError&) {
    if (!small) throw;
    if (auto e = detail::rippa_errors_wide(kernel, data)) return *e;
    throw;
  }
  if (small && llt.rcond() < kWideRippaRcond) {
    if (auto e = detail::rippa_errors_wide(kernel, data)) return *e;
  }
  const Eigen::VectorXd c = llt.solve(data.values());

  // K^-1 = L^-T L^-1, so (K^-1)_jj is the squared norm of column j of L^-1.
  Eigen::MatrixXd Linv = llt.matrixL();
  invert_lower(Linv);
  const Eigen::VectorXd diag = Linv.colwise().squaredNorm().transpose();

  if (!c.allFinite() || !diag.allFinite() || (diag.array() <= 0.0).any()) {
    throw ConditioningError(kernel.epsilon(), "inverse diagonal is not positive and finite");
  }
  return c.cwiseQuotient(diag);
}

double er(KernelFamily family, double epsilon, const DataSet& data) {
  try {
    const double value = rippa_errors(RbfKernel(family, epsilon), data).cwiseAbs().maxCoeff();
    return std::isfinite(value) ? value : kInf;
  } catch (const ConditioningError&) {
    return kInf;
  }
}

LoocvResult grid_search(KernelFamily family, const DataSet& data, double eps_max,
                        std::size_t grid_size) {
  if (grid_size < 2 || !(eps_max > 0.0)) {
    throw DomainError("grid_search: need grid_size >= 2 and eps_max > 0");
  }
  const auto t0 = Clock::now();
  LoocvResult result;
  result.trace.reserve(grid_size);
  for (std::size_t k = 1; k <= grid_size; ++k) {
    const double eps = static_cast<double>(k) * eps_max / static_cast<double>(grid_size);
    result.trace.push_back({eps, er(family, eps, data)});
  }
  finish(result);
  result.elapsed = seconds_since(t0);
  return result;
}

LoocvResult minimize_bounded(const std::function<double(double)>& objective, double lo, double hi,
                             double start, const MinimizeOptions& opts) {
  if (!(lo < hi) || !(start > lo && start <= hi)) {
    throw DomainError("minimize_bounded: start must lie in (lo, hi]");
  }
  if (opts.max_evaluations < 1) {
    throw DomainError("minimize_bounded: max_evaluations must be positive");
  }
  const auto t0 = Clock::now();
  LoocvResult result;

  // The interval is open at lo; stay a hair inside it.
  const double floor_x = lo + 1e-9 * (hi - lo);
  const auto budget_left = [&] { return result.trace.size() < opts.max_evaluations; };
  const auto eval = [&](double x) {
    double v = objective(x);
    if (std::isnan(v)) v = kInf;
    result.trace.push_back({x, v});
    return v;
  };

  const double step = opts.initial_step * (hi - lo);
  const double f0 = eval(start);
  double a = start;
  double b = start;

  // Step from `prev` through `cur` toward `limit` while the objective keeps
  // falling. Returns (near end, far end) of a bracket around the minimum.
  const auto march = [&](double prev, double cur, double fcur, double limit) {
    constexpr double kGrow = 1.618033988749895;
    while (budget_left()) {
      if (cur == limit) return std::pair{prev, cur};
      double next = cur + kGrow * (cur - prev);
      next = limit > cur ? std::min(next, limit) : std::max(next, limit);
      const double fnext = eval(next);
      if (!(fnext < fcur)) return std::pair{prev, next};
      prev = cur;
      cur = next;
      fcur = fnext;
    }
    return std::pair{prev, cur};
  };

  if (budget_left()) {
    const double right = std::min(start + step, hi);
    const double fr = right > start ? eval(right) : kInf;
    if (fr < f0) {
      std::tie(a, b) = march(start, right, fr, hi);
    } else if (budget_left()) {
      const double left = std::max(start - step, floor_x);
      const double fl = eval(left);
      if (fl < f0) {
        std::tie(b, a) = march(start, left, fl, floor_x);
      } else {
        a = left;
        b = right > start ? right : start;
      }
    }
  }
  if (a > b) std::swap(a, b);

  // Golden-section search on [a, b].
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = budget_left() && b - a > opts.tolerance ? eval(x1) : kInf;
  double f2 = budget_left() && b - a > opts.tolerance ? eval(x2) : kInf;
  while (b - a > opts.tolerance && budget_left()) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = eval(x2);
    }
  }

  // finish() picks the first minimum in evaluation order; the start point is
  // always first, so a flat objective reports the start.
  finish(result);
  result.elapsed = seconds_since(t0);
  return result;
}

LoocvResult optimizer_search(KernelFamily family, const DataSet& data, double eps_max,
                             double start, const MinimizeOptions& opts) {
  if (!(eps_max > 0.0)) {
    throw DomainError("optimizer_search: eps_max must be positive");
  }
  return minimize_bounded([&](double eps) { return er(family, eps, data); }, 0.0, eps_max, start,
                          opts);
}

}  // namespace rbftune
