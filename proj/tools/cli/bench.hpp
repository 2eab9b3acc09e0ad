#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbftune/data.hpp"
#include "rbftune/kernels.hpp"
#include "rbftune/pipeline.hpp"

namespace rbftune::cli {

struct BenchConfig {
  std::vector<PointKind> point_kinds{PointKind::Random, PointKind::Halton};
  std::vector<std::size_t> sizes{250, 500, 1000};
  std::vector<KernelFamily> kernels{KernelFamily::Gaussian, KernelFamily::Matern2,
                                    KernelFamily::Wendland2};
  std::vector<TestFunction> functions{TestFunction::F1, TestFunction::F2};
  std::vector<Method> methods{Method::Loocv, Method::LoocvStar, Method::Bo};
  std::vector<double> xis{0.1, 0.01, 0.001};
  std::vector<double> fractions{0.2, 0.4, 0.6, 0.8, 1.0};
  std::size_t test_size = 1000;
  std::uint64_t seed = 0;

  double eps_max = 20.0;
  std::size_t grid_size = 500;
  double start = 10.0;
  std::size_t nstart = 5;
  std::size_t niter = 25;
  double sweep_xi = 0.01;   // BO offset used for the center sweeps
  bool interpolation = true;
  bool sweeps = true;

  /// Throws DomainError when a list is empty or a size is below 10.
  void validate() const;
};

/// One row of a result table. Empty optionals are blank CSV fields.
struct BenchRow {
  TestFunction function = TestFunction::F1;
  PointKind points = PointKind::Random;
  KernelFamily kernel = KernelFamily::Gaussian;
  std::size_t n = 0;
  Method method = Method::Bo;
  std::optional<double> xi;
  std::optional<double> centers_pct;
  double mae = 0.0;
  double epsilon_star = 0.0;
  std::optional<double> time_s;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchTable {
  std::string name;  // file stem
  std::string title;
  std::vector<BenchRow> rows;
};

/// Table layout for `config`, rows in output order with results unset.
std::vector<BenchTable> plan_bench(const BenchConfig& config);

/// Fill every row of `tables` by running its pipeline. Up to `jobs` cells run
/// at once; results land in their planned slot, so the output order does not
/// depend on scheduling. Rows whose cell failed are dropped and the first
/// error is rethrown after all cells finished.
void run_bench(const BenchConfig& config, std::vector<BenchTable>& tables, unsigned jobs,
               const std::function<void(const BenchRow&)>& on_row = {});

std::string to_csv(const BenchTable& table, bool with_time);
std::vector<BenchRow> parse_bench_csv(std::string_view text);
std::string to_markdown(const std::vector<BenchTable>& tables);

/// Locations and values of one synthetic data set, and its evaluation set.
DataSet bench_data(TestFunction f, PointKind kind, std::size_t n, std::uint64_t seed);
DataSet bench_test_set(TestFunction f, std::size_t size, std::uint64_t seed);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace rbftune::cli
