#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/bench.hpp"
#include "rbftune/errors.hpp"
#include "rbftune/pipeline.hpp"
#include "rbftune/random.hpp"

namespace rbftune::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const std::vector<std::string> kKernelTokens{"ga", "m2", "w2"};
const std::vector<std::string> kMethodTokens{"loocv", "loocv-star", "bo"};
const std::vector<std::string> kFunctionTokens{"f1", "f2"};
const std::vector<std::string> kPointTokens{"random", "halton"};

constexpr std::uint64_t kRealSubsampleStream = 20;

const CLI::Validator kFraction(
    [](std::string& s) -> std::string {
      double v = 0.0;
      try {
        v = std::stod(s);
      } catch (const std::exception&) {
        return "not a number: " + s;
      }
      return v > 0.0 && v <= 1.0 ? "" : "fraction must lie in (0, 1]";
    },
    "FRACTION in (0,1]");

const CLI::Validator kNotGaussian(
    [](std::string& s) -> std::string {
      return s == "ga" ? "the Gaussian kernel is not offered for real data (too little "
                         "regularity to be reliable on measurements); use m2 or w2"
                       : "";
    },
    "m2|w2");

template <typename T, typename Parse>
std::vector<T> parse_all(const std::vector<std::string>& tokens, Parse parse) {
  std::vector<T> out;
  for (const auto& t : tokens) out.push_back(parse(t));
  return out;
}

json trace_json(const std::vector<TracePoint>& trace) {
  json arr = json::array();
  for (const auto& t : trace) {
    // non-finite values (failed evaluations) become null
    arr.push_back({{"epsilon", t.epsilon},
                   {"value", std::isfinite(t.value) ? json(t.value) : json(nullptr)}});
  }
  return arr;
}

// ---- tune -----------------------------------------------------------------

struct TuneArgs {
  std::string method = "bo";
  std::string kernel = "ga";
  std::string function = "f1";
  std::string points = "halton";
  std::size_t n = 1000;
  double centers = 1.0;
  double xi = 0.01;
  double eps_max = 20.0;
  std::size_t grid = 500;
  double start = 10.0;
  std::size_t nstart = 5;
  std::size_t niter = 25;
  std::size_t test_size = 1000;
  std::uint64_t seed = 0;
};

void add_tune(CLI::App& app, TuneArgs& a) {
  auto* sub = app.add_subcommand("tune", "Tune the shape parameter on one synthetic data set");
  sub->add_option("--method", a.method, "loocv | loocv-star | bo")
      ->check(CLI::IsMember(kMethodTokens))
      ->capture_default_str();
  sub->add_option("--kernel", a.kernel, "ga | m2 | w2")
      ->check(CLI::IsMember(kKernelTokens))
      ->capture_default_str();
  sub->add_option("--function", a.function, "f1 | f2")
      ->check(CLI::IsMember(kFunctionTokens))
      ->capture_default_str();
  sub->add_option("--points", a.points, "random | halton")
      ->check(CLI::IsMember(kPointTokens))
      ->capture_default_str();
  sub->add_option("--n", a.n, "number of data locations")
      ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20))
      ->capture_default_str();
  sub->add_option("--centers", a.centers, "fraction of locations used as centers")
      ->check(kFraction)
      ->capture_default_str();
  sub->add_option("--xi", a.xi, "EI exploration offset")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--eps-max", a.eps_max, "upper end of (0, eps_max]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--grid", a.grid, "LOOCV grid size")->check(CLI::Range(2, 1000000))->capture_default_str();
  sub->add_option("--start", a.start, "LOOCV* starting value")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--nstart", a.nstart, "BO initial random evaluations")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  sub->add_option("--niter", a.niter, "BO iterations")->capture_default_str();
  sub->add_option("--test-size", a.test_size, "random evaluation points")
      ->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  sub->add_option("--seed", a.seed, "seed for data, split, centers and BO")->capture_default_str();
}

int cmd_tune(const TuneArgs& a, std::ostream& out) {
  const TestFunction f = parse_test_function(a.function);
  const PointKind kind = parse_point_kind(a.points);

  TuneRequest req;
  req.method = parse_method(a.method);
  req.family = parse_kernel_family(a.kernel);
  req.data = bench_data(f, kind, a.n, a.seed);
  req.test = bench_test_set(f, a.test_size, a.seed);
  if (a.centers < 1.0) req.centers = select_centers(req.data.locations(), a.centers, a.seed);
  req.eps_max = a.eps_max;
  req.grid_size = a.grid;
  req.start = a.start;
  req.bo.nstart = a.nstart;
  req.bo.niter = a.niter;
  req.bo.xi = a.xi;
  req.seed = a.seed;
  if (a.start > a.eps_max) {
    throw DomainError("--start must not exceed --eps-max");
  }

  const TuneReport rep = run_pipeline(req);
  json j;
  j["method"] = to_string(rep.method);
  j["kernel"] = to_string(rep.family);
  j["function"] = a.function;
  j["points"] = a.points;
  j["n"] = rep.n;
  j["centers"] = rep.centers;
  j["center_fraction"] = rep.center_fraction;
  j["xi"] = req.method == Method::Bo ? json(a.xi) : json(nullptr);
  j["seed"] = a.seed;
  j["epsilon_star"] = rep.epsilon_star;
  j["best_objective"] = rep.best_objective;
  j["mae"] = rep.mae_test;
  j["rmae"] = rep.rmae_test ? json(*rep.rmae_test) : json(nullptr);
  j["elapsed_s"] = rep.elapsed;
  j["final_fit"] = rep.final_fit == FitKind::Interpolation ? "interpolation" : "least-squares";
  j["evaluations"] = rep.evaluations;
  j["failed_evaluations"] = rep.failed_evaluations;
  j["trace"] = trace_json(rep.trace);
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> points{"random", "halton"};
  std::vector<std::size_t> sizes{250, 500, 1000};
  std::vector<std::string> kernels{"ga", "m2", "w2"};
  std::vector<std::string> functions{"f1", "f2"};
  std::vector<std::string> methods{"loocv", "loocv-star", "bo"};
  std::vector<double> xis{0.1, 0.01, 0.001};
  std::vector<double> fractions{0.2, 0.4, 0.6, 0.8, 1.0};
  std::size_t test_size = 1000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out = "bench-results";
  double eps_max = 20.0;
  std::size_t grid = 500;
  double start = 10.0;
  std::size_t nstart = 5;
  std::size_t niter = 25;
  double sweep_xi = 0.01;
  bool timing = false;
  bool no_sweeps = false;
  bool no_interpolation = false;
};

void add_bench(CLI::App& app, BenchArgs& a) {
  auto* sub = app.add_subcommand("bench", "Run the benchmark matrix and write CSV tables");
  sub->add_option("--points", a.points, "point kinds")
      ->delimiter(',')
      ->check(CLI::IsMember(kPointTokens))
      ->capture_default_str();
  sub->add_option("--sizes,--n", a.sizes, "data set sizes (>= 10)")
      ->delimiter(',')
      ->check(CLI::Range(std::size_t{10}, std::size_t{1} << 20))
      ->capture_default_str();
  sub->add_option("--kernels,--kernel", a.kernels, "kernel families")
      ->delimiter(',')
      ->check(CLI::IsMember(kKernelTokens))
      ->capture_default_str();
  sub->add_option("--functions,--function", a.functions, "test functions; the first is swept")
      ->delimiter(',')
      ->check(CLI::IsMember(kFunctionTokens))
      ->capture_default_str();
  sub->add_option("--methods,--method", a.methods, "tuning methods")
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodTokens))
      ->capture_default_str();
  sub->add_option("--xis,--xi", a.xis, "EI offsets for the interpolation tables")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--fractions,--centers", a.fractions, "center fractions for the sweeps")
      ->delimiter(',')
      ->check(kFraction)
      ->capture_default_str();
  sub->add_option("--sweep-xi", a.sweep_xi, "EI offset for the sweeps")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--test-size", a.test_size, "random evaluation points")
      ->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  sub->add_option("--seed", a.seed)->capture_default_str();
  sub->add_option("--jobs", a.jobs, "cells run concurrently")->check(CLI::Range(1, 1024))->capture_default_str();
  sub->add_option("--out", a.out, "output directory")->capture_default_str();
  sub->add_option("--eps-max", a.eps_max)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--grid", a.grid)->check(CLI::Range(2, 1000000))->capture_default_str();
  sub->add_option("--start", a.start)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--nstart", a.nstart)->check(CLI::Range(1, 100000))->capture_default_str();
  sub->add_option("--niter", a.niter)->capture_default_str();
  sub->add_flag("--timing", a.timing,
                "add a time_s column to the CSVs (they are then no longer reproducible)");
  sub->add_flag("--no-sweeps", a.no_sweeps, "skip the center sweeps");
  sub->add_flag("--no-interpolation", a.no_interpolation, "skip the interpolation tables");
}

BenchConfig to_config(const BenchArgs& a) {
  BenchConfig c;
  c.point_kinds = parse_all<PointKind>(a.points, parse_point_kind);
  c.sizes = a.sizes;
  c.kernels = parse_all<KernelFamily>(a.kernels, parse_kernel_family);
  c.functions = parse_all<TestFunction>(a.functions, parse_test_function);
  c.methods = parse_all<Method>(a.methods, parse_method);
  c.xis = a.xis;
  c.fractions = a.fractions;
  c.test_size = a.test_size;
  c.seed = a.seed;
  c.eps_max = a.eps_max;
  c.grid_size = a.grid;
  c.start = a.start;
  c.nstart = a.nstart;
  c.niter = a.niter;
  c.sweep_xi = a.sweep_xi;
  c.interpolation = !a.no_interpolation;
  c.sweeps = !a.no_sweeps;
  return c;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  f.close();
  if (!f) throw Error("cannot write '" + path.string() + "'");
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const BenchConfig config = to_config(a);
  if (config.start > config.eps_max) throw DomainError("--start must not exceed --eps-max");
  auto tables = plan_bench(config);
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw Error("cannot create '" + a.out + "': " + ec.message());

  std::size_t total = 0;
  for (const auto& t : tables) total += t.rows.size();
  std::size_t done = 0;
  const auto progress = [&](const BenchRow& r) {
    ++done;
    err << '[' << done << '/' << total << "] " << to_string(r.function) << ' '
        << to_string(r.points) << ' ' << to_string(r.kernel) << " n=" << r.n << ' '
        << to_string(r.method);
    if (r.xi) err << " xi=" << format_double(*r.xi);
    if (r.centers_pct) err << " centers=" << format_double(*r.centers_pct) << '%';
    err << " mae=" << format_double(r.mae) << '\n';
  };

  std::exception_ptr failure;
  try {
    run_bench(config, tables, a.jobs, progress);
  } catch (...) {
    failure = std::current_exception();  // flush what finished, then report
  }
  for (const auto& t : tables) {
    const fs::path path = fs::path(a.out) / (t.name + ".csv");
    write_file(path, to_csv(t, a.timing));
    out << path.string() << '\n';
  }
  const fs::path md = fs::path(a.out) / "bench.md";
  write_file(md, to_markdown(tables));
  out << md.string() << '\n';
  if (failure) std::rethrow_exception(failure);
  return kExitOk;
}

// ---- real -----------------------------------------------------------------

struct RealArgs {
  std::string csv;
  bool header = false;
  std::vector<std::size_t> sizes{1000, 500};
  std::vector<std::string> kernels{"m2", "w2"};
  std::vector<std::string> methods{"loocv", "bo"};
  double xi = 0.01;
  double eps_max = 20.0;
  std::size_t grid = 500;
  double start = 10.0;
  std::size_t nstart = 5;
  std::size_t niter = 25;
  std::uint64_t seed = 0;
};

void add_real(CLI::App& app, RealArgs& a) {
  auto* sub = app.add_subcommand("real", "Tune on measured x,y,value data (e.g. elevations)");
  sub->add_option("csv", a.csv, "CSV file with rows x,y,value")->required()->check(CLI::ExistingFile);
  sub->add_flag("--header", a.header, "skip the first line");
  sub->add_option("--sizes", a.sizes, "training and test sizes")
      ->delimiter(',')
      ->expected(2)
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24))
      ->capture_default_str();
  sub->add_option("--kernels,--kernel", a.kernels, "m2 | w2")
      ->delimiter(',')
      ->check(kNotGaussian & CLI::IsMember(kKernelTokens))
      ->capture_default_str();
  sub->add_option("--methods,--method", a.methods)
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodTokens))
      ->capture_default_str();
  sub->add_option("--xi", a.xi)->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--eps-max", a.eps_max)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--grid", a.grid)->check(CLI::Range(2, 1000000))->capture_default_str();
  sub->add_option("--start", a.start)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--nstart", a.nstart)->check(CLI::Range(1, 100000))->capture_default_str();
  sub->add_option("--niter", a.niter)->capture_default_str();
  sub->add_option("--seed", a.seed)->capture_default_str();
}

int cmd_real(const RealArgs& a, std::ostream& out, std::ostream& err) {
  const DataSet all = load_csv(a.csv, 2, {.header = a.header});
  const std::size_t n_train = a.sizes[0];
  const std::size_t n_test = a.sizes[1];
  if (all.size() < n_train + n_test) {
    throw DomainError("real: '" + a.csv + "' has " + std::to_string(all.size()) +
                      " rows, need " + std::to_string(n_train + n_test) +
                      " (training + test); lower them with --sizes");
  }
  std::vector<std::size_t> idx(all.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(mix_seed(a.seed, kRealSubsampleStream));
  rng.shuffle(std::span<std::size_t>(idx));
  const std::vector<std::size_t> train_idx(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  const std::vector<std::size_t> test_idx(idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                                          idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_test));

  out << "kernel,method,xi,time_s,mae,rmae,epsilon_star\n";
  for (const auto& ktok : a.kernels) {
    for (const auto& mtok : a.methods) {
      TuneRequest req;
      req.method = parse_method(mtok);
      req.family = parse_kernel_family(ktok);
      req.data = all.select(train_idx);
      req.test = all.select(test_idx);
      req.eps_max = a.eps_max;
      req.grid_size = a.grid;
      req.start = std::min(a.start, a.eps_max);
      req.bo.nstart = a.nstart;
      req.bo.niter = a.niter;
      req.bo.xi = a.xi;
      req.seed = a.seed;
      req.report_rmae = true;
      err << "real: " << ktok << ' ' << mtok << " on " << n_train << '/' << n_test << " points\n";
      const TuneReport rep = run_pipeline(req);
      out << ktok << ',' << mtok << ',' << (req.method == Method::Bo ? format_double(a.xi) : "")
          << ',' << format_double(rep.elapsed) << ',' << format_double(rep.mae_test) << ','
          << format_double(rep.rmae_test.value_or(NAN)) << ',' << format_double(rep.epsilon_star)
          << '\n';
    }
  }
  return kExitOk;
}

// ---- gen-data -------------------------------------------------------------

struct GenArgs {
  std::string function = "f1";
  std::string points = "halton";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  bool header = false;
  std::string out;
};

void add_gen(CLI::App& app, GenArgs& a) {
  auto* sub = app.add_subcommand("gen-data", "Write a sampled test function as CSV");
  sub->add_option("--function", a.function)->check(CLI::IsMember(kFunctionTokens))->capture_default_str();
  sub->add_option("--points", a.points)->check(CLI::IsMember(kPointTokens))->capture_default_str();
  sub->add_option("--n", a.n)->check(CLI::Range(std::size_t{1}, std::size_t{1} << 26))->capture_default_str();
  sub->add_option("--seed", a.seed)->capture_default_str();
  sub->add_flag("--header", a.header, "write an x1,x2,f header line");
  sub->add_option("--out", a.out, "output file (default: standard output)");
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const DataSet ds = bench_data(parse_test_function(a.function), parse_point_kind(a.points), a.n, a.seed);
  std::ostringstream os;
  if (a.header) os << "x1,x2,f\n";
  char buf[96];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto p = ds.locations().point(i);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p(0), p(1),
                  ds.values()(static_cast<Eigen::Index>(i)));
    os << buf;
  }
  if (a.out.empty()) {
    out << os.str();
  } else {
    write_file(a.out, os.str());
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-parameter tuning for radial basis function fits", "rbftune"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rbftune 0.1.0");
  TuneArgs tune;
  BenchArgs bench;
  RealArgs real;
  GenArgs gen;
  add_tune(app, tune);
  add_bench(app, bench);
  add_real(app, real);
  add_gen(app, gen);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("tune")) return cmd_tune(tune, out);
    if (app.got_subcommand("bench")) return cmd_bench(bench, out, err);
    if (app.got_subcommand("real")) return cmd_real(real, out, err);
    if (app.got_subcommand("gen-data")) return cmd_gen(gen, out);
  } catch (const std::exception& e) {
    err << "rbftune: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace rbftune::cli
