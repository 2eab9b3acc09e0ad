#include "cli/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "rbftune/errors.hpp"
#include "rbftune/random.hpp"

namespace rbftune::cli {

namespace {

constexpr std::uint64_t kTestStream = 0x7e57;

std::string join_name(std::initializer_list<std::string_view> parts) {
  std::string s;
  for (auto p : parts) {
    if (!s.empty()) s += '_';
    s += p;
  }
  return s;
}

std::uint64_t data_seed(std::uint64_t seed, TestFunction f, PointKind kind, std::size_t n) {
  std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(f) + 1);
  s = mix_seed(s, static_cast<std::uint64_t>(kind) + 1);
  return mix_seed(s, n);
}

bool contains(const std::vector<KernelFamily>& v, KernelFamily k) {
  return std::find(v.begin(), v.end(), k) != v.end();
}

void add_method_rows(const BenchConfig& c, BenchRow base, std::vector<BenchRow>& rows) {
  for (Method m : c.methods) {
    base.method = m;
    if (m == Method::Bo) {
      for (double xi : c.xis) {
        base.xi = xi;
        rows.push_back(base);
      }
      base.xi.reset();
    } else {
      rows.push_back(base);
    }
  }
}

BenchRow run_cell(const BenchConfig& c, BenchRow row) {
  const DataSet data = bench_data(row.function, row.points, row.n, c.seed);
  const std::uint64_t seed = data_seed(c.seed, row.function, row.points, row.n);

  TuneRequest req;
  req.method = row.method;
  req.family = row.kernel;
  req.data = data;
  req.test = bench_test_set(row.function, c.test_size, c.seed);
  req.eps_max = c.eps_max;
  req.grid_size = c.grid_size;
  req.start = c.start;
  req.bo.nstart = c.nstart;
  req.bo.niter = c.niter;
  req.seed = seed;
  if (row.xi) req.bo.xi = *row.xi;
  if (row.centers_pct) {
    req.centers = select_centers(data.locations(), *row.centers_pct / 100.0, seed);
  }
  const TuneReport rep = run_pipeline(req);
  row.mae = rep.mae_test;
  row.epsilon_star = rep.epsilon_star;
  row.time_s = rep.elapsed;
  return row;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return out;
}

double parse_number(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "bad number '" + std::string(s) + "'");
  }
  return v;
}

std::optional<double> parse_optional(std::string_view s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_number(s, line);
}

const char* const kColumns[] = {"function", "points", "kernel", "n",           "method",
                                "xi",       "centers_pct", "mae", "epsilon_star"};

}  // namespace

void BenchConfig::validate() const {
  if (point_kinds.empty() || sizes.empty() || kernels.empty() || functions.empty() ||
      methods.empty() || xis.empty() || fractions.empty()) {
    throw DomainError("bench: every list in the configuration must be nonempty");
  }
  for (std::size_t n : sizes) {
    if (n < 10) throw DomainError("bench: sizes must be >= 10");
  }
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("bench: fractions must lie in (0, 1]");
  }
  for (double xi : xis) {
    if (!(xi >= 0.0)) throw DomainError("bench: xi must be >= 0");
  }
  if (test_size < 1) throw DomainError("bench: test size must be positive");
}

DataSet bench_data(TestFunction f, PointKind kind, std::size_t n, std::uint64_t seed) {
  PointSet pts = kind == PointKind::Halton ? halton_points(n, 2)
                                           : random_points(n, 2, data_seed(seed, f, kind, n));
  return sample_function(f, std::move(pts));
}

DataSet bench_test_set(TestFunction f, std::size_t size, std::uint64_t seed) {
  return sample_function(f, random_points(size, 2, mix_seed(seed, kTestStream)));
}

std::vector<BenchTable> plan_bench(const BenchConfig& c) {
  c.validate();
  std::vector<BenchTable> tables;

  if (c.interpolation) {
    std::vector<KernelFamily> pair;
    for (auto k : {KernelFamily::Matern2, KernelFamily::Gaussian}) {
      if (contains(c.kernels, k)) pair.push_back(k);
    }
    for (TestFunction f : c.functions) {
      for (PointKind kind : c.point_kinds) {
        if (pair.empty()) break;
        BenchTable t;
        t.name = join_name({"interp", to_string(f), to_string(kind), "m2-ga"});
        t.title = "Interpolation, " + std::string(to_string(f)) + ", " +
                  std::string(to_string(kind)) + " points, M2 and GA";
        for (std::size_t n : c.sizes) {
          for (KernelFamily k : pair) {
            BenchRow base;
            base.function = f;
            base.points = kind;
            base.kernel = k;
            base.n = n;
            add_method_rows(c, base, t.rows);
          }
        }
        tables.push_back(std::move(t));
      }
    }
    if (contains(c.kernels, KernelFamily::Wendland2)) {
      for (PointKind kind : c.point_kinds) {
        BenchTable t;
        t.name = join_name({"interp", to_string(kind), "w2"});
        t.title = "Interpolation, " + std::string(to_string(kind)) + " points, W2";
        for (TestFunction f : c.functions) {
          for (std::size_t n : c.sizes) {
            BenchRow base;
            base.function = f;
            base.points = kind;
            base.kernel = KernelFamily::Wendland2;
            base.n = n;
            add_method_rows(c, base, t.rows);
          }
        }
        tables.push_back(std::move(t));
      }
    }
  }

  if (c.sweeps) {
    const TestFunction f = c.functions.front();
    for (KernelFamily k : c.kernels) {
      BenchTable t;
      t.name = join_name({"sweep", to_string(f), to_string(k)});
      t.title = "Least-squares center sweep, " + std::string(to_string(f)) + ", " +
                std::string(to_string(k)) + ", BO xi=" + format_double(c.sweep_xi);
      for (PointKind kind : c.point_kinds) {
        for (std::size_t n : c.sizes) {
          for (double fraction : c.fractions) {
            BenchRow row;
            row.function = f;
            row.points = kind;
            row.kernel = k;
            row.n = n;
            row.method = Method::Bo;
            row.xi = c.sweep_xi;
            row.centers_pct = std::round(fraction * 1e8) / 1e6;  // 0.07 -> 7, not 7.000000000000001
            t.rows.push_back(row);
          }
        }
      }
      tables.push_back(std::move(t));
    }
  }
  return tables;
}

void run_bench(const BenchConfig& c, std::vector<BenchTable>& tables, unsigned jobs,
               const std::function<void(const BenchRow&)>& on_row) {
  struct Cell {
    std::size_t table;
    std::size_t row;
  };
  std::vector<Cell> cells;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    for (std::size_t r = 0; r < tables[t].rows.size(); ++r) cells.push_back({t, r});
  }
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;

  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      BenchRow& slot = tables[cells[i].table].rows[cells[i].row];
      try {
        slot = run_cell(c, slot);
        if (on_row) {
          std::lock_guard lock(report_mutex);
          on_row(slot);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::exception_ptr first;
  for (std::size_t i = cells.size(); i-- > 0;) {
    if (errors[i]) {
      first = errors[i];
      auto& rows = tables[cells[i].table].rows;
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(cells[i].row));
    }
  }
  if (first) std::rethrow_exception(first);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const BenchTable& table, bool with_time) {
  std::ostringstream os;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) os << (i ? "," : "") << kColumns[i];
  if (with_time) os << ",time_s";
  os << '\n';
  for (const auto& r : table.rows) {
    os << to_string(r.function) << ',' << to_string(r.points) << ',' << to_string(r.kernel) << ','
       << r.n << ',' << to_string(r.method) << ',' << (r.xi ? format_double(*r.xi) : "") << ','
       << (r.centers_pct ? format_double(*r.centers_pct) : "") << ',' << format_double(r.mae)
       << ',' << format_double(r.epsilon_star);
    if (with_time) os << ',' << (r.time_s ? format_double(*r.time_s) : "");
    os << '\n';
  }
  return os.str();
}

std::vector<BenchRow> parse_bench_csv(std::string_view text) {
  std::vector<BenchRow> rows;
  std::size_t line_no = 0;
  bool have_header = false;
  bool with_time = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (!have_header) {
      const std::size_t base = std::size(kColumns);
      with_time = f.size() == base + 1 && f.back() == "time_s";
      bool ok = f.size() == base || with_time;
      for (std::size_t i = 0; ok && i < base; ++i) ok = f[i] == kColumns[i];
      if (!ok) throw ParseError(line_no, "unexpected bench CSV header");
      have_header = true;
      continue;
    }
    if (f.size() != std::size(kColumns) + (with_time ? 1 : 0)) {
      throw ParseError(line_no, "wrong number of fields");
    }
    try {
      BenchRow r;
      r.function = parse_test_function(f[0]);
      r.points = parse_point_kind(f[1]);
      r.kernel = parse_kernel_family(f[2]);
      std::size_t n = 0;
      const auto [p, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), n);
      if (ec != std::errc{} || p != f[3].data() + f[3].size()) {
        throw ParseError(line_no, "bad count '" + std::string(f[3]) + "'");
      }
      r.n = n;
      r.method = parse_method(f[4]);
      r.xi = parse_optional(f[5], line_no);
      r.centers_pct = parse_optional(f[6], line_no);
      r.mae = parse_number(f[7], line_no);
      r.epsilon_star = parse_number(f[8], line_no);
      if (with_time) r.time_s = parse_optional(f[9], line_no);
      rows.push_back(r);
    } catch (const DomainError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(line_no, "empty bench CSV");
  return rows;
}

std::string to_markdown(const std::vector<BenchTable>& tables) {
  std::ostringstream os;
  char buf[32];
  for (const auto& t : tables) {
    os << "## " << t.title << "\n\n";
    os << "| function | n | kernel | method | xi | centers (%) | time (s) | MAE | eps* |\n";
    os << "|---|---:|---|---|---:|---:|---:|---:|---:|\n";
    for (const auto& r : t.rows) {
      std::snprintf(buf, sizeof buf, "%.3f", r.time_s.value_or(NAN));
      os << "| " << to_string(r.function) << " | " << r.n << " | " << to_string(r.kernel) << " | "
         << to_string(r.method) << " | " << (r.xi ? format_double(*r.xi) : "") << " | "
         << (r.centers_pct ? format_double(*r.centers_pct) : "") << " | "
         << (r.time_s ? buf : "") << " | ";
      std::snprintf(buf, sizeof buf, "%.6e", r.mae);
      os << buf << " | ";
      std::snprintf(buf, sizeof buf, "%.6f", r.epsilon_star);
      os << buf << " |\n";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace rbftune::cli
