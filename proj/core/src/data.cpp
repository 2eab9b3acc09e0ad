#include "rbftune/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "rbftune/errors.hpp"
#include "rbftune/random.hpp"

namespace rbftune {

PointSet::PointSet(Eigen::MatrixXd coords) : coords_(std::move(coords)) {
  if (coords_.rows() > 0 && coords_.cols() == 0) {
    throw DomainError("PointSet: points must have at least one coordinate");
  }
  if (!coords_.allFinite()) {
    throw DomainError("PointSet: non-finite coordinate");
  }
}

PointSet PointSet::select(const std::vector<std::size_t>& indices) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), coords_.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= size()) {
      throw DomainError("PointSet::select: index out of range");
    }
    out.row(static_cast<Eigen::Index>(i)) = coords_.row(static_cast<Eigen::Index>(indices[i]));
  }
  return PointSet(std::move(out));
}

DataSet::DataSet(PointSet locations, Eigen::VectorXd values)
    : locations_(std::move(locations)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != locations_.size()) {
    throw DomainError("DataSet: " + std::to_string(values_.size()) + " values for " +
                      std::to_string(locations_.size()) + " locations");
  }
  if (!values_.allFinite()) {
    throw DomainError("DataSet: non-finite data value");
  }
}

DataSet DataSet::select(const std::vector<std::size_t>& indices) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= size()) {
      throw DomainError("DataSet::select: index out of range");
    }
    v(static_cast<Eigen::Index>(i)) = values_(static_cast<Eigen::Index>(indices[i]));
  }
  return DataSet(locations_.select(indices), std::move(v));
}

std::string_view to_string(TestFunction f) {
  return f == TestFunction::F1 ? "f1" : "f2";
}

TestFunction parse_test_function(std::string_view token) {
  if (token == "f1") return TestFunction::F1;
  if (token == "f2") return TestFunction::F2;
  throw DomainError("unknown test function '" + std::string(token) + "' (expected f1|f2)");
}

std::string_view to_string(PointKind k) {
  return k == PointKind::Random ? "random" : "halton";
}

PointKind parse_point_kind(std::string_view token) {
  if (token == "random") return PointKind::Random;
  if (token == "halton") return PointKind::Halton;
  throw DomainError("unknown point kind '" + std::string(token) + "' (expected random|halton)");
}

namespace {

std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> primes;
  for (unsigned candidate = 2; primes.size() < count; ++candidate) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

bool row_less(const Eigen::MatrixXd& m, std::size_t a, std::size_t b) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double x = m(static_cast<Eigen::Index>(a), c);
    const double y = m(static_cast<Eigen::Index>(b), c);
    if (x < y) return true;
    if (y < x) return false;
  }
  return false;
}

bool rows_equal(const Eigen::MatrixXd& m, std::size_t a, const Eigen::MatrixXd& n, std::size_t b) {
  return m.row(static_cast<Eigen::Index>(a)) == n.row(static_cast<Eigen::Index>(b));
}

int compare_row(const Eigen::MatrixXd& m, std::size_t a, const Eigen::MatrixXd& n, std::size_t b) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double x = m(static_cast<Eigen::Index>(a), c);
    const double y = n(static_cast<Eigen::Index>(b), c);
    if (x < y) return -1;
    if (y < x) return 1;
  }
  return 0;
}

std::vector<std::size_t> lexicographic_order(const Eigen::MatrixXd& m) {
  std::vector<std::size_t> order(static_cast<std::size_t>(m.rows()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return row_less(m, a, b); });
  return order;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

PointSet halton_points(std::size_t n, std::size_t dim) {
  if (n == 0 || dim == 0) {
    throw DomainError("halton_points: n and dim must be positive");
  }
  const auto bases = first_primes(dim);
  Eigen::MatrixXd coords(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
          radical_inverse(i + 1, bases[d]);
    }
  }
  return PointSet(std::move(coords));
}

PointSet random_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n == 0 || dim == 0) {
    throw DomainError("random_points: n and dim must be positive");
  }
  Rng rng(seed);
  Eigen::MatrixXd coords(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    for (Eigen::Index d = 0; d < coords.cols(); ++d) {
      coords(i, d) = rng.uniform01();
    }
  }
  return PointSet(std::move(coords));
}

double eval_test_function(TestFunction which, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  if (x.size() != 2) {
    throw DomainError("test functions are defined on [0,1]^2; got a point of dimension " +
                      std::to_string(x.size()));
  }
  const double x1 = x(0);
  const double x2 = x(1);
  if (!(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0)) {
    throw DomainError("test function evaluated outside [0,1]^2");
  }
  if (which == TestFunction::F1) {
    const double a = 9.0 * x1;
    const double b = 9.0 * x2;
    return 0.75 * std::exp(-(a - 2) * (a - 2) / 4.0 - (b - 2) * (b - 2) / 4.0) +
           0.75 * std::exp(-(a + 1) * (a + 1) / 49.0 - (b + 1) / 10.0) +
           0.5 * std::exp(-(a - 7) * (a - 7) / 4.0 - (b - 3) * (b - 3) / 4.0) -
           0.2 * std::exp(-(a - 4) * (a - 4) - (b - 7) * (b - 7));
  }
  const double radicand = 64.0 - 81.0 * ((x1 - 0.5) * (x1 - 0.5) + (x2 - 0.5) * (x2 - 0.5));
  if (radicand < 0.0) {
    throw DomainError("f2: negative radicand");
  }
  return std::sqrt(radicand) / 9.0 - 0.5;
}

DataSet sample_function(TestFunction which, PointSet locations) {
  Eigen::VectorXd values(static_cast<Eigen::Index>(locations.size()));
  for (std::size_t i = 0; i < locations.size(); ++i) {
    values(static_cast<Eigen::Index>(i)) = eval_test_function(which, locations.point(i));
  }
  return DataSet(std::move(locations), std::move(values));
}

std::size_t train_size(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

std::vector<std::size_t> match_centers(const PointSet& locations, const PointSet& centers) {
  if (centers.empty()) {
    return {};
  }
  if (locations.dim() != centers.dim()) {
    throw DomainError("centers and locations have different dimensions");
  }
  const auto& L = locations.coords();
  const auto& C = centers.coords();
  const auto order = lexicographic_order(L);
  std::vector<std::size_t> result(centers.size());
  for (std::size_t c = 0; c < centers.size(); ++c) {
    auto it = std::lower_bound(order.begin(), order.end(), c, [&](std::size_t loc, std::size_t ctr) {
      return compare_row(L, loc, C, ctr) < 0;
    });
    if (it == order.end() || !rows_equal(L, *it, C, c)) {
      throw ConfigurationError("center " + std::to_string(c) +
                               " is not one of the data locations");
    }
    result[c] = *it;
  }
  return result;
}

std::vector<std::size_t> shared_locations(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  if (a.dim() != b.dim()) {
    throw DomainError("shared_locations: dimension mismatch");
  }
  const auto& A = a.coords();
  const auto& B = b.coords();
  const auto order = lexicographic_order(A);
  std::vector<std::size_t> shared;
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto it = std::lower_bound(order.begin(), order.end(), i, [&](std::size_t x, std::size_t y) {
      return compare_row(A, x, B, y) < 0;
    });
    if (it != order.end() && rows_equal(A, *it, B, i)) shared.push_back(i);
  }
  return shared;
}

std::vector<std::vector<std::size_t>> find_duplicates(const PointSet& points) {
  const auto& P = points.coords();
  const auto order = lexicographic_order(P);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && rows_equal(P, order[i], P, order[j])) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> group(order.begin() + static_cast<std::ptrdiff_t>(i),
                                     order.begin() + static_cast<std::ptrdiff_t>(j));
      std::sort(group.begin(), group.end());
      groups.push_back(std::move(group));
    }
    i = j;
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

Split split(const DataSet& ds, const PointSet& centers, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw DomainError("split: train fraction must lie in (0,1)");
  }
  const std::size_t n = ds.size();
  const std::size_t n_train = train_size(n, spec.train_fraction);
  if (n_train == 0 || n_train == n) {
    throw DomainError("split: " + std::to_string(n) +
                      " points leave an empty training or validation part");
  }
  if (centers.empty()) {
    throw ConfigurationError("split: no centers");
  }

  const auto center_loc = match_centers(ds.locations(), centers);
  std::vector<char> is_center(n, 0);
  for (std::size_t idx : center_loc) {
    if (is_center[idx]) {
      throw ConfigurationError("split: two centers share a location");
    }
    is_center[idx] = 1;
  }
  std::vector<std::size_t> center_part(center_loc);
  std::vector<std::size_t> other_part;
  other_part.reserve(n - center_part.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_center[i]) other_part.push_back(i);
  }

  Rng rng(spec.seed);
  rng.shuffle(std::span<std::size_t>(center_part));
  rng.shuffle(std::span<std::size_t>(other_part));

  const std::size_t m_train = train_size(center_part.size(), spec.train_fraction);
  const std::size_t other_train = n_train - m_train;

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  train_idx.reserve(n_train);
  val_idx.reserve(n - n_train);
  train_idx.insert(train_idx.end(), center_part.begin(),
                   center_part.begin() + static_cast<std::ptrdiff_t>(m_train));
  train_idx.insert(train_idx.end(), other_part.begin(),
                   other_part.begin() + static_cast<std::ptrdiff_t>(other_train));
  val_idx.insert(val_idx.end(), center_part.begin() + static_cast<std::ptrdiff_t>(m_train),
                 center_part.end());
  val_idx.insert(val_idx.end(), other_part.begin() + static_cast<std::ptrdiff_t>(other_train),
                 other_part.end());

  std::vector<std::size_t> train_center_idx(train_idx.begin(),
                                            train_idx.begin() + static_cast<std::ptrdiff_t>(m_train));
  return Split{ds.select(train_idx), ds.select(val_idx),
               ds.locations().select(train_center_idx)};
}

DataSet parse_csv(std::string_view text, std::size_t dim, const CsvOptions& opts) {
  if (dim == 0) {
    throw DomainError("parse_csv: dim must be positive");
  }
  std::vector<double> coords;
  std::vector<double> values;
  std::vector<std::size_t> row_lines;

  std::size_t line_no = 0;
  bool header_pending = opts.header;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    line = trim(line);
    if (line.empty()) continue;

    std::size_t fields = 0;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view field = trim(line.substr(0, comma));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() ||
          !std::isfinite(v)) {
        throw ParseError(line_no, "field " + std::to_string(fields + 1) + " ('" +
                                      std::string(field) + "') is not a finite number");
      }
      if (fields < dim) {
        coords.push_back(v);
      } else {
        values.push_back(v);
      }
      ++fields;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (fields != dim + 1) {
      throw ParseError(line_no, "expected " + std::to_string(dim + 1) + " fields, found " +
                                    std::to_string(fields));
    }
    row_lines.push_back(line_no);
  }
  if (values.empty()) {
    throw ParseError(line_no, "no data rows");
  }

  const auto n = static_cast<Eigen::Index>(values.size());
  Eigen::MatrixXd X(n, static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index d = 0; d < X.cols(); ++d) {
      X(i, d) = coords[static_cast<std::size_t>(i) * dim + static_cast<std::size_t>(d)];
    }
  }
  DataSet ds(PointSet(std::move(X)), Eigen::Map<Eigen::VectorXd>(values.data(), n));

  if (!opts.allow_duplicates) {
    auto groups = find_duplicates(ds.locations());
    if (!groups.empty()) {
      std::ostringstream msg;
      msg << "duplicate locations (interpolation needs distinct nodes) at lines";
      for (auto& g : groups) {
        msg << ' ';
        for (std::size_t k = 0; k < g.size(); ++k) {
          g[k] = row_lines[g[k]];
          msg << (k ? "," : "") << g[k];
        }
        msg << ';';
      }
      throw DuplicateLocationError(std::move(groups), msg.str());
    }
  }
  return ds;
}

DataSet load_csv(const std::filesystem::path& path, std::size_t dim, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), dim, opts);
}

}  // namespace rbftune
