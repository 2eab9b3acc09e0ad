#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rbftune {

/// Ordered set of d-dimensional locations, stored one point per row.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(Eigen::MatrixXd coords);

  std::size_t size() const noexcept { return static_cast<std::size_t>(coords_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(coords_.cols()); }
  bool empty() const noexcept { return coords_.rows() == 0; }

  auto point(std::size_t i) const { return coords_.row(static_cast<Eigen::Index>(i)); }
  const Eigen::MatrixXd& coords() const noexcept { return coords_; }

  /// Rows `indices` of this set, in the given order.
  PointSet select(const std::vector<std::size_t>& indices) const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.coords_.rows() == b.coords_.rows() && a.coords_.cols() == b.coords_.cols() &&
           a.coords_ == b.coords_;
  }

 private:
  Eigen::MatrixXd coords_;
};

/// Locations X paired with finite values F.
class DataSet {
 public:
  DataSet() = default;
  DataSet(PointSet locations, Eigen::VectorXd values);

  std::size_t size() const noexcept { return locations_.size(); }
  std::size_t dim() const noexcept { return locations_.dim(); }
  const PointSet& locations() const noexcept { return locations_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  DataSet select(const std::vector<std::size_t>& indices) const;

 private:
  PointSet locations_;
  Eigen::VectorXd values_;
};

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

struct Split {
  DataSet train;
  DataSet val;
  PointSet train_centers;
};

enum class TestFunction { F1, F2 };

std::string_view to_string(TestFunction f);
/// Accepts `f1` / `f2`; throws DomainError otherwise.
TestFunction parse_test_function(std::string_view token);

enum class PointKind { Random, Halton };

std::string_view to_string(PointKind k);
PointKind parse_point_kind(std::string_view token);

/// First n points of the Halton sequence in the first `dim` prime bases,
/// starting at index 1.
PointSet halton_points(std::size_t n, std::size_t dim);

/// n i.i.d. uniform points in [0,1]^dim.
PointSet random_points(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Evaluate one of the two benchmark functions at x in [0,1]^2.
double eval_test_function(TestFunction which, const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Sample `which` at every location.
DataSet sample_function(TestFunction which, PointSet locations);

/// Train size floor(fraction * n), guarded against representation error.
std::size_t train_size(std::size_t n, double fraction);

/// Seeded shuffled train/validation partition. Centers are partitioned with
/// their locations: a center lands in `train_centers` iff its location is in
/// the training part. Centers and non-center locations are shuffled
/// separately so both |X_train| and |X~_train| follow the floor law.
Split split(const DataSet& ds, const PointSet& centers, const SplitSpec& spec);

/// For every center, the index of the (first) equal location in `locations`.
/// Throws ConfigurationError if a center is not among the locations.
std::vector<std::size_t> match_centers(const PointSet& locations, const PointSet& centers);

/// Indices into `b` of points that also occur in `a`.
std::vector<std::size_t> shared_locations(const PointSet& a, const PointSet& b);

/// Groups of 0-based indices that share identical coordinates. Groups are
/// ordered by their first index.
std::vector<std::vector<std::size_t>> find_duplicates(const PointSet& points);

struct CsvOptions {
  bool header = false;
  // Duplicate locations are fine for pure evaluation sets.
  bool allow_duplicates = false;
};

/// Read `x1,...,xd,f` records. Accepts LF or CRLF line endings; blank lines
/// are skipped.
DataSet load_csv(const std::filesystem::path& path, std::size_t dim, const CsvOptions& opts = {});
DataSet parse_csv(std::string_view text, std::size_t dim, const CsvOptions& opts = {});

}  // namespace rbftune
