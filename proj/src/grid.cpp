#include "gmt/grid.hpp"

#include <cmath>
#include <string>

#include "gmt/errors.hpp"

namespace gmt {

std::size_t CellKeyHash::operator()(const CellKey& k) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (std::int64_t v : k) {
    h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

std::int64_t cell_index(double x, double cell) {
  const double q = x / cell;
  const double r = std::nearbyint(q);
  if (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(q));
}

bool Box::contains(std::span<const double> x) const {
  for (int a = 0; a < dim; ++a)
    if (x[a] < lower[a] || x[a] > upper[a]) return false;
  return true;
}

Box Box::bounding(const PointCloud& cloud) {
  Box b;
  b.dim = cloud.dim();
  for (int a = 0; a < b.dim; ++a) {
    b.lower[a] = cloud.empty() ? 0.0 : cloud[0][a];
    b.upper[a] = b.lower[a];
  }
  for (const Point& p : cloud)
    for (int a = 0; a < b.dim; ++a) {
      b.lower[a] = std::min(b.lower[a], p[a]);
      b.upper[a] = std::max(b.upper[a], p[a]);
    }
  return b;
}

GridCounter::GridCounter(int dim, double cell, Box box) : dim_(dim), cell_(cell), box_(box) {
  if (dim < 1 || dim > kMaxGridDim) throw InvalidArgument("grid dimension out of range");
  if (!(cell > 0.0) || !std::isfinite(cell)) throw InvalidArgument("grid cell size must be positive");
  if (box.dim != dim) throw DimensionMismatch("grid box dimension differs from grid dimension");
}

CellKey GridCounter::key_of(std::span<const double> x) const {
  CellKey key{};
  for (int a = 0; a < dim_; ++a) key[a] = cell_index(x[a], cell_);
  return key;
}

bool GridCounter::add(std::span<const double> x, std::uint64_t n) {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("grid_count: point dimension differs");
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument("grid_count: non-finite coordinate");
  if (!box_.contains(x)) return false;
  cells_[key_of(x)] += n;
  total_ += n;
  return true;
}

std::uint64_t GridCounter::count(const CellKey& key) const {
  auto it = cells_.find(key);
  return it == cells_.end() ? 0 : it->second;
}

GridCounter grid_count(std::span<const Point> points, int dim, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("grid_count: delta must be > 0");
  Box box;
  box.dim = dim;
  bool first = true;
  for (const Point& p : points) {
    if (p.dim != dim) throw DimensionMismatch("grid_count: point dimension differs");
    if (!p.finite()) throw InvalidArgument("grid_count: non-finite coordinate");
    for (int a = 0; a < dim; ++a) {
      box.lower[a] = first ? p[a] : std::min(box.lower[a], p[a]);
      box.upper[a] = first ? p[a] : std::max(box.upper[a], p[a]);
    }
    first = false;
  }
  GridCounter counter(dim, delta, box);
  for (const Point& p : points) counter.add(p);
  return counter;
}

GridCounter grid_count(const PointCloud& points, double delta) {
  return grid_count(std::span<const Point>(points.points()), points.dim(), delta);
}

}  // namespace gmt
