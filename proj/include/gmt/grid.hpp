#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>

#include "gmt/point.hpp"

namespace gmt {

/// Grids run in up to this many dimensions (configuration vectors for k = 4
/// points live in R^6).
inline constexpr int kMaxGridDim = 6;

using CellKey = std::array<std::int64_t, kMaxGridDim>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept;
};

/// Index of the half-open cell [k*cell, (k+1)*cell) containing x. Values
/// within a relative 1e-9 of a cell boundary snap onto that boundary so that
/// exactly representable lattice points land in their own cell.
std::int64_t cell_index(double x, double cell);

struct Box {
  int dim = 0;
  std::array<double, kMaxGridDim> lower{};
  std::array<double, kMaxGridDim> upper{};

  bool contains(std::span<const double> x) const;
  static Box bounding(const PointCloud& cloud);
};

/// Sparse occupancy/count structure over half-open cells of side `cell`.
class GridCounter {
 public:
  GridCounter(int dim, double cell, Box box);

  /// Adds `n` to the cell containing x. Returns false (and counts nothing)
  /// when x lies outside the bounding box; throws on non-finite input.
  bool add(std::span<const double> x, std::uint64_t n = 1);
  bool add(const Point& p, std::uint64_t n = 1) { return add(p.coords(), n); }

  int dim() const { return dim_; }
  double cell() const { return cell_; }
  const Box& box() const { return box_; }
  std::size_t occupied() const { return cells_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint64_t count(const CellKey& key) const;
  CellKey key_of(std::span<const double> x) const;
  const std::unordered_map<CellKey, std::uint64_t, CellKeyHash>& cells() const { return cells_; }

 private:
  int dim_;
  double cell_;
  Box box_;
  std::uint64_t total_ = 0;
  std::unordered_map<CellKey, std::uint64_t, CellKeyHash> cells_;
};

/// Counts the points of a cloud into cells of side delta over the cloud's
/// bounding box.
GridCounter grid_count(const PointCloud& points, double delta);
GridCounter grid_count(std::span<const Point> points, int dim, double delta);

}  // namespace gmt
