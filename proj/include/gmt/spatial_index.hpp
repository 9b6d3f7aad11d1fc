#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "gmt/grid.hpp"

namespace gmt {

/// Uniform hash grid over points stored in a flat coordinate array with a
/// fixed stride. Queries enumerate ids from every cell overlapping the
/// query box; exact distance tests are left to the caller.
class SpatialIndex {
 public:
  SpatialIndex(int dim, double cell);

  void insert(std::span<const double> x, std::uint32_t id);

  template <class F>
  void for_each_candidate(std::span<const double> q, double radius, F&& f) const {
    CellKey lo{}, hi{};
    for (int a = 0; a < dim_; ++a) {
      lo[a] = floor_index(q[a] - radius);
      hi[a] = floor_index(q[a] + radius);
    }
    CellKey cur = lo;
    while (true) {
      if (auto it = cells_.find(cur); it != cells_.end())
        for (std::uint32_t id : it->second) f(id);
      int a = 0;
      for (; a < dim_; ++a) {
        if (cur[a] < hi[a]) {
          ++cur[a];
          break;
        }
        cur[a] = lo[a];
      }
      if (a == dim_) break;
    }
  }

  int dim() const { return dim_; }
  double cell() const { return cell_; }

 private:
  std::int64_t floor_index(double x) const;

  int dim_;
  double cell_;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> cells_;
};

/// Result of merging coincident atoms of a weighted point set.
struct MergedAtoms {
  int dim = 0;
  std::vector<double> coords;           // stride dim
  std::vector<double> weights;
  std::vector<std::uint64_t> multiplicity;  // raw atoms folded into each
  std::size_t size() const { return weights.size(); }
  std::span<const double> at(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
};

/// Greedy merge in input order: an atom within Euclidean distance `tol` of
/// an existing representative is folded into it.
MergedAtoms merge_atoms(int dim, std::span<const double> coords, std::span<const double> weights,
                        double tol);

}  // namespace gmt
