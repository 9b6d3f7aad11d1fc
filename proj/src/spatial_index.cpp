#include "gmt/spatial_index.hpp"

#include <cmath>

#include "gmt/errors.hpp"

namespace gmt {

SpatialIndex::SpatialIndex(int dim, double cell) : dim_(dim), cell_(cell) {
  if (dim < 1 || dim > kMaxGridDim) throw InvalidArgument("spatial index dimension out of range");
  if (!(cell > 0.0)) throw InvalidArgument("spatial index cell must be positive");
}

std::int64_t SpatialIndex::floor_index(double x) const {
  return static_cast<std::int64_t>(std::floor(x / cell_));
}

void SpatialIndex::insert(std::span<const double> x, std::uint32_t id) {
  CellKey key{};
  for (int a = 0; a < dim_; ++a) key[a] = floor_index(x[a]);
  cells_[key].push_back(id);
}

MergedAtoms merge_atoms(int dim, std::span<const double> coords, std::span<const double> weights,
                        double tol) {
  const std::size_t n = weights.size();
  if (coords.size() != n * static_cast<std::size_t>(dim)) throw InvalidArgument("merge_atoms: size mismatch");
  MergedAtoms out;
  out.dim = dim;
  // A cell of 1e6 * tol keeps integer cell keys small for coordinates of
  // ordinary magnitude while a query still touches at most 3^dim cells.
  SpatialIndex index(dim, std::max(tol, 1e-300) * 1e6);
  const double tol2 = tol * tol;
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> x = coords.subspan(i * dim, dim);
    long found = -1;
    index.for_each_candidate(x, tol, [&](std::uint32_t id) {
      if (found >= 0) return;
      double d2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double d = out.coords[id * dim + a] - x[a];
        d2 += d * d;
      }
      if (d2 <= tol2) found = id;
    });
    if (found >= 0) {
      out.weights[found] += weights[i];
      out.multiplicity[found] += 1;
      continue;
    }
    const auto id = static_cast<std::uint32_t>(out.weights.size());
    index.insert(x, id);
    out.coords.insert(out.coords.end(), x.begin(), x.end());
    out.weights.push_back(weights[i]);
    out.multiplicity.push_back(1);
  }
  return out;
}

}  // namespace gmt
