#include "gmt/point.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "gmt/errors.hpp"
#include "gmt/spatial_index.hpp"

namespace gmt {

PointCloud::PointCloud(int dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
  if (dim < 1 || dim > 3) throw InvalidArgument("point cloud dimension must be 1, 2 or 3");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim != dim)
      throw DimensionMismatch("point " + std::to_string(i) + " has dimension " +
                              std::to_string(points_[i].dim) + ", cloud has " + std::to_string(dim));
    if (!points_[i].finite()) throw InvalidArgument("point " + std::to_string(i) + " is not finite");
  }
}

PointCloud PointCloud::with_separation(int dim, std::vector<Point> points, double separation) {
  PointCloud cloud(dim, std::move(points));
  cloud.separation_ = separation;
  return cloud;
}

double PointCloud::min_pairwise_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j) best = std::min(best, distance(points_[i], points_[j]));
  return best;
}

double PointCloud::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j) best = std::max(best, distance(points_[i], points_[j]));
  return best;
}

PointCloud delta_net(const PointCloud& cloud, double delta) {
  if (!(delta >= 0.0)) throw InvalidArgument("delta_net: delta must be >= 0");
  if (delta == 0.0) return PointCloud::with_separation(cloud.dim(), cloud.points(), 0.0);

  SpatialIndex index(cloud.dim(), delta);
  std::vector<Point> kept;
  const double d2 = delta * delta;
  for (const Point& p : cloud) {
    bool ok = true;
    index.for_each_candidate(p.coords(), delta, [&](std::uint32_t id) {
      if (ok && norm_sq(kept[id] - p) < d2) ok = false;
    });
    if (!ok) continue;
    index.insert(p.coords(), static_cast<std::uint32_t>(kept.size()));
    kept.push_back(p);
  }
  return PointCloud::with_separation(cloud.dim(), std::move(kept), delta);
}

void write_cloud_csv(std::ostream& os, const PointCloud& cloud) {
  static constexpr const char* names[] = {"x", "y", "z"};
  for (int a = 0; a < cloud.dim(); ++a) os << (a ? "," : "") << names[a];
  os << '\n';
  const auto old = os.precision(17);
  for (const Point& p : cloud) {
    for (int a = 0; a < cloud.dim(); ++a) os << (a ? "," : "") << p[a];
    os << '\n';
  }
  os.precision(old);
}

PointCloud read_cloud_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("cloud csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int dim = 0;
  if (line == "x")
    dim = 1;
  else if (line == "x,y")
    dim = 2;
  else if (line == "x,y,z")
    dim = 3;
  else
    throw InvalidArgument("cloud csv: header must be x, x,y or x,y,z (got '" + line + "')");

  std::vector<Point> pts;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    Point p = Point::zero(dim);
    std::string field;
    int a = 0;
    while (std::getline(ss, field, ',')) {
      if (a >= dim) throw InvalidArgument("cloud csv: too many fields on row " + std::to_string(row));
      try {
        std::size_t used = 0;
        p[a] = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw InvalidArgument("cloud csv: bad number '" + field + "' on row " + std::to_string(row));
      }
      ++a;
    }
    if (a != dim) throw InvalidArgument("cloud csv: too few fields on row " + std::to_string(row));
    pts.push_back(p);
  }
  return PointCloud(dim, std::move(pts));
}

}  // namespace gmt
