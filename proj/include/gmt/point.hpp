#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace gmt {

/// A point (or vector) in R^d for d in {1, 2, 3}. Unused trailing
/// coordinates are kept at zero so arithmetic never needs to branch on d.
struct Point {
  std::array<double, 3> c{};
  int dim = 0;

  constexpr Point() = default;
  constexpr explicit Point(double x) : c{x, 0.0, 0.0}, dim(1) {}
  constexpr Point(double x, double y) : c{x, y, 0.0}, dim(2) {}
  constexpr Point(double x, double y, double z) : c{x, y, z}, dim(3) {}

  static constexpr Point zero(int d) {
    Point p;
    p.dim = d;
    return p;
  }

  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  std::span<const double> coords() const { return {c.data(), static_cast<std::size_t>(dim)}; }

  bool finite() const {
    for (int i = 0; i < dim; ++i)
      if (!std::isfinite(c[static_cast<std::size_t>(i)])) return false;
    return true;
  }
};

constexpr Point operator+(Point a, const Point& b) {
  a.c[0] += b.c[0];
  a.c[1] += b.c[1];
  a.c[2] += b.c[2];
  return a;
}

constexpr Point operator-(Point a, const Point& b) {
  a.c[0] -= b.c[0];
  a.c[1] -= b.c[1];
  a.c[2] -= b.c[2];
  return a;
}

constexpr Point operator-(Point a) {
  a.c[0] = -a.c[0];
  a.c[1] = -a.c[1];
  a.c[2] = -a.c[2];
  return a;
}

constexpr Point operator*(double s, Point a) {
  a.c[0] *= s;
  a.c[1] *= s;
  a.c[2] *= s;
  return a;
}

constexpr double dot(const Point& a, const Point& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

inline double norm_sq(const Point& a) { return dot(a, a); }
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Sup-norm distance.
inline double distance_inf(const Point& a, const Point& b) {
  return std::max({std::abs(a.c[0] - b.c[0]), std::abs(a.c[1] - b.c[1]), std::abs(a.c[2] - b.c[2])});
}

/// Cross product; for 2-d inputs the result is (0, 0, a x b).
constexpr Point cross(const Point& a, const Point& b) {
  return Point(a.c[1] * b.c[2] - a.c[2] * b.c[1], a.c[2] * b.c[0] - a.c[0] * b.c[2],
               a.c[0] * b.c[1] - a.c[1] * b.c[0]);
}

/// Counter-clockwise quarter turn of a planar vector.
constexpr Point perp(const Point& a) { return Point(-a.c[1], a.c[0]); }

/// Ordered point set of a common dimension, optionally carrying a certified
/// minimum pairwise separation.
class PointCloud {
 public:
  PointCloud() = default;
  /// Throws InvalidArgument on mixed dimensions or non-finite coordinates.
  PointCloud(int dim, std::vector<Point> points);

  /// Attach a separation the caller has established by construction.
  static PointCloud with_separation(int dim, std::vector<Point> points, double separation);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  std::optional<double> separation() const { return separation_; }

  /// Exhaustive O(N^2) minimum pairwise distance (infinity for N < 2).
  double min_pairwise_distance() const;

  /// Largest pairwise distance, O(N^2).
  double diameter() const;

 private:
  int dim_ = 0;
  std::vector<Point> points_;
  std::optional<double> separation_;
};

/// Greedy delta-net in input order: a point is kept iff it is at distance
/// >= delta from every point kept before it.
PointCloud delta_net(const PointCloud& cloud, double delta);

/// CSV with header `x[,y[,z]]`, 17 significant digits.
void write_cloud_csv(std::ostream& os, const PointCloud& cloud);
PointCloud read_cloud_csv(std::istream& is);

}  // namespace gmt
