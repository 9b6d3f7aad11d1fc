#include "gmt/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gmt/errors.hpp"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"
#include "gmt/spatial_index.hpp"

namespace gmt {

MotionCoords motion_to_coords(const RigidMotion& g) {
  if (g.dim() != 2) throw InvalidArgument("motion_to_coords: planar motions only");
  if (g.is_reflection()) throw InvalidArgument("motion_to_coords: reflections have no rotation coordinates");
  const double c = g.linear()(0, 0), s = g.linear()(1, 0);
  // 1 - cos theta without cancellation near theta = 0.
  const double om = c > 0.0 ? s * s / (1.0 + c) : 1.0 - c;
  if (s == 0.0 && om == 0.0) return {Point(0.0, 0.0), 0.0, false};
  MotionCoords out;
  out.valid = true;
  out.z = c >= 0.0 ? (1.0 + c) / s : s / om;
  // (S - I)^{-1} = [[-om, s], [-s, -om]] / (om^2 + s^2); x0 = (S - I)^{-1}(-t).
  const double det = om * om + s * s;
  const Point& t = g.translation();
  out.x0 = Point((om * t[0] - s * t[1]) / det, (s * t[0] + om * t[1]) / det);
  return out;
}

RigidMotion coords_to_motion(const MotionCoords& c) {
  if (!c.valid) throw InvalidArgument("coords_to_motion: coordinates flagged invalid (pure translation)");
  if (!std::isfinite(c.z) || !c.x0.finite()) throw InvalidArgument("coords_to_motion: non-finite coordinates");
  return RigidMotion::rotation_about(2.0 * std::atan2(1.0, c.z), c.x0);
}

Line3 pair_line(const Point& x1, const Point& x3) {
  if (x1.dim != 2 || x3.dim != 2) throw DimensionMismatch("pair_line: points must be planar");
  if (x1[0] == x3[0] && x1[1] == x3[1]) return {Point(x1[0], x1[1], 0.0), Point(0.0, 0.0, 1.0), true};
  const Point w = 0.5 * perp(x1 - x3);
  return {Point(0.5 * (x1[0] + x3[0]), 0.5 * (x1[1] + x3[1]), 0.0), Point(w[0], w[1], 1.0), false};
}

TubeFamily make_family(int dim, double radius, std::vector<Tube> tubes, std::optional<double> sep) {
  if (dim != 2 && dim != 3) throw InvalidArgument("tube family dimension must be 2 or 3");
  if (!(radius > 0.0)) throw InvalidArgument("tube family radius must be positive");
  for (const Tube& t : tubes) {
    if (t.dim() != dim) throw DimensionMismatch("tube family: mixed dimensions");
    if (t.radius() != radius) throw InvalidArgument("tube family: tubes must share one radius");
  }
  return {dim, radius, std::move(tubes), sep};
}

TubeFamily build_pair_tubes(const PointCloud& F1, const PointCloud& F2, double delta, const PairTubeOptions& opt) {
  if (F1.empty() || F2.empty()) throw InvalidArgument("build_pair_tubes: empty point cloud");
  if (F1.dim() != 2 || F2.dim() != 2) throw DimensionMismatch("build_pair_tubes: clouds must be planar");
  if (!(delta > 0.0)) throw InvalidArgument("build_pair_tubes: delta must be positive");
  std::vector<Tube> tubes;
  tubes.reserve(F1.size() * F2.size());
  const double B2 = opt.box_bound * opt.box_bound;
  for (const Point& x1 : F1)
    for (const Point& x3 : F2) {
      const Line3 line = pair_line(x1, x3);
      double lo = -opt.z_bound, hi = opt.z_bound;
      // |mid + t w|^2 <= B^2 is a quadratic in t.
      const Point mid(line.anchor[0], line.anchor[1]);
      const Point w(line.direction[0], line.direction[1]);
      const double a = norm_sq(w), b = dot(mid, w), c = norm_sq(mid) - B2;
      if (a == 0.0) {
        if (c > 0.0) continue;
      } else {
        const double disc = b * b - a * c;
        if (disc < 0.0) continue;
        const double r = std::sqrt(disc);
        lo = std::max(lo, (-b - r) / a);
        hi = std::min(hi, (-b + r) / a);
      }
      if (!(hi > lo)) continue;
      const double speed = norm(line.direction);
      tubes.emplace_back(line.at(lo), line.direction, (hi - lo) * speed, delta);
    }
  return make_family(3, delta, std::move(tubes));
}

DirectionWitness direction_gap_witness(const TubeFamily& fam, double threshold) {
  DirectionWitness w;
  w.min_gap = 0.5 * std::numbers::pi;
  const double reach = 2.0 * fam.radius;
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      if (segment_distance(fam.tubes[i], fam.tubes[j]) > reach) continue;
      ++w.intersecting_pairs;
      const double gap = direction_gap(fam.tubes[i], fam.tubes[j]);
      if (gap < threshold) {
        if (w.violations == 0) {
          w.first_i = i;
          w.first_j = j;
        }
        ++w.violations;
      }
      w.min_gap = std::min(w.min_gap, gap);
    }
  return w;
}

}  // namespace gmt
