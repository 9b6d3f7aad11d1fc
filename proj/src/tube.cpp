#include "gmt/tube.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmt/errors.hpp"

namespace gmt {

Tube::Tube(const Point& anchor, const Point& direction, double length, double radius)
    : anchor_(anchor), direction_(direction), length_(length), radius_(radius) {
  if (anchor.dim != 2 && anchor.dim != 3) throw InvalidArgument("tubes live in R^2 or R^3");
  if (direction.dim != anchor.dim) throw DimensionMismatch("tube direction dimension differs from anchor");
  if (!anchor.finite() || !direction.finite()) throw InvalidArgument("tube geometry must be finite");
  const double n = norm(direction);
  if (!(n > 0.0)) throw InvalidArgument("tube direction must be nonzero");
  if (!(length > 0.0) || !(radius > 0.0)) throw InvalidArgument("tube length and radius must be positive");
  direction_ = (1.0 / n) * direction;
}

Tube Tube::centered(const Point& center, const Point& direction, double length, double radius) {
  const Point u = (1.0 / norm(direction)) * direction;
  return Tube(center - (0.5 * length) * u, u, length, radius);
}

double point_segment_distance_sq(const Point& p, const Point& a, const Point& u, double len) {
  const Point w = p - a;
  const double t = std::clamp(dot(w, u), 0.0, len);
  return norm_sq(w - t * u);
}

double Tube::axis_distance_sq(const Point& p) const {
  return point_segment_distance_sq(p, anchor_, direction_, length_);
}

// Closest points between two segments (Ericson, Real-Time Collision
// Detection, 5.1.9), specialised to unit directions.
double segment_distance(const Tube& s, const Tube& t) {
  if (s.dim() != t.dim()) throw DimensionMismatch("segment_distance: dimensions differ");
  const Point& d1 = s.direction();
  const Point& d2 = t.direction();
  const Point r = s.anchor() - t.anchor();
  const double l1 = s.length(), l2 = t.length();
  const double b = dot(d1, d2), c = dot(d1, r), f = dot(d2, r);
  const double denom = 1.0 - b * b;
  double u = 0.0;
  if (denom > 1e-14) u = std::clamp((b * f - c) / denom, 0.0, l1);
  double v = b * u + f;
  if (v < 0.0) {
    v = 0.0;
    u = std::clamp(-c, 0.0, l1);
  } else if (v > l2) {
    v = l2;
    u = std::clamp(b * l2 - c, 0.0, l1);
  }
  double best = norm(r + u * d1 - v * d2);
  // Parallel axes: the clamped solution above is one valid minimiser, but
  // endpoint checks make the result robust near degeneracy.
  if (denom <= 1e-14) {
    best = std::min({best, std::sqrt(point_segment_distance_sq(s.anchor(), t.anchor(), d2, l2)),
                     std::sqrt(point_segment_distance_sq(s.end(), t.anchor(), d2, l2)),
                     std::sqrt(point_segment_distance_sq(t.anchor(), s.anchor(), d1, l1)),
                     std::sqrt(point_segment_distance_sq(t.end(), s.anchor(), d1, l1))});
  }
  return best;
}

double direction_gap(const Tube& s, const Tube& t) {
  if (s.dim() != t.dim()) throw DimensionMismatch("direction_gap: dimensions differ");
  // atan2 of |cross| and |dot| stays accurate for nearly parallel lines.
  const double c = std::abs(dot(s.direction(), t.direction()));
  const double x = norm(cross(s.direction(), t.direction()));
  return std::atan2(x, c);
}

}  // namespace gmt
