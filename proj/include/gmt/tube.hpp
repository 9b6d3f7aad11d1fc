#pragma once

#include "gmt/point.hpp"

namespace gmt {

/// Closed radius-neighbourhood of the segment anchor + t * direction,
/// t in [0, length]. Lives in R^2 or R^3.
class Tube {
 public:
  /// `direction` is normalised here; it must be nonzero, length and radius
  /// positive.
  Tube(const Point& anchor, const Point& direction, double length, double radius);

  /// Tube of the given length centred at `center`.
  static Tube centered(const Point& center, const Point& direction, double length, double radius);

  int dim() const { return anchor_.dim; }
  const Point& anchor() const { return anchor_; }
  const Point& direction() const { return direction_; }
  double length() const { return length_; }
  double radius() const { return radius_; }
  Point end() const { return anchor_ + length_ * direction_; }
  Point center() const { return anchor_ + (0.5 * length_) * direction_; }

  Tube with_radius(double r) const { return Tube(anchor_, direction_, length_, r); }

  double axis_distance_sq(const Point& p) const;
  bool contains(const Point& p) const { return axis_distance_sq(p) <= radius_ * radius_; }

 private:
  Point anchor_;
  Point direction_;
  double length_;
  double radius_;
};

/// Squared distance from p to the segment [a, a + len * u] (u unit).
double point_segment_distance_sq(const Point& p, const Point& a, const Point& u, double len);

/// Distance between the axis segments of two tubes.
double segment_distance(const Tube& s, const Tube& t);

/// Angle in [0, pi/2] between the axis lines of two tubes.
double direction_gap(const Tube& s, const Tube& t);

}  // namespace gmt
