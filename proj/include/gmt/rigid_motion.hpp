#pragma once

#include <array>

#include "gmt/point.hpp"

namespace gmt {

class CounterStream;

/// Row-major 3x3 matrix; only the leading dim x dim block is meaningful.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity();
  double operator()(int r, int c) const { return m[r][c]; }
  double& operator()(int r, int c) { return m[r][c]; }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
Point operator*(const Mat3& a, const Point& p);

/// x -> A x + t with A orthogonal. For d = 2 the angle of the rotation part
/// and the reflection flag are derived from A.
class RigidMotion {
 public:
  /// Validates orthogonality. Matrices off by more than 1e-12 but within
  /// 1e-8 are replaced by their nearest orthogonal matrix; worse ones throw.
  RigidMotion(int dim, const Mat3& linear, const Point& translation);

  static RigidMotion identity(int dim);
  static RigidMotion translation(const Point& t);
  /// Counter-clockwise rotation by theta about the origin, then translate.
  static RigidMotion rotation2d(double theta, const Point& translation = Point(0.0, 0.0));
  /// Rotation by theta about a fixed point.
  static RigidMotion rotation_about(double theta, const Point& fixed_point);
  /// Reflection across the line through the origin at angle phi, then translate.
  static RigidMotion reflection2d(double phi, const Point& translation = Point(0.0, 0.0));
  /// Rotation from a (not necessarily normalised) quaternion w + xi + yj + zk.
  static RigidMotion from_quaternion(double w, double x, double y, double z,
                                     const Point& translation = Point(0.0, 0.0, 0.0));

  int dim() const { return dim_; }
  const Mat3& linear() const { return linear_; }
  const Point& translation() const { return translation_; }
  bool has_translation() const;

  /// Rotation angle in [0, 2pi); for reflections the angle of A * diag(1,-1).
  double angle() const;
  bool is_reflection() const;

  Point apply(const Point& p) const { return linear_ * p + translation_; }
  Point apply_linear(const Point& p) const { return linear_ * p; }

  /// (this o inner)(p) = this(inner(p)).
  RigidMotion compose(const RigidMotion& inner) const;
  RigidMotion inverse() const;

  /// Max |A^T A - I| entry.
  double orthogonality_defect() const;

 private:
  RigidMotion() = default;
  int dim_ = 0;
  Mat3 linear_;
  Point translation_;
};

/// Checked application: throws DimensionMismatch when dimensions differ.
Point apply_motion(const RigidMotion& g, const Point& p);

/// Haar-uniform element of O(d), d in {2, 3}: uniform angle (d = 2) or
/// uniform unit quaternion (d = 3), composed with a fair reflection coin.
RigidMotion haar_orthogonal(int dim, CounterStream& stream);

/// Haar-uniform element of SO(2).
RigidMotion haar_rotation2d(CounterStream& stream);

}  // namespace gmt
