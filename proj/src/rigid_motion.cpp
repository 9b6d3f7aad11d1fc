#include "gmt/rigid_motion.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "gmt/errors.hpp"
#include "gmt/rng.hpp"

namespace gmt {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kRepairTol = 1e-8;

double defect(int dim, const Mat3& a) {
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += a(k, i) * a(k, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

// Nearest orthogonal matrix in Frobenius norm: U V^T from the SVD.
Mat3 nearest_orthogonal(int dim, const Mat3& a) {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = a(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd q = svd.matrixU() * svd.matrixV().transpose();
  Mat3 out;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(i, j) = q(i, j);
  return out;
}

}  // namespace

Mat3 Mat3::identity() {
  Mat3 a;
  a(0, 0) = a(1, 1) = a(2, 2) = 1.0;
  return a;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

Mat3 transpose(const Mat3& a) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
  return t;
}

Point operator*(const Mat3& a, const Point& p) {
  Point q = Point::zero(p.dim);
  for (int i = 0; i < 3; ++i) q.c[i] = a(i, 0) * p.c[0] + a(i, 1) * p.c[1] + a(i, 2) * p.c[2];
  return q;
}

RigidMotion::RigidMotion(int dim, const Mat3& linear, const Point& translation)
    : dim_(dim), translation_(translation) {
  if (dim < 1 || dim > 3) throw InvalidArgument("rigid motion dimension must be 1, 2 or 3");
  if (translation.dim != dim) throw DimensionMismatch("rigid motion translation has wrong dimension");
  if (!translation.finite()) throw InvalidArgument("rigid motion translation is not finite");
  // Zero the unused block so dimension-agnostic arithmetic stays exact.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) linear_(i, j) = (i < dim && j < dim) ? linear(i, j) : 0.0;
  const double d = defect(dim, linear_);
  if (!(d <= kRepairTol)) throw InvalidArgument("linear part is not orthogonal (defect " + std::to_string(d) + ")");
  if (d > kOrthoTol) linear_ = nearest_orthogonal(dim, linear_);
}

RigidMotion RigidMotion::identity(int dim) { return RigidMotion(dim, Mat3::identity(), Point::zero(dim)); }

RigidMotion RigidMotion::translation(const Point& t) { return RigidMotion(t.dim, Mat3::identity(), t); }

RigidMotion RigidMotion::rotation2d(double theta, const Point& translation) {
  Mat3 a;
  const double c = std::cos(theta), s = std::sin(theta);
  a(0, 0) = c;
  a(0, 1) = -s;
  a(1, 0) = s;
  a(1, 1) = c;
  return RigidMotion(2, a, translation);
}

RigidMotion RigidMotion::rotation_about(double theta, const Point& fixed_point) {
  const RigidMotion r = rotation2d(theta);
  return rotation2d(theta, fixed_point - r.apply_linear(fixed_point));
}

RigidMotion RigidMotion::reflection2d(double phi, const Point& translation) {
  Mat3 a;
  const double c = std::cos(2.0 * phi), s = std::sin(2.0 * phi);
  a(0, 0) = c;
  a(0, 1) = s;
  a(1, 0) = s;
  a(1, 1) = -c;
  return RigidMotion(2, a, translation);
}

RigidMotion RigidMotion::from_quaternion(double w, double x, double y, double z, const Point& translation) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0)) throw InvalidArgument("quaternion must be nonzero");
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  Mat3 a;
  a(0, 0) = 1 - 2 * (y * y + z * z);
  a(0, 1) = 2 * (x * y - w * z);
  a(0, 2) = 2 * (x * z + w * y);
  a(1, 0) = 2 * (x * y + w * z);
  a(1, 1) = 1 - 2 * (x * x + z * z);
  a(1, 2) = 2 * (y * z - w * x);
  a(2, 0) = 2 * (x * z - w * y);
  a(2, 1) = 2 * (y * z + w * x);
  a(2, 2) = 1 - 2 * (x * x + y * y);
  return RigidMotion(3, a, translation);
}

bool RigidMotion::has_translation() const {
  for (int i = 0; i < dim_; ++i)
    if (translation_[i] != 0.0) return true;
  return false;
}

bool RigidMotion::is_reflection() const {
  const Mat3& a = linear_;
  double det = 0.0;
  if (dim_ == 1)
    det = a(0, 0);
  else if (dim_ == 2)
    det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  else
    det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
          a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  return det < 0.0;
}

double RigidMotion::angle() const {
  if (dim_ != 2) throw InvalidArgument("angle() is defined for planar motions only");
  double theta = std::atan2(linear_(1, 0), linear_(0, 0));
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return theta;
}

RigidMotion RigidMotion::compose(const RigidMotion& inner) const {
  if (inner.dim_ != dim_) throw DimensionMismatch("compose: dimensions differ");
  RigidMotion out;
  out.dim_ = dim_;
  out.linear_ = linear_ * inner.linear_;
  out.translation_ = linear_ * inner.translation_ + translation_;
  return out;
}

RigidMotion RigidMotion::inverse() const {
  RigidMotion out;
  out.dim_ = dim_;
  out.linear_ = transpose(linear_);
  out.translation_ = -(out.linear_ * translation_);
  return out;
}

double RigidMotion::orthogonality_defect() const { return defect(dim_, linear_); }

Point apply_motion(const RigidMotion& g, const Point& p) {
  if (g.dim() != p.dim)
    throw DimensionMismatch("apply_motion: motion has dimension " + std::to_string(g.dim()) + ", point has " +
                            std::to_string(p.dim));
  return g.apply(p);
}

RigidMotion haar_rotation2d(CounterStream& stream) {
  return RigidMotion::rotation2d(2.0 * std::numbers::pi * stream.uniform());
}

RigidMotion haar_orthogonal(int dim, CounterStream& stream) {
  if (dim == 2) {
    const double theta = 2.0 * std::numbers::pi * stream.uniform();
    const bool reflect = stream.uniform() < 0.5;
    // theta uniform on the circle makes the reflection R_theta diag(1,-1)
    // Haar on the other coset as well.
    return reflect ? RigidMotion::reflection2d(0.5 * theta) : RigidMotion::rotation2d(theta);
  }
  if (dim == 3) {
    // Shoemake's uniform unit quaternion.
    const double u1 = stream.uniform(), u2 = stream.uniform(), u3 = stream.uniform();
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double t2 = 2.0 * std::numbers::pi * u2, t3 = 2.0 * std::numbers::pi * u3;
    RigidMotion r = RigidMotion::from_quaternion(a * std::sin(t2), a * std::cos(t2), b * std::sin(t3),
                                                 b * std::cos(t3));
    if (stream.uniform() < 0.5) {
      Mat3 neg = r.linear();
      for (auto& row : neg.m)
        for (double& v : row) v = -v;
      return RigidMotion(3, neg, Point::zero(3));
    }
    return r;
  }
  throw InvalidArgument("haar_orthogonal supports d = 2 and d = 3");
}

}  // namespace gmt
