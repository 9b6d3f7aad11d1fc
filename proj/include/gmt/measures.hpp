#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gmt/point.hpp"
#include "gmt/stats.hpp"

namespace gmt {

/// Weighted point cloud of total mass 1.
class DiscreteMeasure {
 public:
  /// Weights must be strictly positive and sum to 1 within 1e-12.
  DiscreteMeasure(PointCloud cloud, std::vector<double> weights);

  static DiscreteMeasure uniform(PointCloud cloud);
  static DiscreteMeasure point_mass(const Point& p);

  const PointCloud& cloud() const { return cloud_; }
  const std::vector<double>& weights() const { return weights_; }
  int dim() const { return cloud_.dim(); }
  std::size_t size() const { return cloud_.size(); }
  const Point& operator[](std::size_t i) const { return cloud_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  /// True when every weight equals 1/N exactly.
  bool is_uniform() const { return uniform_; }

 private:
  PointCloud cloud_;
  std::vector<double> weights_;
  bool uniform_ = false;
};

/// One (scale, value) sample; std_error is 0 for exact values.
struct ScaleSample {
  double scale = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

using ScaleSeries = std::vector<ScaleSample>;

/// CSV `scale,value,stderr`.
void write_scale_series_csv(std::ostream& os, const ScaleSeries& series);

/// Off-diagonal t-energy sum_{i != j} w_i w_j |x_i - x_j|^{-t}.
double energy_integral(const DiscreteMeasure& m, double t);

/// Mass of the closed ball B_r(x).
double ball_mass(const DiscreteMeasure& m, const Point& x, double r);

/// min over support points x and radii r of log m(B_r(x)) / log r.
double frostman_exponent(const DiscreteMeasure& m, std::span<const double> radii);

/// Occupied-cell counts of `cloud` at each scale.
ScaleSeries box_count_series(const PointCloud& cloud, std::span<const double> scales);

/// Least-squares slope of log value against log(1/scale).
double box_dimension(const ScaleSeries& series);

std::complex<double> fourier_amplitude(const DiscreteMeasure& m, const Point& omega);

/// |m^(omega)|^2 clamped to [0, 1].
double fourier_power(const DiscreteMeasure& m, const Point& omega);

double ball_volume(int dim, double radius);
double sphere_area(int dim);  // |S^{d-1}|: 2, 2 pi, 4 pi

enum class BallSampling {
  uniform,  // omega uniform in B_R
  radial,   // radius uniform in [0, R], direction uniform (importance weight ~ |omega|^{d-1})
};

/// Integral of |m^|^2 over B_R(0).
Estimate ball_average(const DiscreteMeasure& m, double R, std::size_t samples, std::uint64_t seed,
                      BallSampling sampling = BallSampling::uniform);

/// Integral of |m^(omega)|^2 |omega|^{-t} over r0 <= |omega| <= R, with the
/// radius importance-sampled from the density ~ rho^{d-1-t}.
Estimate weighted_ball_average(const DiscreteMeasure& m, double R, double t, std::size_t samples,
                               std::uint64_t seed, double r0 = 0.01);

/// Mean of |m^(R sigma)|^2 over sigma uniform on the unit sphere.
Estimate spherical_average(const DiscreteMeasure& m, double R, std::size_t samples, std::uint64_t seed);

struct L2Dimension {
  double dimension = 0.0;
  double slope = 0.0;
  ScaleSeries series;  // (R, A(m, R), stderr)
};

/// d minus the fitted slope of log A(m, R) against log R. Every scale reuses
/// the same sample indices so the noise is correlated across scales.
L2Dimension l2_dimension(const DiscreteMeasure& m, std::span<const double> scales, std::size_t samples,
                         std::uint64_t seed, BallSampling sampling = BallSampling::radial);

/// Weighted variant: d - t - slope of log A(m, R, |.|^{-exponent}).
L2Dimension l2_dimension_weighted(const DiscreteMeasure& m, std::span<const double> scales, double t,
                                  double exponent, std::size_t samples, std::uint64_t seed, double r0 = 0.01);

}  // namespace gmt
