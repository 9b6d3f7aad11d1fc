#include "gmt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "gmt/errors.hpp"
#include "gmt/grid.hpp"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"

namespace gmt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Point random_direction(int dim, CounterStream& rs) {
  if (dim == 1) return Point(rs.uniform() < 0.5 ? -1.0 : 1.0);
  if (dim == 2) {
    const double a = kTwoPi * rs.uniform();
    return Point(std::cos(a), std::sin(a));
  }
  const double z = 2.0 * rs.uniform() - 1.0;
  const double a = kTwoPi * rs.uniform();
  const double q = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Point(q * std::cos(a), q * std::sin(a), z);
}

// Mean of f(i) over i in [0, n), reduced in fixed chunks.
template <class F>
Moments sample_moments(std::size_t n, F&& f) {
  return parallel::reduce(n, Moments{}, [&](std::size_t b, std::size_t e) {
    Moments mo;
    for (std::size_t i = b; i < e; ++i) mo.add(f(i));
    return mo;
  });
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(PointCloud cloud, std::vector<double> weights)
    : cloud_(std::move(cloud)), weights_(std::move(weights)) {
  if (cloud_.empty()) throw InvalidArgument("measure needs at least one atom");
  if (weights_.size() != cloud_.size()) throw InvalidArgument("measure: weight count differs from point count");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("measure weights must be positive and finite");
  const double total = compensated_sum(weights_);
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("measure weights sum to " + std::to_string(total));
  const double u = 1.0 / static_cast<double>(weights_.size());
  uniform_ = std::all_of(weights_.begin(), weights_.end(), [u](double w) { return w == u; });
}

DiscreteMeasure DiscreteMeasure::uniform(PointCloud cloud) {
  const std::size_t n = cloud.size();
  if (n == 0) throw InvalidArgument("measure needs at least one atom");
  return DiscreteMeasure(std::move(cloud), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::point_mass(const Point& p) { return uniform(PointCloud(p.dim, {p})); }

void write_scale_series_csv(std::ostream& os, const ScaleSeries& series) {
  os << "scale,value,stderr\n";
  char buf[96];
  for (const ScaleSample& s : series) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.scale, s.value, s.std_error);
    os << buf;
  }
}

double energy_integral(const DiscreteMeasure& m, double t) {
  if (!(t > 0.0)) throw InvalidArgument("energy_integral: t must be > 0");
  const std::size_t n = m.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = distance(m[i], m[j]);
      if (d == 0.0)
        throw InvalidArgument("energy_integral: points " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide");
      row += m.weight(j) * std::pow(d, -t);
    }
    total += m.weight(i) * row;
  }
  return total;
}

double ball_mass(const DiscreteMeasure& m, const Point& x, double r) {
  double s = 0.0;
  const double r2 = r * r;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (norm_sq(m[i] - x) <= r2) s += m.weight(i);
  return s;
}

double frostman_exponent(const DiscreteMeasure& m, std::span<const double> radii) {
  if (radii.empty()) throw InvalidArgument("frostman_exponent: empty radius list");
  for (double r : radii)
    if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("frostman_exponent: radii must lie in (0, 1)");
  const std::size_t n = m.size();
  std::vector<double> per_center(n);
  parallel::for_each_index(n, [&](std::size_t i) {
    // Sorted distances with weight prefix sums give every ball mass by
    // binary search.
    std::vector<std::pair<double, double>> dw(n);
    for (std::size_t j = 0; j < n; ++j) dw[j] = {distance(m[i], m[j]), m.weight(j)};
    std::sort(dw.begin(), dw.end());
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + dw[j].second;
    double best = std::numeric_limits<double>::infinity();
    for (double r : radii) {
      const auto it = std::upper_bound(dw.begin(), dw.end(), std::make_pair(r, std::numeric_limits<double>::infinity()));
      const double mass = std::min(1.0, prefix[static_cast<std::size_t>(it - dw.begin())]);
      best = std::min(best, std::log(mass) / std::log(r));
    }
    per_center[i] = best;
  });
  // log(1) / log(r) is -0.0; report +0.
  return *std::min_element(per_center.begin(), per_center.end()) + 0.0;
}

ScaleSeries box_count_series(const PointCloud& cloud, std::span<const double> scales) {
  ScaleSeries out;
  for (double s : scales) out.push_back({s, static_cast<double>(grid_count(cloud, s).occupied()), 0.0});
  return out;
}

double box_dimension(const ScaleSeries& series) {
  if (series.size() < 2) throw InvalidArgument("box_dimension: need at least two scales");
  std::vector<double> x, y;
  for (const ScaleSample& s : series) {
    if (!(s.scale > 0.0)) throw InvalidArgument("box_dimension: scales must be positive");
    if (!(s.value >= 1.0)) throw InvalidArgument("box_dimension: zero count at scale " + std::to_string(s.scale));
    x.push_back(std::log(1.0 / s.scale));
    y.push_back(std::log(s.value));
  }
  return fit_line(x, y).slope;
}

std::complex<double> fourier_amplitude(const DiscreteMeasure& m, const Point& omega) {
  if (omega.dim != m.dim()) throw DimensionMismatch("fourier_amplitude: frequency dimension differs");
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const double phase = -kTwoPi * dot(omega, m[j]);
    re += m.weight(j) * std::cos(phase);
    im += m.weight(j) * std::sin(phase);
  }
  return {re, im};
}

double fourier_power(const DiscreteMeasure& m, const Point& omega) {
  return std::min(1.0, std::norm(fourier_amplitude(m, omega)));
}

double sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return kTwoPi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw InvalidArgument("sphere_area: dimension must be 1, 2 or 3");
  }
}

double ball_volume(int dim, double radius) { return sphere_area(dim) * std::pow(radius, dim) / dim; }

Estimate ball_average(const DiscreteMeasure& m, double R, std::size_t samples, std::uint64_t seed,
                      BallSampling sampling) {
  if (!(R > 0.0)) throw InvalidArgument("ball_average: R must be > 0");
  if (samples < 1) throw InvalidArgument("ball_average: need at least one sample");
  const int d = m.dim();
  const std::uint64_t key = derive_key(seed, "ball_average");
  if (sampling == BallSampling::uniform) {
    const Moments mo = sample_moments(samples, [&](std::size_t i) {
      CounterStream rs(key, i);
      const double rho = R * std::pow(rs.uniform(), 1.0 / d);
      return fourier_power(m, rho * random_direction(d, rs));
    });
    return mo.estimate(ball_volume(d, R));
  }
  // Radius uniform on [0, R]: density 1 / (R |S^{d-1}| rho^{d-1}).
  const Moments mo = sample_moments(samples, [&](std::size_t i) {
    CounterStream rs(key, i);
    const double rho = R * rs.uniform();
    return std::pow(rho, d - 1) * fourier_power(m, rho * random_direction(d, rs));
  });
  return mo.estimate(R * sphere_area(d));
}

Estimate weighted_ball_average(const DiscreteMeasure& m, double R, double t, std::size_t samples,
                               std::uint64_t seed, double r0) {
  const int d = m.dim();
  if (!(t >= 0.0) || t >= d) throw InvalidArgument("weighted_ball_average: need 0 <= t < d");
  if (!(r0 >= 0.0 && R > r0)) throw InvalidArgument("weighted_ball_average: need 0 <= r0 < R");
  if (samples < 1) throw InvalidArgument("weighted_ball_average: need at least one sample");
  const double b = d - t;
  const double lo = std::pow(r0, b), hi = std::pow(R, b);
  const double z = sphere_area(d) * (hi - lo) / b;
  const std::uint64_t key = derive_key(seed, "weighted_ball_average");
  const Moments mo = sample_moments(samples, [&](std::size_t i) {
    CounterStream rs(key, i);
    const double rho = std::pow(lo + rs.uniform() * (hi - lo), 1.0 / b);
    return fourier_power(m, rho * random_direction(d, rs));
  });
  return mo.estimate(z);
}

Estimate spherical_average(const DiscreteMeasure& m, double R, std::size_t samples, std::uint64_t seed) {
  if (!(R >= 0.0)) throw InvalidArgument("spherical_average: R must be >= 0");
  if (R == 0.0 || m.size() == 1) return {1.0, 0.0, samples};
  if (samples < 1) throw InvalidArgument("spherical_average: need at least one sample");
  const int d = m.dim();
  const std::uint64_t key = derive_key(seed, "spherical_average");
  const Moments mo = sample_moments(samples, [&](std::size_t i) {
    CounterStream rs(key, i);
    return fourier_power(m, R * random_direction(d, rs));
  });
  Estimate e = mo.estimate();
  e.value = std::clamp(e.value, 0.0, 1.0);
  return e;
}

namespace {

L2Dimension fit_l2(ScaleSeries series, double offset) {
  if (series.size() < 3) throw InvalidArgument("l2_dimension: need at least three scales");
  std::vector<double> x, y;
  for (const ScaleSample& s : series) {
    if (!(s.value > 0.0)) throw InvalidArgument("l2_dimension: zero ball average at R = " + std::to_string(s.scale));
    x.push_back(std::log(s.scale));
    y.push_back(std::log(s.value));
  }
  L2Dimension out;
  out.slope = fit_line(x, y).slope;
  out.dimension = offset - out.slope;
  out.series = std::move(series);
  return out;
}

}  // namespace

L2Dimension l2_dimension(const DiscreteMeasure& m, std::span<const double> scales, std::size_t samples,
                         std::uint64_t seed, BallSampling sampling) {
  ScaleSeries series;
  for (double R : scales) {
    const Estimate e = ball_average(m, R, samples, seed, sampling);
    series.push_back({R, e.value, e.std_error});
  }
  return fit_l2(std::move(series), m.dim());
}

L2Dimension l2_dimension_weighted(const DiscreteMeasure& m, std::span<const double> scales, double t,
                                  double exponent, std::size_t samples, std::uint64_t seed, double r0) {
  ScaleSeries series;
  for (double R : scales) {
    const Estimate e = weighted_ball_average(m, R, exponent, samples, seed, r0);
    series.push_back({R, e.value, e.std_error});
  }
  return fit_l2(std::move(series), m.dim() - t);
}

}  // namespace gmt
