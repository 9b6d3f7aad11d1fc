#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gmt/errors.hpp"
#include "gmt/incidence.hpp"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"
#include "gmt/spatial_index.hpp"
#include "gmt/stats.hpp"

namespace gmt {

double tech_angular_fraction(double cut) {
  if (cut >= 2.0) return 0.0;
  return 1.0 - 4.0 * std::asin(0.5 * cut) / (2.0 * std::numbers::pi);
}

TechResult tech_ratio(const DiscreteMeasure& m1, const DiscreteMeasure& m2, double delta, std::size_t g_samples,
                      std::uint64_t seed, const TechOptions& opt) {
  if (m1.dim() != 2 || m2.dim() != 2) throw DimensionMismatch("tech_ratio: measures must be planar");
  if (!(delta > 0.0)) throw InvalidArgument("tech_ratio: delta must be positive");
  if (g_samples < 2) throw InvalidArgument("tech_ratio: need at least two motion samples");
  const double reach = opt.near_factor * delta;
  const double reach2 = reach * reach;
  SpatialIndex index(2, reach);
  for (std::size_t i = 0; i < m1.size(); ++i) index.insert(m1[i].coords(), static_cast<std::uint32_t>(i));

  const std::uint64_t key = derive_key(seed, "tech_ratio");
  std::vector<double> J(g_samples);
  std::vector<char> inner(g_samples);
  parallel::for_each_index(g_samples, [&](std::size_t i) {
    CounterStream rs(key, i);
    const double theta = 2.0 * std::numbers::pi * rs.uniform();
    const double rho = opt.translation_radius * std::sqrt(rs.uniform());
    const double phi = 2.0 * std::numbers::pi * rs.uniform();
    const RigidMotion g = RigidMotion::rotation2d(theta, Point(rho * std::cos(phi), rho * std::sin(phi)));
    double mass = 0.0;
    for (std::size_t b = 0; b < m2.size(); ++b) {
      const Point y = g.apply(m2[b]);
      index.for_each_candidate(y.coords(), reach, [&](std::uint32_t a) {
        if (norm_sq(m1[a] - y) <= reach2) mass += m1.weight(a) * m2.weight(b);
      });
    }
    J[i] = mass * mass;
    inner[i] = std::abs(2.0 * std::sin(0.5 * theta)) >= opt.angle_cut;
  });

  Moments all, in;
  for (std::size_t i = 0; i < g_samples; ++i) {
    all.add(J[i]);
    in.add(inner[i] ? J[i] : 0.0);
  }
  TechResult out;
  out.samples = g_samples;
  out.mean_all = all.mean();
  out.mean_inner = in.mean();
  if (!(out.mean_all > 0.0)) {
    out.ratio = std::numeric_limits<double>::quiet_NaN();
    out.std_error = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.ratio = out.mean_inner / out.mean_all;
  // Delta method for a ratio of means.
  Moments resid;
  for (std::size_t i = 0; i < g_samples; ++i) resid.add((inner[i] ? J[i] : 0.0) - out.ratio * J[i]);
  out.std_error = resid.std_error() / out.mean_all;
  return out;
}

}  // namespace gmt
