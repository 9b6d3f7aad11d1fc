#include "gmt/incidence.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "gmt/errors.hpp"
#include "gmt/rng.hpp"
#include "gmt/spatial_index.hpp"

namespace gmt {

namespace {

std::vector<Point> greedy_directions(double sep) {
  // Fine Fibonacci spiral over the upper hemisphere, spacing about sep / 4,
  // thinned greedily in spiral order.
  const double hemisphere = 2.0 * std::numbers::pi;
  const auto m = static_cast<std::size_t>(std::ceil(16.0 * hemisphere / (sep * sep)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double chord = 2.0 * std::sin(0.5 * sep);
  const double chord2 = chord * chord;
  SpatialIndex index(3, chord);
  std::vector<Point> kept;  // both signs, so ids are 2 * line and 2 * line + 1
  std::vector<Point> out;
  for (std::size_t i = 0; i < m; ++i) {
    const double z = 1.0 - (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    const double q = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    const Point v(q * std::cos(a), q * std::sin(a), z);
    bool ok = true;
    index.for_each_candidate(v.coords(), chord, [&](std::uint32_t id) {
      if (ok && norm_sq(kept[id] - v) < chord2) ok = false;
    });
    if (!ok) continue;
    index.insert(v.coords(), static_cast<std::uint32_t>(kept.size()));
    kept.push_back(v);
    index.insert((-v).coords(), static_cast<std::uint32_t>(kept.size()));
    kept.push_back(-v);
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<Point> separated_directions_3d(double separation) {
  if (!(separation > 0.0) || separation > 0.5 * std::numbers::pi)
    throw InvalidArgument("separated_directions_3d: separation must lie in (0, pi/2]");
  if (separation < 1e-3) throw ResourceCapExceeded("separated_directions_3d: separation below 1e-3 is too fine");
  static std::mutex mu;
  static std::map<double, std::vector<Point>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(separation);
  if (it == cache.end()) it = cache.emplace(separation, greedy_directions(separation)).first;
  return it->second;
}

TubeFamily origin_bush_3d(double delta, double separation_factor) {
  if (!(delta > 0.0)) throw InvalidArgument("origin_bush_3d: delta must be positive");
  const double sep = separation_factor * delta;
  std::vector<Tube> tubes;
  for (const Point& u : separated_directions_3d(sep)) tubes.push_back(Tube::centered(Point(0.0, 0.0, 0.0), u, 1.0, delta));
  return make_family(3, delta, std::move(tubes), sep);
}

TubeFamily planar_bush(double delta, std::size_t L, double spacing) {
  if (!(delta > 0.0) || !(spacing > 0.0)) throw InvalidArgument("planar_bush: delta and spacing must be positive");
  if (L == 0) throw InvalidArgument("planar_bush: need at least one tube");
  if (static_cast<double>(L) * spacing > std::numbers::pi * (1.0 + 1e-12))
    throw InvalidArgument("planar_bush: L * spacing exceeds pi, directions would wrap around");
  std::vector<Tube> tubes;
  for (std::size_t i = 0; i < L; ++i) {
    const double a = static_cast<double>(i) * spacing;
    tubes.push_back(Tube::centered(Point(0.0, 0.0), Point(std::cos(a), std::sin(a)), 1.0, delta));
  }
  return make_family(2, delta, std::move(tubes), spacing);
}

TubeFamily random_family_3d(double delta, std::size_t L, std::uint64_t seed) {
  if (!(delta > 0.0)) throw InvalidArgument("random_family_3d: delta must be positive");
  std::vector<Point> dirs = separated_directions_3d(delta);
  if (dirs.size() < L)
    throw InvalidArgument("random_family_3d: only " + std::to_string(dirs.size()) + " delta-separated directions for L = " +
                          std::to_string(L));
  // Partial Fisher-Yates picks L directions.
  CounterStream pick(derive_key(seed, "random_family_directions"), 0);
  for (std::size_t i = 0; i < L; ++i) std::swap(dirs[i], dirs[i + pick.below(dirs.size() - i)]);
  const std::uint64_t key = derive_key(seed, "random_family_centres");
  std::vector<Tube> tubes;
  tubes.reserve(L);
  for (std::size_t i = 0; i < L; ++i) {
    CounterStream rs(key, i);
    const double x = rs.uniform(), y = rs.uniform(), z = rs.uniform();
    tubes.push_back(Tube::centered(Point(x, y, z), dirs[i], 1.0, delta));
  }
  return make_family(3, delta, std::move(tubes), delta);
}

}  // namespace gmt
