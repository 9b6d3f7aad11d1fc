#include "gmt/ifs.hpp"

#include <string>

#include "gmt/errors.hpp"

namespace gmt {

IfsSystem::IfsSystem(int dim, std::vector<IfsMap> maps) : dim_(dim), maps_(std::move(maps)) {
  if (dim < 1 || dim > 3) throw InvalidArgument("IFS dimension must be 1, 2 or 3");
  if (maps_.empty()) throw InvalidArgument("IFS needs at least one map");
  for (const IfsMap& f : maps_) {
    if (!(f.ratio > 0.0 && f.ratio < 1.0)) throw InvalidArgument("IFS contraction ratio must lie in (0, 1)");
    if (f.translation.dim != dim) throw DimensionMismatch("IFS translation has wrong dimension");
  }
}

namespace {
IfsMap scaled(double ratio, const Point& t) { return IfsMap{ratio, Mat3::identity(), t}; }
}  // namespace

IfsSystem IfsSystem::middle_third_cantor() {
  return IfsSystem(1, {scaled(1.0 / 3.0, Point(0.0)), scaled(1.0 / 3.0, Point(2.0 / 3.0))});
}

IfsSystem IfsSystem::four_corner_cantor() {
  const double r = 0.25, t = 0.75;
  return IfsSystem(2, {scaled(r, Point(0.0, 0.0)), scaled(r, Point(t, 0.0)), scaled(r, Point(0.0, t)),
                       scaled(r, Point(t, t))});
}

IfsSystem IfsSystem::sierpinski() {
  return IfsSystem(2, {scaled(0.5, Point(0.0, 0.0)), scaled(0.5, Point(0.5, 0.0)), scaled(0.5, Point(0.0, 0.5))});
}

IfsSystem IfsSystem::by_name(std::string_view name) {
  if (name == "cantor") return middle_third_cantor();
  if (name == "four-corner") return four_corner_cantor();
  if (name == "sierpinski") return sierpinski();
  throw InvalidArgument("unknown IFS '" + std::string(name) + "' (expected cantor, four-corner, sierpinski)");
}

PointCloud generate_ifs_cloud(const IfsSystem& ifs, int depth, std::uint64_t cap) {
  if (depth < 0) throw InvalidArgument("IFS depth must be >= 0");
  const std::uint64_t m = ifs.maps().size();
  std::uint64_t total = 1;
  for (int i = 0; i < depth; ++i) {
    if (total > cap / m) throw ResourceCapExceeded("IFS cloud of " + std::to_string(m) + "^" + std::to_string(depth) +
                                                   " points exceeds cap " + std::to_string(cap));
    total *= m;
  }
  // Word w1 w2 ... wm maps the origin to f_{w1}(f_{w2}(... f_{wm}(0))). Build
  // by applying the innermost map first; prepending the outer map index keeps
  // the output in lexicographic word order.
  std::vector<Point> cur{Point::zero(ifs.dim())};
  for (int level = 0; level < depth; ++level) {
    std::vector<Point> next;
    next.reserve(cur.size() * m);
    for (const IfsMap& f : ifs.maps())
      for (const Point& p : cur) next.push_back(f.apply(p));
    cur.swap(next);
  }
  return PointCloud(ifs.dim(), std::move(cur));
}

}  // namespace gmt
