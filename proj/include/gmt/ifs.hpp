#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gmt/point.hpp"
#include "gmt/rigid_motion.hpp"

namespace gmt {

struct IfsMap {
  double ratio;       // in (0, 1)
  Mat3 orthogonal;    // rotation/reflection part
  Point translation;

  Point apply(const Point& p) const { return ratio * (orthogonal * p) + translation; }
};

/// Iterated function system of similarities in R^d.
class IfsSystem {
 public:
  IfsSystem(int dim, std::vector<IfsMap> maps);

  int dim() const { return dim_; }
  const std::vector<IfsMap>& maps() const { return maps_; }

  /// {x/3, x/3 + 2/3}
  static IfsSystem middle_third_cantor();
  /// Four maps of ratio 1/4 onto the corners of the unit square.
  static IfsSystem four_corner_cantor();
  /// Three maps of ratio 1/2 onto the corners of a right triangle.
  static IfsSystem sierpinski();
  /// Lookup by CLI name: cantor, four-corner, sierpinski.
  static IfsSystem by_name(std::string_view name);

 private:
  int dim_;
  std::vector<IfsMap> maps_;
};

inline constexpr std::uint64_t kDefaultIfsCap = std::uint64_t{1} << 24;

/// Images of the origin under every length-`depth` word of maps, ordered
/// lexicographically by word (outermost map first).
PointCloud generate_ifs_cloud(const IfsSystem& ifs, int depth, std::uint64_t cap = kDefaultIfsCap);

}  // namespace gmt
