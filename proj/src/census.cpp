#include "gmt/incidence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "gmt/errors.hpp"
#include "gmt/parallel.hpp"

namespace gmt {

namespace {

struct GridFrame {
  int dim = 0;
  double cell = 0.0;
  std::array<std::int64_t, 3> lo{}, hi{};  // inclusive cell index ranges
  std::array<std::uint64_t, 3> extent{};
};

GridFrame frame_for(const TubeFamily& fam, double cell, double R) {
  GridFrame f;
  f.dim = fam.dim;
  f.cell = cell;
  std::array<double, 3> mn{}, mx{};
  mn.fill(std::numeric_limits<double>::infinity());
  mx.fill(-std::numeric_limits<double>::infinity());
  for (const Tube& t : fam.tubes) {
    const Point a = t.anchor(), b = t.end();
    for (int x = 0; x < f.dim; ++x) {
      mn[x] = std::min({mn[x], a[x], b[x]});
      mx[x] = std::max({mx[x], a[x], b[x]});
    }
  }
  for (int x = 0; x < f.dim; ++x) {
    f.lo[x] = static_cast<std::int64_t>(std::ceil((mn[x] - R) / cell - 0.5));
    f.hi[x] = static_cast<std::int64_t>(std::floor((mx[x] + R) / cell - 0.5));
    if (f.hi[x] < f.lo[x]) f.hi[x] = f.lo[x];
    f.extent[x] = static_cast<std::uint64_t>(f.hi[x] - f.lo[x] + 1);
  }
  return f;
}

// Visits every cell whose centre lies within R of the tube axis, restricted
// to last-axis indices in [slab_lo, slab_hi].
template <class F>
void rasterize(const Tube& t, const GridFrame& f, double R, std::int64_t slab_lo, std::int64_t slab_hi, F&& visit) {
  const int d = f.dim;
  const double c = f.cell;
  const Point& A = t.anchor();
  const Point& u = t.direction();
  const double len = t.length();
  const double R2 = R * R;

  int main = 0;
  for (int x = 1; x < d; ++x)
    if (std::abs(u[x]) > std::abs(u[main])) main = x;
  int others[2] = {0, 0};
  for (int x = 0, n = 0; x < d; ++x)
    if (x != main) others[n++] = x;

  auto clip = [&](int axis, std::int64_t& lo, std::int64_t& hi) {
    lo = std::max(lo, f.lo[axis]);
    hi = std::min(hi, f.hi[axis]);
    if (axis == d - 1) {
      lo = std::max(lo, slab_lo);
      hi = std::min(hi, slab_hi);
    }
  };
  auto centre_range = [&](double a, double b, std::int64_t& lo, std::int64_t& hi) {
    lo = static_cast<std::int64_t>(std::ceil(a / c - 0.5));
    hi = static_cast<std::int64_t>(std::floor(b / c - 0.5));
  };

  const double e_main = A[main] + len * u[main];
  std::int64_t mlo, mhi;
  centre_range(std::min(A[main], e_main) - R, std::max(A[main], e_main) + R, mlo, mhi);
  clip(main, mlo, mhi);

  std::array<std::int64_t, 3> idx{};
  Point p = Point::zero(d);
  for (std::int64_t im = mlo; im <= mhi; ++im) {
    const double xm = (static_cast<double>(im) + 0.5) * c;
    // Axis parameters whose cross-section can reach the plane x_main = xm.
    double t0 = 0.0, t1 = len;
    if (u[main] != 0.0) {
      double a = (xm - R - A[main]) / u[main], b = (xm + R - A[main]) / u[main];
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
      if (t0 > t1) continue;
    }
    idx[main] = im;
    p[main] = xm;
    std::int64_t olo[2], ohi[2];
    bool empty = false;
    for (int n = 0; n < d - 1; ++n) {
      const int ax = others[n];
      const double v0 = A[ax] + t0 * u[ax], v1 = A[ax] + t1 * u[ax];
      centre_range(std::min(v0, v1) - R, std::max(v0, v1) + R, olo[n], ohi[n]);
      clip(ax, olo[n], ohi[n]);
      if (olo[n] > ohi[n]) empty = true;
    }
    if (empty) continue;
    if (d == 2) {
      const int ax = others[0];
      for (std::int64_t j = olo[0]; j <= ohi[0]; ++j) {
        p[ax] = (static_cast<double>(j) + 0.5) * c;
        if (point_segment_distance_sq(p, A, u, len) <= R2) {
          idx[ax] = j;
          visit(idx);
        }
      }
    } else {
      const int ax = others[0], ay = others[1];
      for (std::int64_t j = olo[0]; j <= ohi[0]; ++j) {
        p[ax] = (static_cast<double>(j) + 0.5) * c;
        idx[ax] = j;
        for (std::int64_t k = olo[1]; k <= ohi[1]; ++k) {
          p[ay] = (static_cast<double>(k) + 0.5) * c;
          if (point_segment_distance_sq(p, A, u, len) <= R2) {
            idx[ay] = k;
            visit(idx);
          }
        }
      }
    }
  }
}

}  // namespace

std::uint64_t Census::cells_at_least(std::size_t r) const {
  std::uint64_t n = 0;
  for (std::size_t c = std::max<std::size_t>(r, 1); c < histogram.size(); ++c) n += histogram[c];
  return n;
}

double Census::measure_at_least(std::size_t r) const {
  return static_cast<double>(cells_at_least(r)) * std::pow(cell, dim);
}

double Census::max_norm_at_least(std::size_t r) const {
  double m = 0.0;
  for (std::size_t c = std::max<std::size_t>(r, 1); c < max_norm.size(); ++c)
    if (histogram[c]) m = std::max(m, max_norm[c]);
  return m;
}

Census tube_census(const TubeFamily& fam, double cell, double R, std::uint64_t max_cells) {
  if (!(cell > 0.0)) throw InvalidArgument("tube_census: cell must be positive");
  if (!(R > 0.0)) throw InvalidArgument("tube_census: membership radius must be positive");
  Census out;
  out.dim = fam.dim;
  out.cell = cell;
  out.membership_radius = R;
  out.tubes = fam.size();
  out.histogram.assign(fam.size() + 1, 0);
  out.max_norm.assign(fam.size() + 1, 0.0);
  if (fam.tubes.empty()) return out;

  const GridFrame f = frame_for(fam, cell, R);
  const int d = f.dim;
  std::uint64_t layer = 1;
  for (int x = 0; x + 1 < d; ++x) layer *= f.extent[x];
  if (layer > max_cells)
    throw ResourceCapExceeded("tube_census: one layer needs " + std::to_string(layer) + " cells (cap " +
                              std::to_string(max_cells) + "); use a larger cell size");
  const std::uint64_t depth = std::max<std::uint64_t>(1, std::min<std::uint64_t>(f.extent[d - 1], max_cells / layer));
  std::vector<std::uint32_t> counts(layer * depth);

  // Per-tube extent along the last axis lets each slab skip tubes that
  // cannot reach it.
  std::vector<std::pair<double, double>> span(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const double a = fam.tubes[i].anchor()[d - 1], b = fam.tubes[i].end()[d - 1];
    span[i] = {std::min(a, b) - R, std::max(a, b) + R};
  }

  for (std::int64_t s0 = f.lo[d - 1]; s0 <= f.hi[d - 1]; s0 += static_cast<std::int64_t>(depth)) {
    const std::int64_t s1 = std::min<std::int64_t>(f.hi[d - 1], s0 + static_cast<std::int64_t>(depth) - 1);
    const double zlo = s0 * cell, zhi = (s1 + 1) * cell;
    std::fill(counts.begin(), counts.end(), 0u);
    parallel::for_each_index(fam.size(), [&](std::size_t i) {
      if (span[i].second < zlo || span[i].first > zhi) return;
      rasterize(fam.tubes[i], f, R, s0, s1, [&](const std::array<std::int64_t, 3>& idx) {
        std::uint64_t lin = static_cast<std::uint64_t>(idx[d - 1] - s0);
        for (int x = d - 2; x >= 0; --x) lin = lin * f.extent[x] + static_cast<std::uint64_t>(idx[x] - f.lo[x]);
        std::atomic_ref<std::uint32_t>(counts[lin]).fetch_add(1, std::memory_order_relaxed);
      });
    });
    const std::uint64_t used = layer * static_cast<std::uint64_t>(s1 - s0 + 1);
    for (std::uint64_t lin = 0; lin < used; ++lin) {
      const std::uint32_t k = counts[lin];
      if (!k) continue;
      ++out.histogram[k];
      std::uint64_t rest = lin;
      double n2 = 0.0;
      for (int x = 0; x < d; ++x) {
        const std::uint64_t ext = x == d - 1 ? ~std::uint64_t{0} : f.extent[x];
        const std::int64_t base = x == d - 1 ? s0 : f.lo[x];
        const std::int64_t j = base + static_cast<std::int64_t>(x == d - 1 ? rest : rest % ext);
        if (x != d - 1) rest /= ext;
        const double cx = (static_cast<double>(j) + 0.5) * cell;
        n2 += cx * cx;
      }
      out.max_norm[k] = std::max(out.max_norm[k], std::sqrt(n2));
    }
  }
  return out;
}

std::vector<std::uint64_t> dyadic_r(std::size_t L) {
  std::vector<std::uint64_t> r{1};
  while (r.back() < L) r.push_back(r.back() * 2);
  return r;
}

RichnessProfile profile_from_census(const Census& census, double delta, const std::vector<std::uint64_t>& r_list) {
  RichnessProfile p;
  p.delta = delta;
  p.cell = census.cell;
  p.L = census.tubes;
  p.dim = census.dim;
  for (std::uint64_t r : r_list) {
    if (r < 1) throw InvalidArgument("richness profile: r must be >= 1");
    p.r.push_back(r);
    p.measure.push_back(r > census.tubes ? 0.0 : census.measure_at_least(r));
  }
  return p;
}

RichnessProfile rich_profile(const TubeFamily& fam, double cell, const std::vector<std::uint64_t>& r_list,
                             std::uint64_t max_cells) {
  const double R = fam.radius + 0.5 * std::sqrt(static_cast<double>(fam.dim)) * cell;
  return profile_from_census(tube_census(fam, cell, R, max_cells), fam.radius, r_list);
}

double union_volume(const TubeFamily& fam, double cell, double inflate, std::uint64_t max_cells) {
  return tube_census(fam, cell, inflate * fam.radius, max_cells).measure_at_least(1);
}

double tube_measure(int dim, double length, double R) {
  if (dim == 2) return 2.0 * R * length + std::numbers::pi * R * R;
  return std::numbers::pi * R * R * length + 4.0 / 3.0 * std::numbers::pi * R * R * R;
}

double pair_intersection_measure(const Tube& s, const Tube& t, double R) {
  if (segment_distance(s, t) > 2.0 * R) return 0.0;
  const int d = s.dim();
  const double full = std::min(tube_measure(d, s.length(), R), tube_measure(d, t.length(), R));
  const double sn = std::sin(direction_gap(s, t));
  const double cd = d == 2 ? 4.0 : 16.0 / 3.0;
  const double transversal = cd * std::pow(R, d);
  if (transversal >= full * sn) return full;
  return transversal / sn;
}

double pair_intersection_grid(const Tube& s, const Tube& t, double R, double cell) {
  TubeFamily one = make_family(s.dim(), s.radius(), {s});
  const GridFrame fs = frame_for(one, cell, R);
  one = make_family(t.dim(), t.radius(), {t});
  const GridFrame ft = frame_for(one, cell, R);
  std::uint64_t hits = 0;
  const double R2 = R * R;
  GridFrame f = fs;
  for (int x = 0; x < f.dim; ++x) {
    f.lo[x] = std::max(fs.lo[x], ft.lo[x]);
    f.hi[x] = std::min(fs.hi[x], ft.hi[x]);
    if (f.lo[x] > f.hi[x]) return 0.0;
  }
  rasterize(s, f, R, f.lo[f.dim - 1], f.hi[f.dim - 1], [&](const std::array<std::int64_t, 3>& idx) {
    Point p = Point::zero(f.dim);
    for (int x = 0; x < f.dim; ++x) p[x] = (static_cast<double>(idx[x]) + 0.5) * cell;
    if (t.axis_distance_sq(p) <= R2) ++hits;
  });
  return static_cast<double>(hits) * std::pow(cell, f.dim);
}

double pairwise_intersection_sum(const TubeFamily& fam, double inflate) {
  const double R = inflate * fam.radius;
  const std::size_t n = fam.size();
  const int d = fam.dim;
  std::vector<std::array<double, 6>> box(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = fam.tubes[i].anchor(), b = fam.tubes[i].end();
    for (int x = 0; x < d; ++x) {
      box[i][x] = std::min(a[x], b[x]) - R;
      box[i][3 + x] = std::max(a[x], b[x]) + R;
    }
  }
  return parallel::reduce(n, 0.0, [&](std::size_t b, std::size_t e) {
    double part = 0.0;
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        bool overlap = true;
        for (int x = 0; x < d && overlap; ++x)
          overlap = box[i][x] <= box[j][3 + x] && box[j][x] <= box[i][3 + x];
        if (overlap) part += pair_intersection_measure(fam.tubes[i], fam.tubes[j], R);
      }
    return part;
  });
}

double fit_richness_exponent(const RichnessProfile& profile) {
  std::vector<double> x, y;
  const double top = static_cast<double>(profile.L) / 4.0;
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    const double r = static_cast<double>(profile.r[i]);
    if (r < 4.0 || r > top || !(profile.measure[i] > 0.0)) continue;
    x.push_back(std::log(r));
    y.push_back(std::log(profile.measure[i]));
  }
  if (x.size() < 3)
    throw InvalidArgument("fit_richness_exponent: only " + std::to_string(x.size()) +
                          " nonzero entries with r in [4, L/4]; need 3");
  return fit_line(x, y).slope;
}

BoundKind parse_bound(std::string_view name) {
  if (name == "weak") return BoundKind::weak;
  if (name == "guess") return BoundKind::guess;
  if (name == "szt") return BoundKind::szt;
  if (name == "cordoba") return BoundKind::cordoba;
  if (name == "weak_planar") return BoundKind::weak_planar;
  throw InvalidArgument("unknown bound '" + std::string(name) + "' (weak, guess, szt, cordoba, weak_planar)");
}

std::string_view bound_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::weak: return "weak";
    case BoundKind::guess: return "guess";
    case BoundKind::szt: return "szt";
    case BoundKind::cordoba: return "cordoba";
    case BoundKind::weak_planar: return "weak_planar";
  }
  return "";
}

double bound_value(BoundKind kind, double delta, double L, double r) {
  switch (kind) {
    case BoundKind::weak: return delta * delta * std::pow(L, 1.5) / (r * r);
    case BoundKind::guess: return delta * delta * delta * (std::pow(L, 1.5) / (r * r) + L / r);
    case BoundKind::szt: return delta * delta * delta * L * L / (r * r * r);
    case BoundKind::cordoba: return delta * L * std::log(L) / (r * r);
    case BoundKind::weak_planar: return delta * delta * delta * L * L / (r * r);
  }
  return 0.0;
}

BoundCheck verify_bound(const RichnessProfile& profile, BoundKind kind) {
  BoundCheck out;
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    BoundRow row;
    row.r = profile.r[i];
    row.measure = profile.measure[i];
    row.bound = bound_value(kind, profile.delta, static_cast<double>(profile.L), static_cast<double>(row.r));
    row.ratio = row.bound > 0.0 ? row.measure / row.bound : 0.0;
    out.max_ratio = std::max(out.max_ratio, row.ratio);
    out.rows.push_back(row);
  }
  return out;
}

double bush_radius_check(const TubeFamily& fam, double cell, std::uint64_t r, std::uint64_t max_cells) {
  const double R = fam.radius + 0.5 * std::sqrt(static_cast<double>(fam.dim)) * cell;
  return tube_census(fam, cell, R, max_cells).max_norm_at_least(r);
}

double bush_radius_bound(std::uint64_t r, double cell) {
  return 10.0 / std::sqrt(static_cast<double>(r)) + std::sqrt(3.0) * cell;
}

}  // namespace gmt
