#include "gmt/config_energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gmt/errors.hpp"
#include "gmt/grid.hpp"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"

namespace gmt {

namespace {

using u128 = unsigned __int128;

// N^p, saturating at 2^64 - 1.
std::uint64_t ipow_sat(std::uint64_t n, int p) {
  u128 r = 1;
  for (int i = 0; i < p; ++i) {
    r *= n;
    if (r > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(r);
}

// Number of k-tuples of distinct indices, saturating.
std::uint64_t falling_sat(std::uint64_t n, int k) {
  u128 r = 1;
  for (int i = 0; i < k; ++i) {
    if (n < static_cast<std::uint64_t>(i)) return 0;
    r *= (n - i);
    if (r > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(r);
}

void check_k(const DiscreteMeasure& m, int k) {
  if (k < 2 || k > m.dim() + 1)
    throw InvalidArgument("k must lie in {2, ..., d+1}; got k = " + std::to_string(k) + " in dimension " +
                          std::to_string(m.dim()));
}

// Index sampling proportional to the measure weights.
class AtomSampler {
 public:
  explicit AtomSampler(const DiscreteMeasure& m) : uniform_(m.is_uniform()), n_(m.size()) {
    if (!uniform_) {
      cdf_.resize(n_);
      double s = 0.0;
      for (std::size_t i = 0; i < n_; ++i) cdf_[i] = (s += m.weight(i));
    }
  }
  std::size_t operator()(CounterStream& rs) const {
    if (uniform_) return static_cast<std::size_t>(rs.below(n_));
    const double u = rs.uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), n_ - 1);
  }

 private:
  bool uniform_;
  std::size_t n_;
  std::vector<double> cdf_;
};

bool has_repeat(std::span<const std::size_t> idx) {
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (idx[i] == idx[j]) return true;
  return false;
}

// Draws a k-tuple of indices; with `distinct` set, rejects repeats.
void sample_tuple(const AtomSampler& draw, CounterStream& rs, bool distinct, std::span<std::size_t> out) {
  do {
    for (auto& i : out) i = draw(rs);
  } while (distinct && has_repeat(out));
}

// Decodes tuple number t into base-N digits; returns false for tuples with
// repeats when `distinct` is set.
bool decode_tuple(std::uint64_t t, std::size_t n, bool distinct, std::span<std::size_t> out) {
  for (auto& i : out) {
    i = static_cast<std::size_t>(t % n);
    t /= n;
  }
  return !(distinct && has_repeat(out));
}

void fill_vector(const DiscreteMeasure& m, std::span<const std::size_t> idx, double* out) {
  const std::size_t k = idx.size();
  std::size_t c = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) out[c++] = distance(m[idx[i]], m[idx[j]]);
}

// k = 2 case of close_tuple_sum on a dense grid of side delta stored in
// CSR order. Each unordered cell pair is visited once and off-diagonal
// atom pairs are counted twice. Returns false when the grid would be much
// larger than the atom count.
template <class T>
bool close_pair_sum_dense(const MergedAtoms& atoms, const std::vector<T>& w, double delta, T& result) {
  const int dim = atoms.dim;
  const std::size_t n = atoms.size();
  if (n == 0 || !(delta > 0.0)) return false;
  std::array<double, 3> lo{};
  std::array<std::int64_t, 3> ext{1, 1, 1};
  for (int x = 0; x < dim; ++x) {
    double a = atoms.coords[x], b = a;
    for (std::size_t i = 0; i < n; ++i) {
      a = std::min(a, atoms.coords[i * dim + x]);
      b = std::max(b, atoms.coords[i * dim + x]);
    }
    lo[x] = a;
    ext[x] = static_cast<std::int64_t>(std::floor((b - a) / delta)) + 1;
  }
  const double cells_d = static_cast<double>(ext[0]) * static_cast<double>(ext[1]) * static_cast<double>(ext[2]);
  if (cells_d > 4.0 * static_cast<double>(n) + 1024.0) return false;
  const auto cells = static_cast<std::size_t>(cells_d);

  auto cell_of = [&](std::size_t i) {
    std::size_t c = 0;
    for (int x = dim - 1; x >= 0; --x) {
      auto v = static_cast<std::int64_t>(std::floor((atoms.coords[i * dim + x] - lo[x]) / delta));
      v = std::clamp<std::int64_t>(v, 0, ext[x] - 1);
      c = c * static_cast<std::size_t>(ext[x]) + static_cast<std::size_t>(v);
    }
    return c;
  };
  std::vector<std::size_t> start(cells + 1, 0), cell_id(n);
  for (std::size_t i = 0; i < n; ++i) ++start[(cell_id[i] = cell_of(i)) + 1];
  for (std::size_t c = 0; c < cells; ++c) start[c + 1] += start[c];
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  std::vector<double> xs(n * dim);
  std::vector<T> ws(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t slot = fill[cell_id[i]]++;
    for (int x = 0; x < dim; ++x) xs[slot * dim + x] = atoms.coords[i * dim + x];
    ws[slot] = w[i];
  }

  // Forward half of the 3^dim neighbourhood: offsets that are
  // lexicographically positive, plus the cell itself.
  std::vector<std::array<int, 3>> forward;
  for (int a = -1; a <= 1; ++a)
    for (int b = (dim >= 2 ? -1 : 0); b <= (dim >= 2 ? 1 : 0); ++b)
      for (int c = (dim >= 3 ? -1 : 0); c <= (dim >= 3 ? 1 : 0); ++c) {
        const std::array<int, 3> o{a, b, c};
        const std::array<int, 3> lex{o[dim - 1], dim >= 2 ? o[dim - 2] : 0, dim >= 3 ? o[dim - 3] : 0};
        if (lex > std::array<int, 3>{0, 0, 0}) forward.push_back(o);
      }
  const double d2 = delta * delta;
  auto near_sq = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (int x = 0; x < dim; ++x) {
      const double t = xs[i * dim + x] - xs[j * dim + x];
      s += t * t;
    }
    return s <= d2;
  };
  result = parallel::reduce(
      cells, T{},
      [&](std::size_t cb, std::size_t ce) {
        T part{};
        for (std::size_t c = cb; c < ce; ++c) {
          const std::size_t b0 = start[c], b1 = start[c + 1];
          if (b0 == b1) continue;
          std::array<std::int64_t, 3> ci{};
          std::size_t r = c;
          for (int x = 0; x < dim; ++x) {
            ci[x] = static_cast<std::int64_t>(r % static_cast<std::size_t>(ext[x]));
            r /= static_cast<std::size_t>(ext[x]);
          }
          // Same cell: diagonal once, off-diagonal twice.
          for (std::size_t i = b0; i < b1; ++i) {
            T off{};
            for (std::size_t j = i + 1; j < b1; ++j)
              if (near_sq(i, j)) off += ws[j];
            part += ws[i] * ws[i] + T(2) * ws[i] * off;
          }
          for (const auto& o : forward) {
            std::size_t nc = 0;
            bool inside = true;
            for (int x = dim - 1; x >= 0 && inside; --x) {
              const std::int64_t v = ci[x] + o[x];
              inside = v >= 0 && v < ext[x];
              nc = nc * static_cast<std::size_t>(ext[x]) + static_cast<std::size_t>(v);
            }
            if (!inside) continue;
            const std::size_t e0 = start[nc], e1 = start[nc + 1];
            for (std::size_t i = b0; i < b1; ++i) {
              T cross{};
              for (std::size_t j = e0; j < e1; ++j)
                if (near_sq(i, j)) cross += ws[j];
              part += T(2) * ws[i] * cross;
            }
          }
        }
        return part;
      },
      [](T x, T y) { return x + y; });
  return true;
}

// Sum over ordered k-tuples of pairwise delta-close atoms of the product of
// atom weights, by recursive filtering of candidate lists.
template <class T>
T close_tuple_sum(const MergedAtoms& atoms, const std::vector<T>& w, int k, double delta) {
  if (k == 2) {
    T dense{};
    if (close_pair_sum_dense(atoms, w, delta, dense)) return dense;
  }
  const int dim = atoms.dim;
  SpatialIndex index(dim, delta > 0.0 ? delta : 1.0);
  for (std::size_t i = 0; i < atoms.size(); ++i) index.insert(atoms.at(i), static_cast<std::uint32_t>(i));
  const double d2 = delta * delta;
  auto close = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (int x = 0; x < dim; ++x) {
      const double t = atoms.coords[a * dim + x] - atoms.coords[b * dim + x];
      s += t * t;
    }
    return s <= d2;
  };

  auto rec = [&](auto&& self, const std::vector<std::uint32_t>& cands, int remaining) -> T {
    T total{};
    if (remaining == 1) {
      for (auto b : cands) total += w[b];
      return total;
    }
    std::vector<std::uint32_t> next;
    for (auto b : cands) {
      next.clear();
      for (auto c : cands)
        if (close(b, c)) next.push_back(c);
      total += w[b] * self(self, next, remaining - 1);
    }
    return total;
  };

  return parallel::reduce(
      atoms.size(), T{},
      [&](std::size_t b, std::size_t e) {
        T part{};
        std::vector<std::uint32_t> cands;
        for (std::size_t a = b; a < e; ++a) {
          if (k == 2) {
            T near{};
            index.for_each_candidate(atoms.at(a), delta, [&](std::uint32_t id) {
              if (close(a, id)) near += w[id];
            });
            part += w[a] * near;
            continue;
          }
          // Candidate order is fixed by the index layout, so sums are
          // reproducible without sorting.
          cands.clear();
          index.for_each_candidate(atoms.at(a), delta, [&](std::uint32_t id) {
            if (close(a, id)) cands.push_back(id);
          });
          part += w[a] * rec(rec, cands, k - 1);
        }
        return part;
      },
      [](T x, T y) { return x + y; });
}

}  // namespace

std::vector<double> config_vector(std::span<const Point> tuple) {
  std::vector<double> out;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j) out.push_back(distance(tuple[i], tuple[j]));
  return out;
}

CellCount config_cells(const DiscreteMeasure& m, int k, double delta, const EnumerationPolicy& policy) {
  check_k(m, k);
  if (!(delta > 0.0)) throw InvalidArgument("config_cells: delta must be > 0");
  const std::size_t n = m.size();
  const int D = k * (k - 1) / 2;
  const std::uint64_t total = ipow_sat(n, k);
  if (policy.distinct && falling_sat(n, k) == 0) throw InvalidArgument("config_cells: fewer than k distinct points");

  Box box;
  box.dim = D;
  const double diam = m.cloud().diameter();
  for (int a = 0; a < D; ++a) {
    box.lower[a] = 0.0;
    box.upper[a] = diam + 1.0;
  }
  GridCounter counter(D, delta, box);
  std::vector<std::size_t> idx(k);
  double vec[kMaxGridDim];
  CellCount out;
  if (total <= policy.cap) {
    for (std::uint64_t t = 0; t < total; ++t) {
      if (!decode_tuple(t, n, policy.distinct, idx)) continue;
      fill_vector(m, idx, vec);
      counter.add(std::span<const double>(vec, D));
      ++out.tuples;
    }
  } else {
    if (!policy.allow_sampling)
      throw ResourceCapExceeded("config_cells: " + std::to_string(n) + "^" + std::to_string(k) +
                                " tuples exceed cap " + std::to_string(policy.cap));
    const AtomSampler draw(m);
    const std::uint64_t key = derive_key(policy.seed, "config_cells");
    for (std::size_t s = 0; s < policy.samples; ++s) {
      CounterStream rs(key, s);
      sample_tuple(draw, rs, policy.distinct, idx);
      fill_vector(m, idx, vec);
      counter.add(std::span<const double>(vec, D));
    }
    out.exact = false;
    out.tuples = policy.samples;
  }
  out.cells = counter.occupied();
  return out;
}

PushedMeasure push_measure(const DiscreteMeasure& m, const RigidMotion& g) {
  if (g.dim() != m.dim()) throw DimensionMismatch("push_measure: motion and measure dimensions differ");
  if (g.has_translation()) throw InvalidArgument("push_measure: g must have zero translation");
  const std::size_t n = m.size();
  const int d = m.dim();
  std::vector<Point> gv(n);
  for (std::size_t v = 0; v < n; ++v) gv[v] = g.apply_linear(m[v]);
  std::vector<double> coords;
  std::vector<double> weights;
  coords.reserve(n * n * d);
  weights.reserve(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const Point z = m[u] - gv[v];
      for (int a = 0; a < d; ++a) coords.push_back(z[a]);
      weights.push_back(m.weight(u) * m.weight(v));
    }
  PushedMeasure out;
  out.atoms = merge_atoms(d, coords, weights, kAtomMergeTol);
  out.support_size = n;
  out.uniform = m.is_uniform();
  return out;
}

EnergyResult group_energy(const DiscreteMeasure& m, const RigidMotion& g, int k, double delta,
                          const EnergyPolicy& policy) {
  check_k(m, k);
  if (!(delta >= 0.0)) throw InvalidArgument("group_energy: delta must be >= 0");
  if (g.dim() != m.dim()) throw DimensionMismatch("group_energy: motion and measure dimensions differ");
  const std::size_t n = m.size();
  const std::uint64_t tuples = ipow_sat(n, 2 * k);
  EnergyResult out;
  if (tuples <= policy.cap) {
    const PushedMeasure pm = push_measure(m, g);
    if (pm.uniform && tuples < ~std::uint64_t{0}) {
      out.numerator = close_tuple_sum<std::uint64_t>(pm.atoms, pm.counts(), k, delta);
      out.has_numerator = true;
      out.value = static_cast<double>(out.numerator) / static_cast<double>(tuples);
    } else {
      out.value = close_tuple_sum<double>(pm.atoms, pm.atoms.weights, k, delta);
    }
    out.value = std::clamp(out.value, 0.0, 1.0);
    out.samples = tuples;
    return out;
  }
  if (!policy.allow_sampling)
    throw ResourceCapExceeded("group_energy: " + std::to_string(n) + "^" + std::to_string(2 * k) +
                              " tuples exceed cap " + std::to_string(policy.cap));
  const AtomSampler draw(m);
  const std::uint64_t key = derive_key(policy.seed, "group_energy");
  const double d2 = delta * delta;
  const Moments mo = parallel::reduce(policy.samples, Moments{}, [&](std::size_t b, std::size_t e) {
    Moments part;
    std::vector<Point> z(k);
    for (std::size_t s = b; s < e; ++s) {
      CounterStream rs(key, s);
      for (int i = 0; i < k; ++i) {
        const std::size_t x = draw(rs), y = draw(rs);
        z[i] = m[x] - g.apply_linear(m[y]);
      }
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j) ok = norm_sq(z[i] - z[j]) <= d2;
      part.add(ok ? 1.0 : 0.0);
    }
    return part;
  });
  out.exact = false;
  out.samples = policy.samples;
  out.value = mo.mean();
  out.std_error = mo.std_error();
  return out;
}

RhsResult energy_rhs(const DiscreteMeasure& m, const RigidMotion& g, int k, double delta, double radius_factor) {
  check_k(m, k);
  if (!(delta >= 0.0)) throw InvalidArgument("energy_rhs: delta must be >= 0");
  const PushedMeasure pm = push_measure(m, g);
  const MergedAtoms& at = pm.atoms;
  const int dim = at.dim;
  const double r = radius_factor * delta;
  const double r2 = r * r;
  SpatialIndex index(dim, r > 0.0 ? r : 1.0);
  for (std::size_t i = 0; i < at.size(); ++i) index.insert(at.at(i), static_cast<std::uint32_t>(i));

  const std::size_t na = at.size();
  std::vector<double> ball(na, 0.0);
  std::vector<std::uint64_t> ball_count(na, 0);
  parallel::for_each_index(na, [&](std::size_t a) {
    double s = 0.0;
    std::uint64_t c = 0;
    index.for_each_candidate(at.at(a), r, [&](std::uint32_t b) {
      double d = 0.0;
      for (int x = 0; x < dim; ++x) {
        const double t = at.coords[a * dim + x] - at.coords[b * dim + x];
        d += t * t;
      }
      if (d <= r2) {
        s += at.weights[b];
        c += at.multiplicity[b];
      }
    });
    ball[a] = s;
    ball_count[a] = c;
  });

  RhsResult out;
  double v = 0.0;
  for (std::size_t a = 0; a < na; ++a) v += at.weights[a] * std::pow(ball[a], k - 1);
  out.value = v;
  if (pm.uniform && ipow_sat(m.size(), 2 * k) < ~std::uint64_t{0}) {
    u128 num = 0;
    for (std::size_t a = 0; a < na; ++a) {
      u128 term = at.multiplicity[a];
      for (int i = 0; i < k - 1; ++i) term *= ball_count[a];
      num += term;
    }
    out.numerator = static_cast<std::uint64_t>(num);
    out.has_numerator = true;
    out.value = static_cast<double>(out.numerator) / static_cast<double>(ipow_sat(m.size(), 2 * k));
  }
  return out;
}

Estimate haar_energy(const DiscreteMeasure& m, int k, double delta, std::size_t g_samples, std::uint64_t seed,
                     const EnergyPolicy& policy) {
  if (m.dim() != 2 && m.dim() != 3) throw InvalidArgument("haar_energy: dimension must be 2 or 3");
  if (g_samples < 1) throw InvalidArgument("haar_energy: need at least one motion");
  const std::uint64_t key = derive_key(seed, "haar_energy");
  std::vector<double> values(g_samples);
  parallel::for_each_index(g_samples, [&](std::size_t i) {
    CounterStream rs(key, i);
    const RigidMotion g = haar_orthogonal(m.dim(), rs);
    EnergyPolicy p = policy;
    p.seed = derive_key(seed, static_cast<std::uint64_t>(i));
    values[i] = group_energy(m, g, k, delta, p).value;
  });
  Moments mo;
  for (double v : values) mo.add(v);
  return mo.estimate();
}

Estimate nu_l2_mass(const DiscreteMeasure& m, int k, double delta, const EnumerationPolicy& policy) {
  check_k(m, k);
  if (!(delta > 0.0)) throw InvalidArgument("nu_l2_mass: delta must be > 0");
  const std::size_t n = m.size();
  const int D = k * (k - 1) / 2;
  const double scale = std::pow(delta, -D);
  const std::uint64_t total = ipow_sat(n, k);
  if (policy.distinct && falling_sat(n, k) == 0) throw InvalidArgument("nu_l2_mass: fewer than k distinct points");

  auto within = [&](const double* a, const double* b) {
    for (int x = 0; x < D; ++x)
      if (std::abs(a[x] - b[x]) > delta) return false;
    return true;
  };

  if (total <= policy.cap) {
    std::vector<double> coords, weights;
    std::vector<std::size_t> idx(k);
    double vec[kMaxGridDim];
    for (std::uint64_t t = 0; t < total; ++t) {
      if (!decode_tuple(t, n, policy.distinct, idx)) continue;
      fill_vector(m, idx, vec);
      coords.insert(coords.end(), vec, vec + D);
      double w = 1.0;
      for (auto i : idx) w *= m.weight(i);
      weights.push_back(w);
    }
    const double mass = compensated_sum(weights);
    for (double& w : weights) w /= mass;
    const MergedAtoms at = merge_atoms(D, coords, weights, kAtomMergeTol);
    SpatialIndex index(D, delta);
    for (std::size_t i = 0; i < at.size(); ++i) index.insert(at.at(i), static_cast<std::uint32_t>(i));
    const double p = parallel::reduce(at.size(), 0.0, [&](std::size_t b, std::size_t e) {
      double part = 0.0;
      for (std::size_t a = b; a < e; ++a) {
        double near = 0.0;
        index.for_each_candidate(at.at(a), delta, [&](std::uint32_t c) {
          if (within(at.at(a).data(), at.at(c).data())) near += at.weights[c];
        });
        part += at.weights[a] * near;
      }
      return part;
    });
    return {scale * p, 0.0, static_cast<std::size_t>(total)};
  }
  if (!policy.allow_sampling)
    throw ResourceCapExceeded("nu_l2_mass: " + std::to_string(n) + "^" + std::to_string(k) + " tuples exceed cap " +
                              std::to_string(policy.cap));
  const AtomSampler draw(m);
  const std::uint64_t key = derive_key(policy.seed, "nu_l2_mass");
  const Moments mo = parallel::reduce(policy.samples, Moments{}, [&](std::size_t b, std::size_t e) {
    Moments part;
    std::vector<std::size_t> i1(k), i2(k);
    double v1[kMaxGridDim], v2[kMaxGridDim];
    for (std::size_t s = b; s < e; ++s) {
      CounterStream rs(key, s);
      sample_tuple(draw, rs, policy.distinct, i1);
      sample_tuple(draw, rs, policy.distinct, i2);
      fill_vector(m, i1, v1);
      fill_vector(m, i2, v2);
      part.add(within(v1, v2) ? 1.0 : 0.0);
    }
    return part;
  });
  return mo.estimate(scale);
}

}  // namespace gmt
