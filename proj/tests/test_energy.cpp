#include <cmath>
#include <vector>

#include "doctest.h"
#include "gmt/config_energy.hpp"
#include "gmt/errors.hpp"
#include "gmt/ifs.hpp"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"

using namespace gmt;

namespace {

DiscreteMeasure random_cloud(std::uint64_t seed, std::size_t n, bool uniform = true) {
  CounterStream rs(derive_key(seed, "energy_cloud"), 0);
  std::vector<Point> pts;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rs.uniform(), y = rs.uniform();
    pts.emplace_back(x, y);
    w.push_back(0.5 + rs.uniform());
    total += w.back();
  }
  if (uniform) return DiscreteMeasure::uniform(PointCloud(2, pts));
  for (double& v : w) v /= total;
  // Renormalise so the weights sum to one within the constructor's check.
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += w[i];
  w.back() = 1.0 - s;
  return DiscreteMeasure(PointCloud(2, pts), w);
}

// Direct sum over all N^{2k} tuples (x_1..x_k, y_1..y_k).
double brute_energy(const DiscreteMeasure& m, const RigidMotion& g, int k, double delta) {
  const std::size_t n = m.size();
  std::vector<std::size_t> idx(2 * k, 0);
  double total = 0.0;
  while (true) {
    std::vector<Point> z(k);
    double w = 1.0;
    for (int i = 0; i < k; ++i) {
      z[i] = m[idx[i]] - g.apply(m[idx[k + i]]);
      w *= m.weight(idx[i]) * m.weight(idx[k + i]);
    }
    bool ok = true;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) ok = ok && distance(z[i], z[j]) <= delta;
    if (ok) total += w;
    int p = 0;
    while (p < 2 * k && ++idx[p] == n) idx[p++] = 0;
    if (p == 2 * k) break;
  }
  return total;
}

double brute_rhs(const DiscreteMeasure& m, const RigidMotion& g, int k, double r) {
  const std::size_t n = m.size();
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Point z = m[a] - g.apply(m[b]);
      double ball = 0.0;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          if (distance(m[c] - g.apply(m[d]), z) <= r) ball += m.weight(c) * m.weight(d);
      total += m.weight(a) * m.weight(b) * std::pow(ball, k - 1);
    }
  return total;
}

// delta^{-D} * P(|t - t'|_inf <= delta) over pairs of k-tuples.
double brute_nu(const DiscreteMeasure& m, int k, double delta) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> vecs;
  std::vector<double> ws;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<Point> tuple;
    double w = 1.0;
    for (auto i : idx) {
      tuple.push_back(m[i]);
      w *= m.weight(i);
    }
    vecs.push_back(config_vector(tuple));
    ws.push_back(w);
    int p = 0;
    while (p < k && ++idx[p] == n) idx[p++] = 0;
    if (p == k) break;
  }
  double total = 0.0;
  for (std::size_t a = 0; a < vecs.size(); ++a)
    for (std::size_t b = 0; b < vecs.size(); ++b) {
      bool ok = true;
      for (std::size_t x = 0; x < vecs[a].size(); ++x) ok = ok && std::abs(vecs[a][x] - vecs[b][x]) <= delta;
      if (ok) total += ws[a] * ws[b];
    }
  return std::pow(delta, -static_cast<double>(k * (k - 1) / 2)) * total;
}

}  // namespace

TEST_CASE("two-point energy is 3/8") {
  const DiscreteMeasure m = DiscreteMeasure::uniform(PointCloud(2, {Point(0.0, 0.0), Point(1.0, 0.0)}));
  const EnergyResult e = group_energy(m, RigidMotion::identity(2), 2, 0.1);
  CHECK(e.exact);
  REQUIRE(e.has_numerator);
  CHECK(e.numerator == 6);  // 6 of the 16 quadruples
  CHECK(e.value == 3.0 / 8.0);
  CHECK(brute_energy(m, RigidMotion::identity(2), 2, 0.1) == 3.0 / 8.0);
}

TEST_CASE("group energy matches brute force") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const bool uniform = seed % 2 == 0;
    const DiscreteMeasure m = random_cloud(seed, 4 + seed % 3, uniform);
    CounterStream rs(derive_key(seed, "g"), 0);
    const RigidMotion g = haar_orthogonal(2, rs);
    for (int k : {2, 3})
      for (double delta : {0.05, 0.2, 0.6}) {
        const EnergyResult e = group_energy(m, g, k, delta);
        CHECK(e.exact);
        CHECK(e.value == doctest::Approx(brute_energy(m, g, k, delta)).epsilon(1e-12));
        CHECK(energy_rhs(m, g, k, delta).value == doctest::Approx(brute_rhs(m, g, k, 2.5 * delta)).epsilon(1e-12));
      }
  }
}

TEST_CASE("3-d pair energy matches brute force") {
  CounterStream rs(derive_key(1, "3d"), 0);
  std::vector<Point> pts;
  for (int i = 0; i < 6; ++i) pts.emplace_back(rs.uniform(), rs.uniform(), rs.uniform());
  const DiscreteMeasure c = DiscreteMeasure::uniform(PointCloud(3, pts));
  const RigidMotion g = haar_orthogonal(3, rs);
  for (double delta : {0.1, 0.4, 2.0})
    CHECK(group_energy(c, g, 2, delta).value == doctest::Approx(brute_energy(c, g, 2, delta)).epsilon(1e-12));
}

TEST_CASE("energy inequality with the 2.5 delta ball holds on random clouds") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DiscreteMeasure m = random_cloud(100 + seed, 2 + seed % 7);
    CounterStream rs(derive_key(seed, "g"), 0);
    const RigidMotion g = haar_orthogonal(2, rs);
    for (int k : {2, 3})
      for (double delta : {0.05, 0.1, 0.3}) {
        const EnergyResult e = group_energy(m, g, k, delta);
        const RhsResult r = energy_rhs(m, g, k, delta);
        REQUIRE(e.has_numerator);
        REQUIRE(r.has_numerator);
        CHECK(e.numerator <= r.numerator);
      }
  }
}

TEST_CASE("pushed measure") {
  const DiscreteMeasure m = DiscreteMeasure::uniform(PointCloud(2, {Point(0.0, 0.0), Point(1.0, 0.0)}));
  const PushedMeasure pm = push_measure(m, RigidMotion::identity(2));
  CHECK(pm.atoms.size() == 3);  // 0 twice, +-(1, 0)
  std::uint64_t total = 0;
  for (auto c : pm.counts()) total += c;
  CHECK(total == 4);
  CHECK_THROWS_AS(push_measure(m, RigidMotion::translation(Point(0.1, 0.0))), InvalidArgument);
}

TEST_CASE("configuration cells and vectors") {
  const std::vector<Point> t{Point(0.0, 0.0), Point(3.0, 0.0), Point(0.0, 4.0)};
  const std::vector<double> v = config_vector(t);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 3.0);
  CHECK(v[1] == 4.0);
  CHECK(v[2] == 5.0);
  const DiscreteMeasure m = DiscreteMeasure::uniform(PointCloud(1, {Point(0.0), Point(1.0), Point(3.0)}));
  // Distances 0, 1, 2, 3 occupy four unit cells.
  CHECK(config_cells(m, 2, 1.0).cells == 4);
  EnumerationPolicy distinct;
  distinct.distinct = true;
  CHECK(config_cells(m, 2, 1.0, distinct).cells == 3);
}

TEST_CASE("configuration L2 mass matches brute force") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const DiscreteMeasure m = random_cloud(200 + seed, 5, seed % 2 == 0);
    for (int k : {2, 3})
      for (double delta : {0.05, 0.2})
        CHECK(nu_l2_mass(m, k, delta).value == doctest::Approx(brute_nu(m, k, delta)).epsilon(1e-10));
  }
}

TEST_CASE("sampling path agrees with exact enumeration") {
  const DiscreteMeasure m = random_cloud(7, 8);
  CounterStream rs(derive_key(7, "g"), 0);
  const RigidMotion g = haar_orthogonal(2, rs);
  const double exact = group_energy(m, g, 2, 0.3).value;
  EnergyPolicy p;
  p.cap = 10;
  p.samples = 200000;
  p.seed = 3;
  const EnergyResult s = group_energy(m, g, 2, 0.3, p);
  CHECK_FALSE(s.exact);
  CHECK(std::abs(s.value - exact) <= 4.0 * s.std_error);
  p.allow_sampling = false;
  CHECK_THROWS_AS(group_energy(m, g, 2, 0.3, p), ResourceCapExceeded);

  const double nu_exact = nu_l2_mass(m, 2, 0.2).value;
  EnumerationPolicy q;
  q.cap = 10;
  q.samples = 200000;
  const Estimate nu = nu_l2_mass(m, 2, 0.2, q);
  CHECK(std::abs(nu.value - nu_exact) <= 4.0 * nu.std_error);
  q.allow_sampling = false;
  CHECK_THROWS_AS(nu_l2_mass(m, 2, 0.2, q), ResourceCapExceeded);
}

TEST_CASE("Haar energy is reproducible across thread counts") {
  const DiscreteMeasure m = DiscreteMeasure::uniform(generate_ifs_cloud(IfsSystem::four_corner_cantor(), 2));
  parallel::set_threads(1);
  const Estimate a = haar_energy(m, 2, 0.1, 16, 5);
  parallel::set_threads(4);
  const Estimate b = haar_energy(m, 2, 0.1, 16, 5);
  parallel::set_threads(0);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value > 0.0);
}

TEST_CASE("energy argument validation") {
  const DiscreteMeasure m = random_cloud(1, 3);
  CHECK_THROWS_AS(group_energy(m, RigidMotion::identity(3), 2, 0.1), DimensionMismatch);
  CHECK_THROWS_AS(group_energy(m, RigidMotion::identity(2), 1, 0.1), InvalidArgument);
  CHECK_THROWS_AS(nu_l2_mass(m, 2, 0.0), InvalidArgument);
}
