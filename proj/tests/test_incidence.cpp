#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gmt/errors.hpp"
#include "gmt/incidence.hpp"
#include "gmt/rng.hpp"

using namespace gmt;

namespace {

constexpr double kPi = std::numbers::pi;

double dist2d(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

TEST_CASE("rotation coordinates of simple motions") {
  MotionCoords c = motion_to_coords(RigidMotion::rotation_about(kPi, Point(0.0, 0.0)));
  CHECK(c.valid);
  CHECK(c.x0[0] == doctest::Approx(0.0));
  CHECK(c.x0[1] == doctest::Approx(0.0));
  CHECK(std::abs(c.z) < 1e-12);

  c = motion_to_coords(RigidMotion::rotation_about(0.5 * kPi, Point(1.0, 2.0)));
  CHECK(c.x0[0] == doctest::Approx(1.0));
  CHECK(c.x0[1] == doctest::Approx(2.0));
  CHECK(c.z == doctest::Approx(1.0));

  // x -> -x + (2, 0) fixes (1, 0).
  c = motion_to_coords(RigidMotion::rotation2d(kPi, Point(2.0, 0.0)));
  CHECK(c.x0[0] == doctest::Approx(1.0));
  CHECK(std::abs(c.x0[1]) < 1e-12);
  CHECK(std::abs(c.z) < 1e-12);

  CHECK_FALSE(motion_to_coords(RigidMotion::translation(Point(1.0, 0.0))).valid);
  CHECK_THROWS_AS(motion_to_coords(RigidMotion::reflection2d(0.3)), InvalidArgument);
  CHECK_THROWS_AS(motion_to_coords(RigidMotion::identity(3)), InvalidArgument);
  CHECK_THROWS_AS(coords_to_motion(MotionCoords{}), InvalidArgument);
}

TEST_CASE("coordinates round-trip") {
  CounterStream rs(derive_key(5, "coords"), 0);
  for (int i = 0; i < 500; ++i) {
    const Point x0(6.0 * rs.uniform() - 3.0, 6.0 * rs.uniform() - 3.0);
    const double z = 40.0 * rs.uniform() - 20.0;
    const RigidMotion g = coords_to_motion(MotionCoords::from_point(Point(x0[0], x0[1], z)));
    // The fixed point is fixed and the angle is 2 arccot z.
    CHECK(dist2d(g.apply(x0), x0) < 1e-10);
    CHECK(std::tan(0.5 * g.angle()) * z == doctest::Approx(1.0).epsilon(1e-9));
    const MotionCoords back = motion_to_coords(g);
    CHECK(dist2d(back.x0, x0) < 1e-9);
    CHECK(back.z == doctest::Approx(z).epsilon(1e-10));
  }
}

TEST_CASE("pair lines carry x3 to x1") {
  CounterStream rs(derive_key(6, "pair"), 0);
  for (int i = 0; i < 100; ++i) {
    const Point x1(rs.uniform(), rs.uniform()), x3(rs.uniform() + 1.0, rs.uniform());
    const Line3 line = pair_line(x1, x3);
    CHECK_FALSE(line.degenerate);
    CHECK(line.direction[2] == 1.0);
    for (double t : {-10.0, -1.0, 0.3, 5.0}) {
      const Point p = line.at(t);
      CHECK(p[2] == doctest::Approx(t));
      const RigidMotion g = coords_to_motion(MotionCoords::from_point(p));
      CHECK(dist2d(g.apply(x3), x1) < 1e-9);
    }
  }
  const Line3 flat = pair_line(Point(0.5, 0.25), Point(0.5, 0.25));
  CHECK(flat.degenerate);
  const RigidMotion g = coords_to_motion(MotionCoords::from_point(flat.at(2.0)));
  CHECK(dist2d(g.apply(Point(0.5, 0.25)), Point(0.5, 0.25)) < 1e-12);
  CHECK_THROWS_AS(pair_line(Point(0.0, 0.0, 0.0), Point(1.0, 0.0)), DimensionMismatch);
}

TEST_CASE("pair tubes are clipped to the box") {
  const PointCloud F1(2, {Point(0.0, 0.0), Point(0.0, 0.1)});
  const PointCloud F2(2, {Point(1.0, 0.0), Point(1.0, 0.2), Point(1.0, 0.4)});
  const TubeFamily fam = build_pair_tubes(F1, F2, 0.01);
  CHECK(fam.size() == 6);
  CHECK(fam.dim == 3);
  for (const Tube& t : fam.tubes) {
    CHECK(t.radius() == 0.01);
    for (const Point& p : {t.anchor(), t.end()}) {
      CHECK(std::hypot(p[0], p[1]) <= 3.0 + 1e-9);
      CHECK(std::abs(p[2]) <= PairTubeOptions{}.z_bound + 1e-9);
    }
  }
  // The whole line through these two points stays far from the origin.
  const PointCloud far1(2, {Point(10.0, 0.0)}), far2(2, {Point(10.0, 0.5)});
  CHECK(build_pair_tubes(far1, far2, 0.01).size() == 0);
  CHECK_THROWS_AS(build_pair_tubes(PointCloud(2, {}), F2, 0.01), InvalidArgument);
}

TEST_CASE("translated pairs give parallel pair tubes") {
  const double d = 0.01;
  const PointCloud F1(2, {Point(0.0, 0.0), Point(0.0, 2 * d)});
  const PointCloud F2(2, {Point(1.0, 0.0), Point(1.0, 2 * d)});
  const TubeFamily fam = build_pair_tubes(F1, F2, d);
  const DirectionWitness w = direction_gap_witness(fam, d);
  CHECK(w.violations >= 1);
  CHECK(w.min_gap < 1e-12);
}

TEST_CASE("separated directions") {
  const double sep = 0.2;
  const std::vector<Point> dirs = separated_directions_3d(sep);
  CHECK(dirs.size() > 50);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    CHECK(norm(dirs[i]) == doctest::Approx(1.0));
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      CHECK(std::acos(std::min(1.0, std::abs(dot(dirs[i], dirs[j])))) >= sep - 1e-12);
  }
  CHECK_THROWS_AS(separated_directions_3d(2.0), InvalidArgument);
  CHECK_THROWS_AS(planar_bush(0.01, 100, 0.1), InvalidArgument);
}

TEST_CASE("richness profile of a planar bush") {
  const TubeFamily fam = planar_bush(0.01, 16, 0.1);
  std::vector<std::uint64_t> r = dyadic_r(16);
  r.push_back(32);
  const RichnessProfile p = rich_profile(fam, 0.005, r);
  CHECK(p.L == 16);
  for (std::size_t i = 1; i < p.r.size(); ++i) CHECK(p.measure[i] <= p.measure[i - 1]);
  CHECK(p.measure.back() == 0.0);
  CHECK(p.measure[0] > 0.0);

  // Halving the cell changes a mid-range entry by well under 30 percent.
  const RichnessProfile fine = rich_profile(fam, 0.0025, r);
  CHECK(fine.measure[2] == doctest::Approx(p.measure[2]).epsilon(0.3));
}

TEST_CASE("two perpendicular tubes meet in a square") {
  const double delta = 0.01, R = 3 * delta;
  const Tube a = Tube::centered(Point(0.0, 0.0), Point(1.0, 0.0), 0.5, R);
  const Tube b = Tube::centered(Point(0.0, 0.0), Point(0.0, 1.0), 0.5, R);
  const TubeFamily fam = make_family(2, R, {a, b});
  const RichnessProfile p = rich_profile(fam, delta / 16, {1, 2});
  CHECK(p.measure[1] == doctest::Approx(36 * delta * delta).epsilon(0.2));
  CHECK(pair_intersection_measure(a, b, R) == doctest::Approx(36 * delta * delta));
  CHECK(pair_intersection_grid(a, b, R, delta / 16) == doctest::Approx(36 * delta * delta).epsilon(0.1));

  const TubeFamily thin = make_family(2, delta,
                                      {a.with_radius(delta), b.with_radius(delta)});
  CHECK(pairwise_intersection_sum(thin, 3.0) == doctest::Approx(36 * delta * delta));
}

TEST_CASE("single tube measure") {
  const double rho = 0.01;
  const TubeFamily fam = make_family(2, rho, {Tube::centered(Point(0.2, 0.1), Point(1.0, 1.0), 1.0, rho)});
  const RichnessProfile p = rich_profile(fam, rho / 8, {1});
  CHECK(p.measure[0] == doctest::Approx(2 * rho * 1.0).epsilon(0.1));
  CHECK(tube_measure(2, 1.0, rho) == doctest::Approx(2 * rho + kPi * rho * rho));
  CHECK(tube_measure(3, 2.0, 0.5) == doctest::Approx(kPi * 0.25 * 2.0 + 4.0 / 3.0 * kPi * 0.125));
}

TEST_CASE("pair intersection measure against the grid") {
  const double R = 0.05;
  // Planar crossing at angle a: a parallelogram of area (2R)^2 / sin a.
  for (double a : {kPi / 2, kPi / 4, kPi / 6}) {
    const Tube s = Tube::centered(Point(0.0, 0.0), Point(1.0, 0.0), 2.0, R);
    const Tube t = Tube::centered(Point(0.0, 0.0), Point(std::cos(a), std::sin(a)), 2.0, R);
    const double exact = 4 * R * R / std::sin(a);
    CHECK(pair_intersection_measure(s, t, R) == doctest::Approx(exact));
    CHECK(pair_intersection_grid(s, t, R, R / 20) == doctest::Approx(exact).epsilon(0.05));
  }
  // Perpendicular cylinders: Steinmetz solid of volume 16 R^3 / 3.
  const Tube x = Tube::centered(Point(0.0, 0.0, 0.0), Point(1.0, 0.0, 0.0), 1.0, R);
  const Tube y = Tube::centered(Point(0.0, 0.0, 0.0), Point(0.0, 1.0, 0.0), 1.0, R);
  CHECK(pair_intersection_grid(x, y, R, R / 20) == doctest::Approx(16.0 / 3.0 * R * R * R).epsilon(0.05));
  // Far apart.
  const Tube far = Tube::centered(Point(0.0, 5.0, 0.0), Point(1.0, 0.0, 0.0), 1.0, R);
  CHECK(pair_intersection_measure(x, far, R) == 0.0);
  CHECK(pair_intersection_grid(x, far, R, R / 4) == 0.0);
  const TubeFamily disjoint = make_family(3, R / 3, {x.with_radius(R / 3), far.with_radius(R / 3)});
  CHECK(pairwise_intersection_sum(disjoint) == 0.0);
}

TEST_CASE("union volume") {
  const double rho = 0.01;
  const Tube a = Tube::centered(Point(0.0, 0.0), Point(1.0, 0.0), 1.0, rho);
  const Tube b = Tube::centered(Point(0.0, 1.0), Point(1.0, 0.0), 1.0, rho);
  const double one = union_volume(make_family(2, rho, {a}), rho / 8);
  CHECK(one == doctest::Approx(tube_measure(2, 1.0, 3 * rho)).epsilon(0.05));
  CHECK(union_volume(make_family(2, rho, {a, b}), rho / 8) == doctest::Approx(2 * one).epsilon(1e-3));
  CHECK_THROWS_AS(union_volume(make_family(2, rho, {a}), rho / 8, 3.0, 10), ResourceCapExceeded);
}

TEST_CASE("bush radius") {
  CHECK(bush_radius_bound(4, 0.0) == doctest::Approx(5.0));
  CHECK(bush_radius_bound(1, 1.0) == doctest::Approx(10.0 + std::sqrt(3.0)));
  const TubeFamily bush = origin_bush_3d(0.02);
  const double cell = 0.01;
  for (std::uint64_t r : {2, 4, 8}) CHECK(bush_radius_check(bush, cell, r) <= bush_radius_bound(r, cell));
}

TEST_CASE("angular fraction") {
  CHECK(tech_angular_fraction(0.0) == doctest::Approx(1.0));
  CHECK(tech_angular_fraction(2.0) == 0.0);
  for (double cut : {0.1, 0.5, 1.5}) {
    const int n = 200000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      const double theta = 2 * kPi * (i + 0.5) / n;
      if (std::abs(2 * std::sin(theta / 2)) >= cut) ++hits;
    }
    CHECK(tech_angular_fraction(cut) == doctest::Approx(static_cast<double>(hits) / n).epsilon(1e-4));
  }
}

TEST_CASE("dyadic r and exponent fit") {
  CHECK(dyadic_r(1) == std::vector<std::uint64_t>{1});
  CHECK(dyadic_r(5) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(dyadic_r(8) == std::vector<std::uint64_t>{1, 2, 4, 8});

  RichnessProfile p;
  p.L = 1024;
  p.r = dyadic_r(1024);
  for (auto r : p.r) p.measure.push_back(3.0 * std::pow(static_cast<double>(r), -1.5));
  CHECK(fit_richness_exponent(p) == doctest::Approx(-1.5).epsilon(1e-12));
  p.L = 32;  // only r = 4 and 8 in range
  CHECK_THROWS_AS(fit_richness_exponent(p), InvalidArgument);
}

TEST_CASE("bound names and values") {
  for (BoundKind k : {BoundKind::weak, BoundKind::guess, BoundKind::szt, BoundKind::cordoba, BoundKind::weak_planar})
    CHECK(parse_bound(bound_name(k)) == k);
  CHECK_THROWS_AS(parse_bound("strong"), InvalidArgument);
  CHECK(bound_value(BoundKind::weak, 0.1, 100.0, 2.0) == doctest::Approx(0.01 * 1000.0 / 4.0));
  CHECK(bound_value(BoundKind::szt, 0.1, 10.0, 1.0) == doctest::Approx(0.1));
  CHECK(bound_value(BoundKind::cordoba, 0.1, std::exp(1.0), 1.0) == doctest::Approx(0.1 * std::exp(1.0)));

  RichnessProfile p;
  p.delta = 0.1;
  p.L = 100;
  p.r = {1, 2};
  p.measure = {0.5, 0.25};
  const BoundCheck c = verify_bound(p, BoundKind::weak);
  REQUIRE(c.rows.size() == 2);
  CHECK(c.rows[0].ratio == doctest::Approx(0.05));
  CHECK(c.rows[1].ratio == doctest::Approx(0.1));
  CHECK(c.max_ratio == doctest::Approx(0.1));
}

TEST_CASE("family validation") {
  const Tube a = Tube::centered(Point(0.0, 0.0), Point(1.0, 0.0), 1.0, 0.1);
  CHECK_THROWS_AS(make_family(2, 0.2, {a}), InvalidArgument);
  CHECK_THROWS_AS(make_family(3, 0.1, {a}), DimensionMismatch);
  CHECK_THROWS_AS(make_family(2, 0.0, {}), InvalidArgument);
  const TubeFamily r = random_family_3d(0.05, 20, 1);
  CHECK(r.size() == 20);
  CHECK_THROWS_AS(random_family_3d(0.5, 1000, 1), InvalidArgument);
}
