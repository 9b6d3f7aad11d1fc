#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmt/errors.hpp"
#include "gmt/experiment.hpp"
#include "gmt/incidence.hpp"
#include "gmt/measures.hpp"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"

namespace gmt::experiment {

namespace {

double conservative_radius(const TubeFamily& fam, double cell) {
  return fam.radius + 0.5 * std::sqrt(static_cast<double>(fam.dim)) * cell;
}

void profile_table(Context& ctx, const std::string& name, const RichnessProfile& p, BoundKind kind) {
  const BoundCheck bc = verify_bound(p, kind);
  Table& t = ctx.table(name, {"r", "measure", "bound_value", "ratio"});
  for (const BoundRow& row : bc.rows) t.rows.push_back({cell(row.r), cell(row.measure), cell(row.bound), cell(row.ratio)});
}

// ---- coordinates ------------------------------------------------------------

void coords_roundtrip(Context& ctx) {
  const auto samples = static_cast<std::size_t>(ctx.integer("samples"));
  const auto pairs = static_cast<std::size_t>(ctx.integer("pairs"));
  const auto per_pair = static_cast<std::size_t>(ctx.integer("params_per_pair"));
  const double box = ctx.real("box_bound");
  const double zmax = ctx.real("z_bound");
  const double min_sep = ctx.real("min_pair_distance");

  // Coordinates to motion and back.
  const std::uint64_t ckey = derive_key(ctx.seed(), "roundtrip_coords");
  const double coord_err = parallel::reduce(
      samples, 0.0,
      [&](std::size_t b, std::size_t e) {
        double worst = 0.0;
        for (std::size_t i = b; i < e; ++i) {
          CounterStream rs(ckey, i);
          MotionCoords c;
          c.x0 = Point(box * (2.0 * rs.uniform() - 1.0), box * (2.0 * rs.uniform() - 1.0));
          c.z = zmax * (2.0 * rs.uniform() - 1.0);
          c.valid = true;
          const MotionCoords back = motion_to_coords(coords_to_motion(c));
          worst = std::max({worst, std::abs(back.x0[0] - c.x0[0]), std::abs(back.x0[1] - c.x0[1]),
                            std::abs(back.z - c.z)});
        }
        return worst;
      },
      [](double a, double b) { return std::max(a, b); });

  // Motion to coordinates and back, compared on the motion's action.
  const std::uint64_t mkey = derive_key(ctx.seed(), "roundtrip_motions");
  const double cut = 2.0 * std::atan(1.0 / zmax);
  const double motion_err = parallel::reduce(
      samples, 0.0,
      [&](std::size_t b, std::size_t e) {
        double worst = 0.0;
        for (std::size_t i = b; i < e; ++i) {
          CounterStream rs(mkey, i);
          const double theta = cut + (2.0 * std::numbers::pi - 2.0 * cut) * rs.uniform();
          const Point x0(box * (2.0 * rs.uniform() - 1.0), box * (2.0 * rs.uniform() - 1.0));
          const RigidMotion g = RigidMotion::rotation_about(theta, x0);
          const RigidMotion h = coords_to_motion(motion_to_coords(g));
          for (int a = 0; a < 2; ++a) {
            worst = std::max(worst, std::abs(g.translation()[a] - h.translation()[a]));
            for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(g.linear()(a, c) - h.linear()(a, c)));
          }
        }
        return worst;
      },
      [](double a, double b) { return std::max(a, b); });

  // Every point of a pair line carries x3 onto x1.
  const std::uint64_t pkey = derive_key(ctx.seed(), "pair_line");
  const double line_err = parallel::reduce(
      pairs, 0.0,
      [&](std::size_t b, std::size_t e) {
        double worst = 0.0;
        for (std::size_t i = b; i < e; ++i) {
          CounterStream rs(pkey, i);
          Point x1, x3;
          do {
            x1 = Point(box * (2.0 * rs.uniform() - 1.0), box * (2.0 * rs.uniform() - 1.0));
            x3 = Point(box * (2.0 * rs.uniform() - 1.0), box * (2.0 * rs.uniform() - 1.0));
          } while (distance(x1, x3) < min_sep);
          const Line3 line = pair_line(x1, x3);
          for (std::size_t j = 0; j < per_pair; ++j) {
            const double t = zmax * (2.0 * rs.uniform() - 1.0);
            const Point q = line.at(t);
            const RigidMotion g = coords_to_motion(MotionCoords::from_point(q));
            worst = std::max(worst, distance(g.apply(x3), x1));
          }
        }
        return worst;
      },
      [](double a, double b) { return std::max(a, b); });

  Table& t = ctx.table("roundtrip", {"check", "samples", "max_error"});
  t.rows.push_back({"coords_to_motion_to_coords", cell(samples), cell(coord_err)});
  t.rows.push_back({"motion_to_coords_to_motion", cell(samples), cell(motion_err)});
  t.rows.push_back({"pair_line", cell(pairs * per_pair), cell(line_err)});
  const double tol = ctx.real("roundtrip_tol");
  ctx.verdict("coords_roundtrip_max_error", coord_err, Comparison::at_most, tol, 0.0);
  ctx.verdict("motion_roundtrip_max_error", motion_err, Comparison::at_most, tol, 0.0);
  ctx.verdict("pair_line_max_error", line_err, Comparison::at_most, ctx.real("pair_line_tol"), 0.0);
}

// ---- bushes -----------------------------------------------------------------

void bush3d(Context& ctx) {
  const double delta = std::ldexp(1.0, -static_cast<int>(ctx.integer("delta_exponent")));
  const TubeFamily fam = origin_bush_3d(delta, ctx.real("separation_factor"));
  const double cellsz = ctx.real("cell_factor") * delta;
  const Census census = tube_census(fam, cellsz, conservative_radius(fam, cellsz),
                                    static_cast<std::uint64_t>(ctx.integer("max_cells")));
  const std::vector<std::uint64_t> rs = dyadic_r(fam.size());
  const RichnessProfile p = profile_from_census(census, delta, rs);

  Table& t = ctx.table("profile", {"r", "measure", "max_norm", "radius_bound", "weak_ratio", "guess_ratio"});
  std::size_t violations = 0;
  double guess_lo = 0.0, guess_hi = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = static_cast<double>(rs[i]);
    const double norm = census.max_norm_at_least(rs[i]);
    const double bound = bush_radius_bound(rs[i], cellsz);
    if (norm > bound) ++violations;
    const double L = static_cast<double>(fam.size());
    const double weak = p.measure[i] / bound_value(BoundKind::weak, delta, L, r);
    const double guess = p.measure[i] / bound_value(BoundKind::guess, delta, L, r);
    if (rs[i] == 4) guess_lo = guess;
    if (4.0 * r <= L && guess > 0.0) guess_hi = guess;
    t.rows.push_back({cell(rs[i]), cell(p.measure[i]), cell(norm), cell(bound), cell(weak), cell(guess)});
  }
  const double slope = fit_richness_exponent(p);
  ctx.summary("L", static_cast<double>(fam.size()));
  ctx.summary("delta", delta);
  ctx.summary("fitted_exponent", slope);
  if (guess_lo > 0.0) ctx.summary("guess_ratio_growth", guess_hi / guess_lo);
  ctx.verdict("richness_exponent", slope, Comparison::near, ctx.real("exponent_target"), ctx.real("exponent_tol"));
  ctx.verdict("radius_violations", static_cast<double>(violations), Comparison::at_most,
              ctx.real("max_radius_violations"), 0.0);
}

void bush2d(Context& ctx) {
  const double delta = std::ldexp(1.0, -static_cast<int>(ctx.integer("delta_exponent")));
  const double spacing = ctx.real("spacing_factor") * delta;
  auto L = static_cast<std::size_t>(ctx.integer("L"));
  if (L == 0) L = static_cast<std::size_t>(std::floor(std::numbers::pi / spacing));
  const TubeFamily fam = planar_bush(delta, L, spacing);
  const RichnessProfile p = rich_profile(fam, ctx.real("cell_factor") * delta, dyadic_r(L),
                                         static_cast<std::uint64_t>(ctx.integer("max_cells")));
  profile_table(ctx, "profile", p, BoundKind::cordoba);
  const double slope = fit_richness_exponent(p);
  ctx.summary("L", static_cast<double>(L));
  ctx.summary("delta", delta);
  ctx.summary("fitted_exponent", slope);
  ctx.summary("cordoba_max_ratio", verify_bound(p, BoundKind::cordoba).max_ratio);
  ctx.verdict("richness_exponent", slope, Comparison::near, ctx.real("exponent_target"), ctx.real("exponent_tol"));
}

void cordoba2d(Context& ctx) {
  const double delta = std::ldexp(1.0, -static_cast<int>(ctx.integer("delta_exponent")));
  const double spacing = ctx.real("spacing_factor") * delta;
  const double cellsz = ctx.real("cell_factor") * delta;
  Table& t = ctx.table("cordoba", {"L", "max_ratio", "pairwise_sum", "pairwise_over_deltaLlogL"});
  std::vector<double> ratios, pair_norm;
  for (auto e : ctx.integers("L_exponents")) {
    const std::size_t L = std::size_t{1} << e;
    const TubeFamily fam = planar_bush(delta, L, spacing);
    const RichnessProfile p =
        rich_profile(fam, cellsz, dyadic_r(L), static_cast<std::uint64_t>(ctx.integer("max_cells")));
    const double ratio = verify_bound(p, BoundKind::cordoba).max_ratio;
    const double pairs = pairwise_intersection_sum(fam, ctx.real("inflate"));
    const double Ld = static_cast<double>(L);
    ratios.push_back(ratio);
    pair_norm.push_back(pairs / (delta * Ld * std::log(Ld)));
    t.rows.push_back({cell(L), cell(ratio), cell(pairs), cell(pair_norm.back())});
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  ctx.summary("ratio_min", *lo);
  ctx.summary("ratio_max", *hi);
  const auto [plo, phi] = std::minmax_element(pair_norm.begin(), pair_norm.end());
  ctx.summary("pairwise_over_deltaLlogL_band", *phi / *plo);
  ctx.verdict("ratio_band", *hi / *lo, Comparison::at_most, ctx.real("band"), 0.0);
}

// ---- random families ----------------------------------------------------------

void counting_identity(Context& ctx) {
  const double delta = std::ldexp(1.0, -static_cast<int>(ctx.integer("delta_exponent")));
  const auto L = static_cast<std::size_t>(ctx.integer("L"));
  const auto seeds = ctx.integer("seeds");
  const double inflate = ctx.real("inflate");
  const double cellsz = ctx.real("cell_factor") * delta;
  const auto cap = static_cast<std::uint64_t>(ctx.integer("max_cells"));
  Table& t = ctx.table("identity", {"seed", "lhs", "rhs", "ratio", "holds"});
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::int64_t s = 0; s < seeds; ++s) {
    const TubeFamily fam = random_family_3d(delta, L, derive_key(ctx.seed(), static_cast<std::uint64_t>(s)));
    const Census c = tube_census(fam, cellsz, inflate * delta, cap);
    const double vol = std::pow(cellsz, 3);
    double lhs = 0.0;
    for (std::size_t k = 2; k < c.histogram.size(); ++k)
      lhs += static_cast<double>(k) * static_cast<double>(k - 1) * static_cast<double>(c.histogram[k]) * vol;
    const double rhs = 2.0 * pairwise_intersection_sum(fam, inflate);
    const bool holds = lhs <= rhs;
    violations += !holds;
    worst = std::max(worst, lhs / rhs);
    t.rows.push_back({cell(s), cell(lhs), cell(rhs), cell(lhs / rhs), cell(holds ? 1 : 0)});
  }
  ctx.summary("max_lhs_over_rhs", worst);
  ctx.verdict("violations", static_cast<double>(violations), Comparison::at_most, ctx.real("max_violations"), 0.0);
}

void random3d(Context& ctx) {
  const double delta = std::ldexp(1.0, -static_cast<int>(ctx.integer("delta_exponent")));
  const auto L = static_cast<std::size_t>(ctx.integer("L"));
  const auto seeds = ctx.integer("seeds");
  const double cellsz = ctx.real("cell_factor") * delta;
  const auto cap = static_cast<std::uint64_t>(ctx.integer("max_cells"));
  const std::vector<std::uint64_t> rs = dyadic_r(L);
  Table& per_seed = ctx.table("per_seed", {"seed", "r", "measure"});
  RichnessProfile avg;
  avg.delta = delta;
  avg.cell = cellsz;
  avg.L = L;
  avg.dim = 3;
  avg.r = rs;
  avg.measure.assign(rs.size(), 0.0);
  for (std::int64_t s = 0; s < seeds; ++s) {
    const TubeFamily fam = random_family_3d(delta, L, derive_key(ctx.seed(), static_cast<std::uint64_t>(s)));
    const RichnessProfile p = rich_profile(fam, cellsz, rs, cap);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      avg.measure[i] += p.measure[i] / static_cast<double>(seeds);
      per_seed.rows.push_back({cell(s), cell(rs[i]), cell(p.measure[i])});
    }
  }
  profile_table(ctx, "profile", avg, BoundKind::weak);
  const double slope = fit_richness_exponent(avg);
  ctx.summary("fitted_exponent", slope);
  ctx.summary("weak_max_ratio", verify_bound(avg, BoundKind::weak).max_ratio);
  ctx.verdict("richness_exponent", slope, Comparison::at_most, ctx.real("exponent_ceiling"), 0.0);
}

void weak_bound(Context& ctx) {
  const double cell_factor = ctx.real("cell_factor");
  const auto L = static_cast<std::size_t>(ctx.integer("L"));
  const auto cap = static_cast<std::uint64_t>(ctx.integer("max_cells"));
  Table& t = ctx.table("weak", {"delta", "L", "max_ratio"});
  std::vector<double> ratios;
  for (auto e : ctx.integers("delta_exponents")) {
    const double delta = std::ldexp(1.0, -static_cast<int>(e));
    const TubeFamily fam = random_family_3d(delta, L, derive_key(ctx.seed(), static_cast<std::uint64_t>(e)));
    const RichnessProfile p = rich_profile(fam, cell_factor * delta, dyadic_r(L), cap);
    const double ratio = verify_bound(p, BoundKind::weak).max_ratio;
    ratios.push_back(ratio);
    t.rows.push_back({cell(delta), cell(L), cell(ratio)});
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  ctx.verdict("ratio_band", *hi / *lo, Comparison::at_most, ctx.real("band"), 0.0);
}

void kakeya_union(Context& ctx) {
  const double delta = std::ldexp(1.0, -static_cast<int>(ctx.integer("delta_exponent")));
  const double inflate = ctx.real("inflate");
  const double cellsz = ctx.real("cell_factor") * delta;
  const auto cap = static_cast<std::uint64_t>(ctx.integer("max_cells"));
  const double R = inflate * delta;
  const double cylinder = std::numbers::pi * R * R;

  const TubeFamily one = make_family(3, delta, {Tube::centered(Point(0.0, 0.0, 0.0), Point(0.0, 0.0, 1.0), 1.0, delta)});
  const double v1 = union_volume(one, cellsz, inflate, cap);

  // Parallel tubes spaced well beyond the inflated diameter.
  const auto disjoint = static_cast<std::size_t>(ctx.integer("disjoint_tubes"));
  std::vector<Tube> spaced;
  for (std::size_t i = 0; i < disjoint; ++i)
    spaced.push_back(Tube::centered(Point(static_cast<double>(i) * 4.0 * R, 0.0, 0.0), Point(0.0, 0.0, 1.0), 1.0, delta));
  const double vL = union_volume(make_family(3, delta, std::move(spaced)), cellsz, inflate, cap);

  const auto L = static_cast<std::size_t>(std::floor(ctx.real("L_factor") / (delta * delta)));
  const TubeFamily rnd = random_family_3d(delta, L, derive_key(ctx.seed(), "kakeya_union"));
  const double vr = union_volume(rnd, cellsz, inflate, cap);
  const double floor = 0.25 / std::pow(std::log(1.0 / delta), 2);

  Table& t = ctx.table("union", {"family", "tubes", "volume", "reference", "ratio"});
  t.rows.push_back({"single", cell(1), cell(v1), cell(cylinder), cell(v1 / cylinder)});
  t.rows.push_back({"disjoint", cell(disjoint), cell(vL), cell(static_cast<double>(disjoint) * v1),
                    cell(vL / (static_cast<double>(disjoint) * v1))});
  t.rows.push_back({"random", cell(L), cell(vr), cell(floor), cell(vr / floor)});
  ctx.summary("random_over_floor", vr / floor);
  ctx.verdict("single_tube_ratio", v1 / cylinder, Comparison::near, 1.0, ctx.real("single_tol"));
  ctx.verdict("disjoint_additivity", vL / (static_cast<double>(disjoint) * v1), Comparison::near, 1.0,
              ctx.real("additivity_tol"));
}

// ---- pair tubes and the angle condition --------------------------------------

PointCloud random_net(CounterStream& rs, std::size_t n, double x0, double y0, double side, double delta) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x0 + side * rs.uniform(), y = y0 + side * rs.uniform();
    pts.emplace_back(x, y);
  }
  return delta_net(PointCloud(2, std::move(pts)), delta);
}

void pair_tubes(Context& ctx) {
  const double delta = ctx.real("delta");
  const double threshold = ctx.real("gap_factor") * delta;
  Table& t = ctx.table("witness", {"family", "tubes", "intersecting_pairs", "violations", "min_gap"});
  auto record = [&](const std::string& name, const TubeFamily& fam) {
    const DirectionWitness w = direction_gap_witness(fam, threshold);
    t.rows.push_back({name, cell(fam.size()), cell(w.intersecting_pairs), cell(w.violations), cell(w.min_gap)});
    return w;
  };

  // Two delta-separated points and their translate: equal differences give
  // parallel pair lines a couple of delta apart.
  const double gap = 2.0 * delta;
  const PointCloud F1(2, {Point(0.0, 0.0), Point(0.0, gap)});
  const PointCloud F2(2, {Point(1.0, 0.0), Point(1.0, gap)});
  const DirectionWitness counter = record("translated_pair", build_pair_tubes(F1, F2, delta));

  const auto seeds = ctx.integer("seeds");
  const auto points = static_cast<std::size_t>(ctx.integer("points"));
  std::size_t random_violations = 0;
  for (std::int64_t s = 0; s < seeds; ++s) {
    CounterStream rs(derive_key(ctx.seed(), "pair_tube_nets"), static_cast<std::uint64_t>(s));
    const PointCloud A = random_net(rs, points, 0.0, 0.0, 0.25, delta);
    const PointCloud B = random_net(rs, points, 0.75, 0.0, 0.25, delta);
    random_violations += record("random_nets_" + std::to_string(s), build_pair_tubes(A, B, delta)).violations;
  }
  ctx.summary("random_net_violations", static_cast<double>(random_violations));
  ctx.verdict("translated_pair_violations", static_cast<double>(counter.violations), Comparison::at_least,
              ctx.real("min_counterexample_violations"), 0.0);
}

// Area of the intersection of discs of radii a and b with centres d apart.
double lens_area(double a, double b, double d) {
  if (d >= a + b) return 0.0;
  if (d <= std::abs(a - b)) return std::numbers::pi * std::min(a, b) * std::min(a, b);
  const double ca = std::clamp((d * d + a * a - b * b) / (2.0 * d * a), -1.0, 1.0);
  const double cb = std::clamp((d * d + b * b - a * a) / (2.0 * d * b), -1.0, 1.0);
  const double k = (-d + a + b) * (d + a - b) * (d - a + b) * (d + a + b);
  return a * a * std::acos(ca) + b * b * std::acos(cb) - 0.5 * std::sqrt(std::max(0.0, k));
}

void tech_condition(Context& ctx) {
  TechOptions opt;
  opt.translation_radius = ctx.real("translation_radius");
  opt.angle_cut = ctx.real("angle_cut");
  opt.near_factor = ctx.real("near_factor");
  const double z = ctx.real("z_score");
  Table& t = ctx.table("tech", {"case", "seed", "ratio", "std_error", "oracle", "below_half"});

  // Points on a circle: the integrand ignores the rotation angle.
  const auto n = static_cast<std::size_t>(ctx.integer("circle_points"));
  std::vector<Point> circ;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    circ.emplace_back(std::cos(a), std::sin(a));
  }
  const DiscreteMeasure circle = DiscreteMeasure::uniform(PointCloud(2, std::move(circ)));
  const TechResult rc = tech_ratio(circle, circle, ctx.real("circle_delta"),
                                   static_cast<std::size_t>(ctx.integer("circle_samples")),
                                   derive_key(ctx.seed(), "tech_circle"), opt);
  const double frac = tech_angular_fraction(opt.angle_cut);
  t.rows.push_back({"circle", cell(ctx.seed()), cell(rc.ratio), cell(rc.std_error), cell(frac), cell(rc.ratio < 0.5 ? 1 : 0)});

  // Two point masses: for each angle the hit set of translations is a lens.
  const Point a(2.0, 0.0), b(1.5, 0.0);
  const double pd = ctx.real("point_delta");
  const TechResult rp = tech_ratio(DiscreteMeasure::point_mass(a), DiscreteMeasure::point_mass(b), pd,
                                   static_cast<std::size_t>(ctx.integer("point_samples")),
                                   derive_key(ctx.seed(), "tech_points"), opt);
  const auto nodes = static_cast<std::size_t>(ctx.integer("quadrature_nodes"));
  double all = 0.0, inner = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double th = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(nodes);
    const Point gb = RigidMotion::rotation2d(th).apply(b);
    const double area = lens_area(opt.near_factor * pd, opt.translation_radius, norm(a - gb));
    all += area;
    if (std::abs(2.0 * std::sin(0.5 * th)) >= opt.angle_cut) inner += area;
  }
  const double quad = inner / all;
  t.rows.push_back({"point_masses", cell(ctx.seed()), cell(rp.ratio), cell(rp.std_error), cell(quad),
                    cell(rp.ratio < 0.5 ? 1 : 0)});

  // Parallel segments: near-identity motions dominate the integrand.
  const auto seg_points = static_cast<std::size_t>(ctx.integer("segment_points"));
  const double h = ctx.real("segment_offset");
  std::vector<Point> s1, s2;
  for (std::size_t i = 0; i < seg_points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(seg_points - 1);
    s1.emplace_back(x, 0.0);
    s2.emplace_back(x, h);
  }
  const DiscreteMeasure m1 = DiscreteMeasure::uniform(PointCloud(2, std::move(s1)));
  const DiscreteMeasure m2 = DiscreteMeasure::uniform(PointCloud(2, std::move(s2)));
  std::size_t below = 0;
  const auto seeds = ctx.integer("segment_seeds");
  for (std::int64_t s = 0; s < seeds; ++s) {
    const TechResult rs = tech_ratio(m1, m2, ctx.real("segment_delta"),
                                     static_cast<std::size_t>(ctx.integer("segment_samples")),
                                     derive_key(ctx.seed(), static_cast<std::uint64_t>(s)), opt);
    below += rs.ratio < 0.5;
    t.rows.push_back({"parallel_segments", cell(s), cell(rs.ratio), cell(rs.std_error), "", cell(rs.ratio < 0.5 ? 1 : 0)});
  }
  ctx.summary("segment_seeds_below_half", static_cast<double>(below));
  ctx.summary("angular_fraction", frac);
  ctx.summary("point_mass_quadrature", quad);
  ctx.verdict("circle_vs_angular_fraction", rc.ratio, Comparison::near, frac, z * rc.std_error + 1e-12);
  ctx.verdict("point_masses_vs_quadrature", rp.ratio, Comparison::near, quad, z * rp.std_error + 1e-12);
}

ParamSpec cap_param() {
  return {"max_cells", ParamKind::integer, "16777216", "live cell counters per census slab"};
}

}  // namespace

void add_incidence_recipes(std::vector<Recipe>& out) {
  out.push_back({"coords-roundtrip",
                 "planar rigid-motion coordinates (fixed point, cot of half angle) and pair lines",
                 "rotations are identified with points of R^3 and the rotations carrying x3 to x1 form a line",
                 {{"samples", ParamKind::integer, "10000", "random motions per round trip"},
                  {"pairs", ParamKind::integer, "1000", "random point pairs"},
                  {"params_per_pair", ParamKind::integer, "10", "line parameters per pair"},
                  {"box_bound", ParamKind::real, "3", "fixed points and pair points in [-b, b]^2"},
                  {"z_bound", ParamKind::real, "20", "|z| <= z_bound"},
                  {"min_pair_distance", ParamKind::real, "0.5", "|x1 - x3| lower bound"},
                  {"roundtrip_tol", ParamKind::real, "1e-10", "round-trip ceiling"},
                  {"pair_line_tol", ParamKind::real, "1e-9", "pair-line ceiling"}},
                 coords_roundtrip});
  out.push_back({"bush3d",
                 "richness profile of unit tubes through the origin with separated directions in R^3",
                 "lambda(P_r) ~ delta^3 L^1.5 / r^1.5 for the bush, and r-rich points satisfy |x| <= 10 / sqrt(r)",
                 {{"delta_exponent", ParamKind::integer, "7", "delta = 2^-e"},
                  {"separation_factor", ParamKind::real, "10", "direction separation in units of delta"},
                  {"cell_factor", ParamKind::real, "0.5", "cell side in units of delta"},
                  cap_param(),
                  {"exponent_target", ParamKind::real, "-1.5", "expected slope"},
                  {"exponent_tol", ParamKind::real, "0.2", "allowed slope deviation"},
                  {"max_radius_violations", ParamKind::real, "0", "allowed radius-law violations"}},
                 bush3d});
  out.push_back({"bush2d",
                 "richness profile of a planar bush",
                 "lambda(P_r) ~ delta L / r^2 for the planar bush",
                 {{"delta_exponent", ParamKind::integer, "9", "delta = 2^-e"},
                  {"spacing_factor", ParamKind::real, "10", "angular spacing in units of delta"},
                  {"L", ParamKind::integer, "0", "tube count; 0 fills the half circle"},
                  {"cell_factor", ParamKind::real, "0.5", "cell side in units of delta"},
                  cap_param(),
                  {"exponent_target", ParamKind::real, "-2", "expected slope"},
                  {"exponent_tol", ParamKind::real, "0.2", "allowed slope deviation"}},
                 bush2d});
  out.push_back({"cordoba2d",
                 "planar bushes against Cordoba's bound across L",
                 "lambda(P_r) <= C delta L log L / r^2 for planar tubes with separated directions",
                 {{"delta_exponent", ParamKind::integer, "9", "delta = 2^-e"},
                  {"spacing_factor", ParamKind::real, "1", "angular spacing in units of delta"},
                  {"L_exponents", ParamKind::integer_list, "5,6,7,8,9", "L = 2^e"},
                  {"cell_factor", ParamKind::real, "0.5", "cell side in units of delta"},
                  {"inflate", ParamKind::real, "3", "radius factor for the pairwise sum"},
                  cap_param(),
                  {"band", ParamKind::real, "4", "allowed max/min of the empirical constant"}},
                 cordoba2d});
  out.push_back({"counting-identity",
                 "cell-level double count of rich cells against pairwise tube intersections",
                 "sum_k k(k-1) #_k cell^3 <= 2 sum_{i<j} lambda(T_i^{3 delta} cap T_j^{3 delta})",
                 {{"delta_exponent", ParamKind::integer, "5", "delta = 2^-e"},
                  {"L", ParamKind::integer, "1024", "tubes per family"},
                  {"seeds", ParamKind::integer, "20", "random families"},
                  {"inflate", ParamKind::real, "3", "inflated radius in units of delta"},
                  {"cell_factor", ParamKind::real, "0.5", "cell side in units of delta"},
                  cap_param(),
                  {"max_violations", ParamKind::real, "0", "allowed violating families"}},
                 counting_identity});
  out.push_back({"random3d",
                 "seed-averaged richness profile of randomly placed tubes in R^3",
                 "the expected lambda(P_r) for random placement is <~ delta^3 L^1.5 / r^2",
                 {{"delta_exponent", ParamKind::integer, "6", "delta = 2^-e"},
                  {"L", ParamKind::integer, "4096", "tubes per family"},
                  {"seeds", ParamKind::integer, "20", "random families"},
                  {"cell_factor", ParamKind::real, "0.5", "cell side in units of delta"},
                  cap_param(),
                  {"exponent_ceiling", ParamKind::real, "-1.8", "fitted slope must not exceed this"}},
                 random3d});
  out.push_back({"weak-bound",
                 "empirical constant of the weak incidence bound across delta",
                 "lambda(P_r) <= C delta^2 L^1.5 / r^2 for tubes with separated directions",
                 {{"delta_exponents", ParamKind::integer_list, "5,6,7", "delta = 2^-e"},
                  {"L", ParamKind::integer, "1024", "tubes per family, the same at every delta"},
                  {"cell_factor", ParamKind::real, "0.5", "cell side in units of delta"},
                  cap_param(),
                  {"band", ParamKind::real, "4", "allowed max/min of the empirical constant"}},
                 weak_bound});
  out.push_back({"kakeya-union",
                 "union volume of inflated tubes",
                 "lambda(union of T_i^{3 delta}) >= C (-log delta)^-2 for separated directions; the floor is "
                 "recorded, single-tube and additivity checks are asserted",
                 {{"delta_exponent", ParamKind::integer, "6", "delta = 2^-e"},
                  {"inflate", ParamKind::real, "3", "inflated radius in units of delta"},
                  {"cell_factor", ParamKind::real, "0.5", "cell side in units of delta"},
                  {"disjoint_tubes", ParamKind::integer, "8", "parallel tubes for the additivity check"},
                  {"L_factor", ParamKind::real, "1", "random family has L = L_factor / delta^2 tubes"},
                  cap_param(),
                  {"single_tol", ParamKind::real, "0.15", "relative tolerance against pi (3 delta)^2"},
                  {"additivity_tol", ParamKind::real, "0.1", "relative tolerance for disjoint tubes"}},
                 kakeya_union});
  out.push_back({"pair-tubes",
                 "direction gaps between intersecting pair tubes",
                 "intersecting pair tubes from 0.5-separated clouds have direction gap >= 0.01 delta; a translated "
                 "pair is checked as a counterexample",
                 {{"delta", ParamKind::real, "0.01", "tube radius and net separation"},
                  {"gap_factor", ParamKind::real, "0.01", "gap threshold in units of delta"},
                  {"points", ParamKind::integer, "40", "random points per net before thinning"},
                  {"seeds", ParamKind::integer, "5", "random net pairs"},
                  {"min_counterexample_violations", ParamKind::real, "1", "violations the counterexample must show"}},
                 pair_tubes});
  out.push_back({"tech-condition",
                 "share of the squared coincidence mass carried by motions away from the identity",
                 "the integral over rotation angles with |S - I| >= 0.1 is at least half the full integral",
                 {{"translation_radius", ParamKind::real, "3", "translations uniform in this disc"},
                  {"angle_cut", ParamKind::real, "0.1", "|S - I| threshold"},
                  {"near_factor", ParamKind::real, "2", "coincidence radius in units of delta"},
                  {"circle_points", ParamKind::integer, "2000", "atoms on the unit circle"},
                  {"circle_delta", ParamKind::real, "0.01", "delta for the circle case"},
                  {"circle_samples", ParamKind::integer, "20000", "motions for the circle case"},
                  {"point_delta", ParamKind::real, "0.1", "delta for the point-mass case"},
                  {"point_samples", ParamKind::integer, "400000", "motions for the point-mass case"},
                  {"quadrature_nodes", ParamKind::integer, "200000", "angle nodes for the lens quadrature"},
                  {"segment_points", ParamKind::integer, "200", "atoms per segment"},
                  {"segment_offset", ParamKind::real, "2", "distance between the parallel segments"},
                  {"segment_delta", ParamKind::real, "0.01", "delta for the segment case"},
                  {"segment_samples", ParamKind::integer, "20000", "motions per segment seed"},
                  {"segment_seeds", ParamKind::integer, "5", "segment seeds"},
                  {"z_score", ParamKind::real, "3", "standard errors allowed"}},
                 tech_condition});
}

}  // namespace gmt::experiment
