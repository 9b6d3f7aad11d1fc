#include <cmath>
#include <numbers>

#include "gmt/experiment.hpp"
#include "gmt/ifs.hpp"
#include "gmt/measures.hpp"

namespace gmt::experiment {

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of cos^2(pi u) * 2 sqrt(R^2 - u^2) over [-R, R], i.e. |m^|^2 of
// the two-point measure at +-(1/2, 0) over the disc. With u = R sin(phi)
// the integrand is smooth and periodic, so the midpoint rule converges fast.
double two_point_disc(double R, int nodes) {
  double s = 0.0;
  const double h = kPi / nodes;
  for (int i = 0; i < nodes; ++i) {
    const double phi = -0.5 * kPi + (i + 0.5) * h;
    const double c = std::cos(kPi * R * std::sin(phi));
    s += c * c * 2.0 * R * R * std::cos(phi) * std::cos(phi);
  }
  return s * h;
}

// Mean of cos^2(pi R cos(phi)) over the circle.
double two_point_circle(double R, int nodes) {
  double s = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double c = std::cos(kPi * R * std::cos(2.0 * kPi * (i + 0.5) / nodes));
    s += c * c;
  }
  return s / nodes;
}

void fourier_diagnostics(Context& ctx) {
  const auto samples = static_cast<std::size_t>(ctx.integer("samples"));
  const double z = ctx.real("z_score");
  const double R = ctx.real("R");
  const int nodes = static_cast<int>(ctx.integer("quadrature_nodes"));
  const std::uint64_t seed = ctx.seed();
  const DiscreteMeasure point = DiscreteMeasure::point_mass(Point(0.0, 0.0));
  const DiscreteMeasure pair = DiscreteMeasure::uniform(PointCloud(2, {Point(-0.5, 0.0), Point(0.5, 0.0)}));

  Table& t = ctx.table("fourier", {"quantity", "estimate", "std_error", "oracle"});
  auto check = [&](const std::string& name, const Estimate& e, double oracle) {
    t.rows.push_back({name, cell(e.value), cell(e.std_error), cell(oracle)});
    ctx.verdict(name, e.value, Comparison::near, oracle, z * e.std_error + 1e-12);
  };
  check("ball_point_mass", ball_average(point, R, samples, seed), ball_volume(2, R));
  check("sphere_point_mass", spherical_average(point, R, samples, seed), 1.0);
  check("sphere_zero_radius", spherical_average(pair, 0.0, samples, seed), 1.0);
  check("ball_two_point", ball_average(pair, R, samples, seed), two_point_disc(R, nodes));
  check("sphere_two_point", spherical_average(pair, R, samples, seed), two_point_circle(R, nodes));
  const double r0 = ctx.real("r0");
  check("annulus_point_mass_t1", weighted_ball_average(point, R, 1.0, samples, seed, r0), 2.0 * kPi * (R - r0));
  check("amplitude_two_point", Estimate{std::real(fourier_amplitude(pair, Point(1.0, 0.0))), 0.0, 1}, -1.0);
}

void dimension_estimators(Context& ctx) {
  const double tol_box = ctx.real("tol_box");
  const double tol_frostman = ctx.real("tol_frostman");
  const double tol_l2 = ctx.real("tol_l2");

  const int cd = static_cast<int>(ctx.integer("cantor_depth"));
  const PointCloud cantor = generate_ifs_cloud(IfsSystem::middle_third_cantor(), cd);
  std::vector<double> scales;
  for (int j = 1; j <= cd; ++j) scales.push_back(std::pow(3.0, -j));
  const ScaleSeries series = box_count_series(cantor, scales);
  Table& bt = ctx.table("cantor_box_counts", {"scale", "value", "stderr"});
  for (const auto& s : series) bt.rows.push_back({cell(s.scale), cell(s.value), cell(s.std_error)});
  const double box = box_dimension(series);
  ctx.summary("cantor_box_dimension", box);
  ctx.verdict("cantor_box_dimension", box, Comparison::near, std::log(2.0) / std::log(3.0), tol_box);

  const int fd = static_cast<int>(ctx.integer("four_corner_depth"));
  const DiscreteMeasure fc = DiscreteMeasure::uniform(generate_ifs_cloud(IfsSystem::four_corner_cantor(), fd));
  std::vector<double> radii;
  for (int j = 1; j <= fd; ++j) radii.push_back(std::pow(4.0, -j));
  const double fe = frostman_exponent(fc, radii);
  ctx.summary("four_corner_frostman_exponent", fe);
  ctx.verdict("four_corner_frostman_exponent", fe, Comparison::near, 1.0, tol_frostman);

  // Dense grid: the ball average plateaus, so the L2 dimension is the full 2.
  const auto g = ctx.integer("grid_points");
  std::vector<Point> pts;
  for (std::int64_t i = 0; i < g; ++i)
    for (std::int64_t j = 0; j < g; ++j) pts.emplace_back(static_cast<double>(i) / g, static_cast<double>(j) / g);
  const DiscreteMeasure grid = DiscreteMeasure::uniform(PointCloud(2, pts));
  const auto Rs = ctx.reals("l2_scales");
  const L2Dimension l2 =
      l2_dimension(grid, Rs, static_cast<std::size_t>(ctx.integer("l2_samples")), ctx.seed(), BallSampling::radial);
  Table& lt = ctx.table("grid_ball_average", {"scale", "value", "stderr"});
  for (const auto& s : l2.series) lt.rows.push_back({cell(s.scale), cell(s.value), cell(s.std_error)});
  ctx.summary("grid_l2_dimension", l2.dimension);
  ctx.verdict("grid_l2_dimension", l2.dimension, Comparison::near, 2.0, tol_l2);
  std::vector<double> cells;
  for (int j = 1; j <= 5; ++j) cells.push_back(std::pow(2.0, -j));
  const double grid_box = box_dimension(box_count_series(grid.cloud(), cells));
  ctx.summary("grid_box_dimension", grid_box);
  ctx.verdict("grid_l2_below_box_plus_slack", l2.dimension, Comparison::at_most, grid_box, 0.3);
}

}  // namespace

void add_measure_recipes(std::vector<Recipe>& out) {
  out.push_back({"fourier-diagnostics",
                 "Fourier ball and spherical averages against closed forms and quadrature",
                 "ball averages A(mu, R) and spherical averages S(mu, R) of |mu^|^2 for discrete measures",
                 {{"samples", ParamKind::integer, "100000", "Monte Carlo samples per estimate"},
                  {"R", ParamKind::real, "1", "frequency radius"},
                  {"r0", ParamKind::real, "0.01", "inner cutoff for the weighted average"},
                  {"quadrature_nodes", ParamKind::integer, "10000", "nodes of the deterministic oracles"},
                  {"z_score", ParamKind::real, "3", "allowed standard errors"}},
                 fourier_diagnostics});
  out.push_back({"dimension-estimators",
                 "box-counting, Frostman and L2 dimensions of self-similar and grid measures",
                 "box and Frostman dimensions of Cantor-type sets; L2 dimension bounded by the box dimension",
                 {{"cantor_depth", ParamKind::integer, "7", "middle-third Cantor depth"},
                  {"four_corner_depth", ParamKind::integer, "5", "four-corner Cantor depth"},
                  {"grid_points", ParamKind::integer, "64", "grid points per axis"},
                  {"l2_scales", ParamKind::real_list, "4,8,16", "frequency radii for the L2 fit"},
                  {"l2_samples", ParamKind::integer, "20000", "Monte Carlo samples per radius"},
                  {"tol_box", ParamKind::real, "0.02", "box dimension tolerance"},
                  {"tol_frostman", ParamKind::real, "0.05", "Frostman exponent tolerance"},
                  {"tol_l2", ParamKind::real, "0.2", "grid L2 dimension tolerance"}},
                 dimension_estimators});
}

}  // namespace gmt::experiment
