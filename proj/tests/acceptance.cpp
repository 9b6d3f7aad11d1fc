// Acceptance gate: one line per criterion, non-zero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gmt/bounds.hpp"
#include "gmt/config_energy.hpp"
#include "gmt/experiment.hpp"
#include "gmt/ifs.hpp"
#include "gmt/measures.hpp"
#include "gmt/parallel.hpp"

using namespace gmt;
namespace ex = gmt::experiment;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Independent gamma profile.
double gamma_ref(int n, double s) {
  const double a = 0.5 * (n - 1), b = 0.5 * n, c = 0.5 * (n + 2);
  if (s <= a) return s;
  if (s <= b) return a;
  if (s <= c) return (n + 2 * s - 2) / 4.0;
  return s - 1;
}

Outcome gamma_profile_check() {
  double jump = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (double p : {0.5 * (n - 1), 0.5 * n, 0.5 * (n + 2)})
      for (double h : {1e-13, 1e-14})
        jump = std::max({jump, std::abs(bounds::gamma_s(n, p - h) - bounds::gamma_s(n, p)),
                         std::abs(bounds::gamma_s(n, std::min(p + h, 1.0 * n)) - bounds::gamma_s(n, p))});
  double ref_err = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i <= 100 * n; ++i) {
      const double s = n * i / (100.0 * n);
      ref_err = std::max(ref_err, std::abs(bounds::gamma_s(n, s) - gamma_ref(n, s)));
    }
  const bool exact = bounds::gamma_s(2, 0.4) == 0.4 && bounds::gamma_s(3, 2.6) == 1.6;
  return {jump <= 1e-12 && exact && ref_err <= 1e-12,
          fmt("max jump %.3g", jump) + fmt(", reference error %.3g", ref_err) +
              (exact ? ", exact values ok" : ", exact values WRONG")};
}

double n2k3_table(double s) {
  if (s <= 0.5) return 3 * s - 1;
  if (s <= 1.0) return 2 * s - 0.5;
  return 2.5 * s - 1;
}

Outcome config_bound_table_check() {
  double unclamped = 0.0, clamped = 0.0;
  for (int i = 0; 1.0 / 3.0 + 0.01 * i <= 2.0 + 1e-12; ++i) {
    const double s = 1.0 / 3.0 + 0.01 * i;
    const bounds::BoundReport b = bounds::config_dim_bound(2, 3, s);
    unclamped = std::max(unclamped, std::abs(b.unclamped - n2k3_table(s)));
    clamped = std::max(clamped, std::abs(b.value - std::min(n2k3_table(s), 3.0)));
  }
  return {unclamped <= 1e-12 && clamped <= 1e-12,
          fmt("formula error %.3g", unclamped) + fmt(", clamped error %.3g", clamped)};
}

Outcome threshold_check() {
  double err = 0.0, bis = 0.0;
  for (int n = 2; n <= 5; ++n) {
    const bounds::Threshold t = bounds::abs_continuity_threshold(n, 2);
    err = std::max(err, std::abs(t.s - (0.5 * n + 1.0 / 3.0)));
    bis = std::max(bis, std::abs(t.s - bounds::abs_continuity_threshold_bisect(n, 2)));
  }
  return {err <= 1e-9 && bis <= 1e-9, fmt("closed-form error %.3g", err) + fmt(", bisection gap %.3g", bis)};
}

Outcome asymmetric_check() {
  // Exact integer test: with s1 = n/2 + i/49 and s2 = n/2 + j/49 the condition
  // s2 + s1/2 > 3n/4 + 1/2 reads 2j + i > 49.
  int mismatches = 0, points = 0;
  for (int n = 2; n <= 3; ++n)
    for (int i = 0; i < 50; ++i)
      for (int j = i; j < 50; ++j) {
        const double s1 = 0.5 * n + i / 49.0, s2 = 0.5 * n + j / 49.0;
        ++points;
        if (bounds::asymmetric_positive(n, s1, s2) != (2 * j + i > 49)) ++mismatches;
      }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches on " + std::to_string(points) + " points"};
}

Outcome energy_oracle_check() {
  const DiscreteMeasure m = DiscreteMeasure::uniform(PointCloud(2, {Point(0.0, 0.0), Point(1.0, 0.0)}));
  const EnergyResult e = group_energy(m, RigidMotion::identity(2), 2, 0.1);
  int hits = 0;
  for (int q = 0; q < 16; ++q) {
    const Point x1 = m[q & 1], x2 = m[(q >> 1) & 1], y1 = m[(q >> 2) & 1], y2 = m[(q >> 3) & 1];
    if (distance(x1 - y1, x2 - y2) <= 0.1) ++hits;
  }
  const bool ok = e.exact && e.value == 0.375 && hits == 6 && e.has_numerator && e.numerator == 6;
  return {ok, fmt("E = %.17g", e.value) + ", brute force " + std::to_string(hits) + "/16"};
}

Outcome fourier_check() {
  const std::size_t n = 100000;
  const DiscreteMeasure point = DiscreteMeasure::point_mass(Point(0.0, 0.0));
  const DiscreteMeasure pair = DiscreteMeasure::uniform(PointCloud(2, {Point(-0.5, 0.0), Point(0.5, 0.0)}));
  bool ok = true;
  std::string detail;
  const Estimate b = ball_average(point, 1.0, n, kSeed);
  ok = ok && std::abs(b.value - kPi) <= 3 * b.std_error + 1e-12;
  detail += fmt("ball %.6f", b.value);
  for (double R : {0.5, 1.0, 3.0}) ok = ok && spherical_average(point, R, n, kSeed).value == 1.0;
  for (double R : {0.7, 1.3}) {
    // |m^(xi)|^2 = cos^2(pi xi_1); circle and disc integrals via Bessel functions.
    const double sphere = 0.5 * (1.0 + std::cyl_bessel_j(0.0, 2 * kPi * R));
    const double disc = 0.5 * (kPi * R * R + R * std::cyl_bessel_j(1.0, 2 * kPi * R));
    const Estimate s = spherical_average(pair, R, n, kSeed);
    const Estimate d = ball_average(pair, R, n, kSeed);
    const double zs = std::abs(s.value - sphere) / std::max(s.std_error, 1e-300);
    const double zd = std::abs(d.value - disc) / std::max(d.std_error, 1e-300);
    ok = ok && zs <= 3 && zd <= 3;
    detail += fmt(", R=%.1f", R) + fmt(" z %.2f", zs) + fmt("/%.2f", zd);
  }
  return {ok, detail};
}

Outcome dimension_check() {
  const PointCloud cantor = generate_ifs_cloud(IfsSystem::middle_third_cantor(), 7);
  std::vector<double> scales;
  for (int j = 1; j <= 7; ++j) scales.push_back(std::pow(3.0, -j));
  const double box = box_dimension(box_count_series(cantor, scales));
  const DiscreteMeasure fc = DiscreteMeasure::uniform(generate_ifs_cloud(IfsSystem::four_corner_cantor(), 5));
  std::vector<double> radii;
  for (int j = 1; j <= 5; ++j) radii.push_back(std::pow(4.0, -j));
  const double fe = frostman_exponent(fc, radii);
  return {std::abs(box - std::log(2.0) / std::log(3.0)) <= 0.02 && std::abs(fe - 1.0) <= 0.05,
          fmt("box %.5f", box) + fmt(", Frostman %.5f", fe)};
}

ex::Report run_recipe(const std::string& name, ex::Params params) {
  ex::ExperimentConfig c;
  c.recipe = name;
  c.seed = kSeed;
  c.params = std::move(params);
  return ex::run(c);
}

std::string verdict_text(const ex::Report& r) {
  std::string s;
  for (const auto& v : r.verdicts) {
    if (!s.empty()) s += ", ";
    s += v.name + fmt(" %.4g", v.value) + (v.pass ? "" : " (fail)");
  }
  return s;
}

Outcome recipe_check(const std::string& name, ex::Params params) {
  const ex::Report r = run_recipe(name, std::move(params));
  return {r.passed(), verdict_text(r)};
}

ex::Report bush3d_report;

Outcome bush3d_check() {
  bush3d_report = run_recipe("bush3d", {{"delta_exponent", "7"},
                                        {"separation_factor", "10"},
                                        {"exponent_target", "-1.5"},
                                        {"exponent_tol", "0.2"},
                                        {"max_radius_violations", "0"}});
  return {bush3d_report.passed(), verdict_text(bush3d_report)};
}

Outcome planar_check() {
  const ex::Report bush = run_recipe("bush2d", {{"delta_exponent", "9"}, {"exponent_target", "-2"}, {"exponent_tol", "0.2"}});
  const ex::Report cordoba =
      run_recipe("cordoba2d", {{"delta_exponent", "9"}, {"L_exponents", "5,6,7,8,9"}, {"band", "4"}});
  return {bush.passed() && cordoba.passed(), "bush2d: " + verdict_text(bush) + "; cordoba2d: " + verdict_text(cordoba)};
}

Outcome determinism_check() {
  const int before = static_cast<int>(parallel::threads());
  parallel::set_threads(before == 4 ? 2 : 4);
  const ex::Report again = run_recipe("bush3d", bush3d_report.params);
  parallel::set_threads(0);
  bool same = again.tables.size() == bush3d_report.tables.size() && !again.tables.empty();
  for (std::size_t i = 0; same && i < again.tables.size(); ++i)
    same = again.tables[i].csv() == bush3d_report.tables[i].csv();
  return {same, std::string(same ? "identical" : "DIFFERENT") + " CSV bodies at " +
                    std::to_string(before) + " vs " + std::to_string(before == 4 ? 2 : 4) + " threads"};
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  parallel::set_threads(0);
  const std::vector<Criterion> criteria = {
      {1, "gamma profile continuity and exact values", 1, gamma_profile_check},
      {2, "n=2, k=3 configuration bound table", 1, config_bound_table_check},
      {3, "absolute-continuity threshold n/2 + 1/3", 1, threshold_check},
      {4, "asymmetric equivalence on 50x50 grids", 1, asymmetric_check},
      {5, "energy inequality suite", 120,
       [] {
         return recipe_check("lemma52-sweep", {{"clouds", "100"},
                                               {"motions", "20"},
                                               {"max_points", "8"},
                                               {"k_list", "2,3"},
                                               {"delta_list", "0.05,0.1,0.3"},
                                               {"max_violations", "0"}});
       }},
      {6, "configuration L2 chain band", 300,
       [] {
         return recipe_check("gilp-chain", {{"ifs", "four-corner"},
                                            {"depth", "4"},
                                            {"k", "2"},
                                            {"delta_exponents", "3,4,5,6"},
                                            {"band", "4"}});
       }},
      {7, "two-point energy oracle", 1, energy_oracle_check},
      {8, "rigid-motion coordinates", 10,
       [] {
         return recipe_check("coords-roundtrip", {{"samples", "10000"},
                                                  {"pairs", "1000"},
                                                  {"params_per_pair", "10"},
                                                  {"roundtrip_tol", "1e-10"},
                                                  {"pair_line_tol", "1e-9"}});
       }},
      {9, "3-d bush law and radius check", 120, bush3d_check},
      {10, "planar bush law and Cordoba band", 120, planar_check},
      {11, "cell-level counting identity", 180,
       [] { return recipe_check("counting-identity", {{"seeds", "20"}, {"max_violations", "0"}}); }},
      {12, "random 3-d families exponent", 300,
       [] {
         return recipe_check("random3d", {{"delta_exponent", "6"}, {"seeds", "20"}, {"exponent_ceiling", "-1.8"}});
       }},
      {13, "Fourier diagnostics", 30, fourier_check},
      {14, "dimension estimators", 30, dimension_check},
      {15, "determinism across thread counts", 120, determinism_check},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.2f s of %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
