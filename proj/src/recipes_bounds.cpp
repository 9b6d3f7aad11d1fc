#include <algorithm>
#include <cmath>

#include "gmt/bounds.hpp"
#include "gmt/errors.hpp"
#include "gmt/experiment.hpp"

namespace gmt::experiment {

namespace {

using bounds::config_dim_bound;

// Reference table for n = 2, k = 3.
double n2k3_table(double s) {
  if (s <= 0.5) return 3.0 * s - 1.0;
  if (s <= 1.0) return 2.0 * s - 0.5;
  return 2.5 * s - 1.0;
}

std::vector<double> grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

void bounds_table(Context& ctx) {
  const int n = static_cast<int>(ctx.integer("n"));
  const int k = static_cast<int>(ctx.integer("k"));
  const double s_max = ctx.real("s_max") > 0.0 ? ctx.real("s_max") : n;
  const auto s_grid = grid(ctx.real("s_min"), s_max, ctx.real("s_step"));

  Table& t = ctx.table("bounds", {"n", "k", "s", "gamma", "bound", "lebesgue_positive", "branch"});
  std::size_t decreases = 0;
  double table_err = 0.0;
  double prev = -1e300;
  for (double s : s_grid) {
    const auto b = config_dim_bound(n, k, s);
    t.rows.push_back({cell(n), cell(k), cell(s), cell(bounds::gamma_s(n, s)), cell(b.value),
                      cell(b.lebesgue_positive ? 1 : 0), cell(b.branch)});
    if (b.value < prev - 1e-12) ++decreases;
    prev = b.value;
    // The reference table is the unclamped expression; the clamped value
    // must equal min(table, k(k-1)/2).
    if (n == 2 && k == 3 && s >= 1.0 / 3.0 - 1e-12)
      table_err = std::max({table_err, std::abs(b.unclamped - n2k3_table(s)),
                            std::abs(b.value - std::min(n2k3_table(s), 3.0))});
  }

  // Continuity of gamma at the three break points for every n up to n_max.
  double jump = 0.0;
  for (int m = 2; m <= ctx.integer("n_max"); ++m) {
    const double pts[3] = {0.5 * (m - 1), 0.5 * m, 0.5 * (m + 2)};
    for (int b = 0; b < 3; ++b) {
      if (pts[b] > m) continue;
      jump = std::max(jump, std::abs(bounds::gamma_branch_value(m, b + 1, pts[b]) -
                                     bounds::gamma_branch_value(m, b + 2, pts[b])));
    }
  }
  const double tol = ctx.real("tol");
  ctx.verdict("gamma_continuity_max_jump", jump, Comparison::at_most, 0.0, tol);
  ctx.verdict("bound_decreases", static_cast<double>(decreases), Comparison::at_most, ctx.real("max_decreases"), 0.0);
  if (n == 2 && k == 3) ctx.verdict("n2_k3_table_max_error", table_err, Comparison::at_most, 0.0, tol);
}

void threshold_table(Context& ctx) {
  const int n_max = static_cast<int>(ctx.integer("n_max"));
  Table& t = ctx.table("thresholds", {"n", "k", "threshold", "bisection", "found", "branch"});
  double bis_err = 0.0, k2_err = 0.0;
  for (int n = 2; n <= n_max; ++n)
    for (int k = 2; k <= n + 1; ++k) {
      const auto th = bounds::abs_continuity_threshold(n, k);
      const double bis = bounds::abs_continuity_threshold_bisect(n, k);
      t.rows.push_back({cell(n), cell(k), cell(th.s), cell(bis), cell(th.found ? 1 : 0), cell(th.branch)});
      bis_err = std::max(bis_err, std::abs(th.s - bis));
      if (k == 2) k2_err = std::max(k2_err, std::abs(th.s - (0.5 * n + 1.0 / 3.0)));
    }
  const double tol = ctx.real("tol");
  ctx.verdict("bisection_max_error", bis_err, Comparison::at_most, 0.0, tol);
  ctx.verdict("k2_closed_form_max_error", k2_err, Comparison::at_most, 0.0, tol);
}

void asymmetric_grid(Context& ctx) {
  const auto ns = ctx.integers("n_list");
  const auto points = ctx.integer("grid");
  if (points < 2) throw InvalidArgument("grid must be >= 2");
  Table& t = ctx.table("asymmetric", {"n", "s1", "s2", "positive", "closed_form", "exact"});
  std::size_t mismatches = 0, closed_mismatches = 0, checked = 0;
  for (auto n64 : ns) {
    const int n = static_cast<int>(n64);
    for (long i = 0; i < points; ++i)
      for (long j = i; j < points; ++j) {
        const double s1 = 0.5 * n + static_cast<double>(i) / static_cast<double>(points - 1);
        const double s2 = 0.5 * n + static_cast<double>(j) / static_cast<double>(points - 1);
        const bool a = bounds::asymmetric_positive(n, s1, s2);
        const bool b = bounds::asymmetric_closed_form(n, s1, s2);
        // With s = n/2 + i/(P-1), s2 + s1/2 > 3n/4 + 1/2 is 2j + i > P - 1.
        const bool exact = 2 * j + i > points - 1;
        t.rows.push_back({cell(n), cell(s1), cell(s2), cell(a ? 1 : 0), cell(b ? 1 : 0), cell(exact ? 1 : 0)});
        mismatches += a != exact;
        closed_mismatches += b != exact;
        ++checked;
      }
  }
  ctx.summary("grid_points", static_cast<double>(checked));
  ctx.summary("closed_form_mismatches", static_cast<double>(closed_mismatches));
  ctx.verdict("mismatches", static_cast<double>(mismatches), Comparison::at_most, ctx.real("max_mismatches"), 0.0);
}

}  // namespace

void add_bounds_recipes(std::vector<Recipe>& out) {
  out.push_back({"bounds-table",
                 "gamma profile and configuration-set dimension bound over an s-grid",
                 "dimension lower bound for k-point configurations from the spherical-average decay profile; "
                 "n = 2, k = 3 gives 3s-1, 2s-0.5, 2.5s-1",
                 {{"n", ParamKind::integer, "2", "ambient dimension"},
                  {"k", ParamKind::integer, "3", "points per configuration"},
                  {"s_min", ParamKind::real, "0.1", "first s on the grid"},
                  {"s_max", ParamKind::real, "0", "last s on the grid (0 means n)"},
                  {"s_step", ParamKind::real, "0.1", "grid step"},
                  {"n_max", ParamKind::integer, "6", "largest n in the continuity check"},
                  {"tol", ParamKind::real, "1e-12", "tolerance for continuity and table agreement"},
                  {"max_decreases", ParamKind::real, "0", "allowed decreases of the bound along the grid"}},
                 bounds_table});
  out.push_back({"threshold-table",
                 "absolute-continuity thresholds per (n, k), branch algebra against bisection",
                 "configuration measure is absolutely continuous once (n-s)(k-1) < gamma_s; for k = 2 this is "
                 "s > n/2 + 1/3",
                 {{"n_max", ParamKind::integer, "5", "largest ambient dimension"},
                  {"tol", ParamKind::real, "1e-9", "agreement tolerance"}},
                 threshold_table});
  out.push_back({"asymmetric-grid",
                 "asymmetric distance-set condition against its closed form on a grid",
                 "max{gamma_s1 + s2, gamma_s2 + s1} > n is equivalent to s2 + s1/2 > 3n/4 + 1/2 when both "
                 "exponents lie in [n/2, (n+2)/2] and s2 >= s1",
                 {{"n_list", ParamKind::integer_list, "2,3", "ambient dimensions"},
                  {"grid", ParamKind::integer, "50", "grid points per axis"},
                  {"max_mismatches", ParamKind::real, "0", "allowed disagreements with the exact condition"}},
                 asymmetric_grid});
}

}  // namespace gmt::experiment
