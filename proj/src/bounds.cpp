#include "gmt/bounds.hpp"

#include <cmath>
#include <string>

#include "gmt/errors.hpp"

namespace gmt::bounds {

namespace {

void check_ns(int n, double s) {
  if (n < 2) throw InvalidArgument("gamma_s: n must be >= 2");
  if (!(s > 0.0) || s > n) throw InvalidArgument("gamma_s: s must lie in (0, n], got " + std::to_string(s));
}

void check_k(int n, int k) {
  if (k < 2 || k > n + 1)
    throw InvalidArgument("k must lie in {2, ..., n+1}; got k = " + std::to_string(k) + ", n = " + std::to_string(n));
}

double branch_value(int n, int branch, double s) {
  switch (branch) {
    case 1: return s;
    case 2: return 0.5 * (n - 1);
    case 3: return 0.25 * (n + 2.0 * s - 2.0);
    default: return s - 1.0;
  }
}

const char* branch_label(int branch) {
  switch (branch) {
    case 1: return "gamma=s";
    case 2: return "gamma=(n-1)/2";
    case 3: return "gamma=(n+2s-2)/4";
    default: return "gamma=s-1";
  }
}

}  // namespace

double gamma_branch_value(int n, int branch, double s) {
  if (branch < 1 || branch > 4) throw InvalidArgument("gamma branch must be 1..4");
  return branch_value(n, branch, s);
}

GammaValue gamma_profile(int n, double s) {
  check_ns(n, s);
  int branch = 4;
  if (s <= 0.5 * (n - 1))
    branch = 1;
  else if (s <= 0.5 * n)
    branch = 2;
  else if (s <= 0.5 * (n + 2))
    branch = 3;
  return {branch_value(n, branch, s), branch};
}

double gamma_s(int n, double s) { return gamma_profile(n, s).value; }

BoundReport config_dim_bound(int n, int k, double s) {
  check_k(n, k);
  const GammaValue g = gamma_profile(n, s);
  const double cap = 0.5 * k * (k - 1);
  BoundReport r;
  r.unclamped = cap - static_cast<double>(n) * (k - 1) + s * (k - 1) + g.value;
  r.value = std::min(r.unclamped, cap);
  r.lebesgue_positive = r.unclamped >= cap;
  r.branch = g.branch;
  r.label = branch_label(g.branch);
  return r;
}

Threshold abs_continuity_threshold(int n, int k) {
  check_k(n, k);
  if (n < 2) throw InvalidArgument("threshold: n must be >= 2");
  const double km = k - 1.0;
  // Solve (n - s)(k - 1) = branch(s) on each piece; each is linear in s.
  const double lo[5] = {0.0, 0.0, 0.5 * (n - 1), 0.5 * n, 0.5 * (n + 2)};
  const double hi[5] = {0.0, 0.5 * (n - 1), 0.5 * n, 0.5 * (n + 2), static_cast<double>(n)};
  const double sol[5] = {
      0.0,
      n * km / k,
      n - (n - 1) / (2.0 * km),
      (4.0 * km * n - n + 2.0) / (4.0 * km + 2.0),
      (n * km + 1.0) / k,
  };
  Threshold best{static_cast<double>(n), false, 0};
  for (int b = 1; b <= 4; ++b) {
    const double a = std::max(lo[b], 0.0), z = std::min(hi[b], static_cast<double>(n));
    if (a > z) continue;
    const double s = sol[b];
    if (s >= a - 1e-15 && s <= z + 1e-15 && s > 0.0 && s < n && s < best.s) best = {s, true, b};
  }
  return best;
}

double abs_continuity_threshold_bisect(int n, int k, double tol) {
  check_k(n, k);
  auto f = [&](double s) { return gamma_s(n, s) - (n - s) * (k - 1); };
  double a = 0.0, b = n;
  if (f(b) <= 0.0) return n;
  while (b - a > tol) {
    const double c = 0.5 * (a + b);
    if (c <= a || c >= b) break;
    (c > 0.0 && f(c) > 0.0 ? b : a) = c;
  }
  return 0.5 * (a + b);
}

bool asymmetric_positive(int n, double s1, double s2) {
  const double v = std::max(gamma_s(n, s1) + s2, gamma_s(n, s2) + s1);
  return v > n + kCompareSlack;
}

bool asymmetric_closed_form(int n, double s1, double s2) { return s2 + 0.5 * s1 > 0.75 * n + 0.5 + kCompareSlack; }

}  // namespace gmt::bounds
