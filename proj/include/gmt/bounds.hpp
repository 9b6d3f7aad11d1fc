#pragma once

#include <string>

namespace gmt::bounds {

/// Which piece of the gamma profile produced a value (1-based, in order of s).
struct GammaValue {
  double value = 0.0;
  int branch = 0;
};

/// Spherical-average decay exponent gamma_s for 0 < s <= n:
///   s             on (0, (n-1)/2]
///   (n-1)/2       on [(n-1)/2, n/2]
///   (n+2s-2)/4    on [n/2, (n+2)/2]
///   s-1           on [(n+2)/2, n]
/// Ties at the break points go to the lower branch. At s = n the profile is
/// closed by continuity of whichever branch is active there.
GammaValue gamma_profile(int n, double s);
/// The formula of one branch evaluated at s, ignoring its interval.
double gamma_branch_value(int n, int branch, double s);
double gamma_s(int n, double s);

struct BoundReport {
  double value = 0.0;      // min(unclamped, k(k-1)/2)
  double unclamped = 0.0;  // k(k-1)/2 - n(k-1) + s(k-1) + gamma_s
  bool lebesgue_positive = false;
  int branch = 0;
  std::string label;  // e.g. "gamma=(n+2s-2)/4"
};

/// Lower bound for the dimension of the k-point configuration set of an
/// s-dimensional set in R^n.
BoundReport config_dim_bound(int n, int k, double s);

struct Threshold {
  double s = 0.0;
  bool found = false;  // false: no solution in (0, n), s = n sentinel
  int branch = 0;
};

/// Smallest s with (n-s)(k-1) < gamma_s, solved branch by branch.
Threshold abs_continuity_threshold(int n, int k);

/// Bisection on the same condition; independent of the branch algebra.
double abs_continuity_threshold_bisect(int n, int k, double tol = 1e-12);

/// Comparisons in the two functions below treat values within 1e-12 of the
/// threshold as not exceeding it, so lattice points lying exactly on the
/// boundary get the same answer from both.
inline constexpr double kCompareSlack = 1e-12;

/// max{gamma_{s1} + s2, gamma_{s2} + s1} > n.
bool asymmetric_positive(int n, double s1, double s2);

/// s2 + s1/2 > 3n/4 + 1/2 (valid when both exponents sit on the third branch
/// and s2 >= s1).
bool asymmetric_closed_form(int n, double s1, double s2);

}  // namespace gmt::bounds
