#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gmt/bounds.hpp"
#include "gmt/errors.hpp"

using namespace gmt;
using namespace gmt::bounds;

namespace {

// The four branches written out independently of the library.
double gamma_ref(int n, double s) {
  if (s <= n / 2.0 - 0.5) return s;
  if (s <= n / 2.0) return (n - 1) / 2.0;
  if (s <= n / 2.0 + 1.0) return (n + 2.0 * s - 2.0) / 4.0;
  return s - 1.0;
}

}  // namespace

TEST_CASE("gamma_s exact values") {
  CHECK(gamma_s(2, 0.4) == 0.4);
  CHECK(gamma_s(3, 2.6) == 1.6);
  CHECK(gamma_s(2, 1.0) == 0.5);
  CHECK(gamma_s(2, 2.0) == 1.0);  // closed at s = n
}

TEST_CASE("gamma_s matches the branch table on a grid") {
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i <= 1000; ++i) {
      const double s = n * i / 1000.0;
      CHECK(gamma_s(n, s) == doctest::Approx(gamma_ref(n, s)).epsilon(1e-14));
    }
}

TEST_CASE("gamma_s is continuous at the break points") {
  for (int n = 2; n <= 6; ++n)
    for (double bp : {n / 2.0 - 0.5, n / 2.0, n / 2.0 + 1.0}) {
      if (bp > n) continue;
      const double eps = 1e-9;
      // The last break point coincides with s = n for n = 2.
      const double hi = std::min(bp + eps, static_cast<double>(n));
      CHECK(std::abs(gamma_s(n, hi) - gamma_s(n, bp - eps)) < 3e-9);
    }
}

TEST_CASE("gamma_s is nondecreasing and 1-Lipschitz") {
  for (int n = 2; n <= 6; ++n) {
    double prev = gamma_s(n, n / 2000.0);
    for (int i = 2; i <= 2000; ++i) {
      const double s = n * i / 2000.0;
      const double g = gamma_s(n, s);
      CHECK(g >= prev - 1e-15);
      CHECK(g - prev <= n / 2000.0 + 1e-12);
      prev = g;
    }
  }
}

TEST_CASE("gamma_s rejects s outside (0, n]") {
  CHECK_THROWS_AS(gamma_s(2, 0.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_s(2, 2.5), InvalidArgument);
  CHECK_THROWS_AS(gamma_s(1, 0.5), InvalidArgument);
}

TEST_CASE("configuration dimension bound examples") {
  CHECK(config_dim_bound(2, 3, 0.4).value == doctest::Approx(0.2));
  CHECK(config_dim_bound(2, 3, 0.8).value == doctest::Approx(1.1));
  CHECK(config_dim_bound(2, 3, 1.5).value == doctest::Approx(2.75));
  CHECK(config_dim_bound(2, 3, 1.2).value == doctest::Approx(2.0));
  const BoundReport r = config_dim_bound(2, 2, 2.0);
  CHECK(r.value == 1.0);
  CHECK(r.unclamped == 2.0);
  CHECK(r.lebesgue_positive);
  CHECK(config_dim_bound(2, 2, 1.0).unclamped == doctest::Approx(0.5));
  CHECK_THROWS_AS(config_dim_bound(2, 4, 1.0), InvalidArgument);
  CHECK_THROWS_AS(config_dim_bound(2, 1, 1.0), InvalidArgument);
}

TEST_CASE("configuration bound is the clamped formula") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 2; k <= n + 1; ++k)
      for (int i = 1; i <= 200; ++i) {
        const double s = n * i / 200.0;
        const double full = k * (k - 1) / 2.0;
        const double raw = full - n * (k - 1) + s * (k - 1) + gamma_ref(n, s);
        const BoundReport b = config_dim_bound(n, k, s);
        CHECK(b.unclamped == doctest::Approx(raw).epsilon(1e-13));
        CHECK(b.value == doctest::Approx(std::min(raw, full)).epsilon(1e-13));
        CHECK(b.lebesgue_positive == (raw >= full - 1e-12));
      }
}

TEST_CASE("absolute continuity thresholds") {
  for (int n = 2; n <= 5; ++n) {
    const Threshold t = abs_continuity_threshold(n, 2);
    REQUIRE(t.found);
    CHECK(std::abs(t.s - (n / 2.0 + 1.0 / 3.0)) < 1e-9);
    CHECK(std::abs(abs_continuity_threshold_bisect(n, 2) - t.s) < 1e-9);
  }
  CHECK(std::abs(abs_continuity_threshold(2, 3).s - 1.6) < 1e-9);
  CHECK(std::abs(abs_continuity_threshold(3, 2).s - 11.0 / 6.0) < 1e-9);
  for (int n = 2; n <= 6; ++n)
    for (int k = 2; k <= n + 1; ++k) {
      const Threshold t = abs_continuity_threshold(n, k);
      CHECK(std::abs(abs_continuity_threshold_bisect(n, k) - t.s) < 1e-9);
      if (t.found) {
        // Just above the threshold the condition holds; just below it fails.
        CHECK((n - (t.s + 1e-6)) * (k - 1) < gamma_ref(n, t.s + 1e-6));
        CHECK((n - (t.s - 1e-6)) * (k - 1) >= gamma_ref(n, t.s - 1e-6));
      }
    }
}

TEST_CASE("asymmetric positivity examples") {
  CHECK(asymmetric_positive(2, 1.0, 1.6));
  CHECK_FALSE(asymmetric_positive(2, 4.0 / 3.0, 4.0 / 3.0));
}

TEST_CASE("asymmetric positivity matches the closed form on the middle band") {
  for (int n : {2, 3}) {
    const double lo = n / 2.0, hi = (n + 2) / 2.0;
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        const double s1 = lo + (hi - lo) * i / 49.0, s2 = lo + (hi - lo) * j / 49.0;
        if (s2 < s1) continue;
        // s1 = n/2 + i/49 and s2 = n/2 + j/49, so s2 + s1/2 > 3n/4 + 1/2
        // is the integer condition 2j + i > 49.
        CHECK(asymmetric_positive(n, s1, s2) == (2 * j + i > 49));
        CHECK(asymmetric_closed_form(n, s1, s2) == asymmetric_positive(n, s1, s2));
      }
  }
}
