#include <atomic>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"
#include "gmt/stats.hpp"

using namespace gmt;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("derived keys separate components and seeds") {
  CHECK(derive_key(1, "a") != derive_key(1, "b"));
  CHECK(derive_key(1, "a") != derive_key(2, "a"));
  CHECK(derive_key(7, "x") == derive_key(7, "x"));
  CHECK(derive_key(7, std::uint64_t{3}) != derive_key(7, std::uint64_t{4}));
}

TEST_CASE("counter streams are reproducible per index") {
  CounterStream a(11, 5), b(11, 5), c(11, 6);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs = differs || x != c.next_u64();
  }
  CHECK(differs);
}

TEST_CASE("uniform, below and normal have the right moments") {
  Moments u, n;
  std::vector<int> hist(7, 0);
  for (std::uint64_t i = 0; i < 50000; ++i) {
    CounterStream rs(derive_key(3, "moments"), i);
    const double x = rs.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    u.add(x);
    n.add(rs.normal());
    const auto k = rs.below(7);
    REQUIRE(k < 7);
    ++hist[k];
  }
  CHECK(std::abs(u.mean() - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 50000));
  CHECK(std::abs(n.mean()) < 4.0 * std::sqrt(1.0 / 50000));
  CHECK(std::abs(n.sum_sq / n.n - 1.0) < 0.03);
  for (int c : hist) CHECK(std::abs(c - 50000.0 / 7) < 4.0 * std::sqrt(50000.0 / 7));
}

TEST_CASE("parallel reduce does not depend on the worker count") {
  const std::size_t n = 100003;
  auto sum_for = [&](unsigned threads) {
    parallel::set_threads(threads);
    return parallel::reduce(n, 0.0, [](std::size_t b, std::size_t e) {
      double s = 0.0;
      for (std::size_t i = b; i < e; ++i) s += 1.0 / (1.0 + static_cast<double>(i));
      return s;
    });
  };
  const double one = sum_for(1);
  CHECK(sum_for(3) == one);
  CHECK(sum_for(8) == one);
  parallel::set_threads(0);
}

TEST_CASE("for_each_index visits every index once, nested calls included") {
  parallel::set_threads(4);
  std::vector<std::atomic<int>> seen(1000);
  parallel::for_each_index(10, [&](std::size_t i) {
    parallel::for_each_index(100, [&](std::size_t j) { seen[i * 100 + j].fetch_add(1); });
  });
  for (auto& s : seen) CHECK(s.load() == 1);
  parallel::set_threads(0);
}

TEST_CASE("stats helpers") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  const std::vector<double> v{1e16, 1.0, -1e16};
  CHECK(compensated_sum(v) == 1.0);
  Moments m;
  m.add(1.0);
  CHECK(m.std_error() == 0.0);
  m.add(3.0);
  CHECK(m.std_error() == doctest::Approx(1.0));
}
