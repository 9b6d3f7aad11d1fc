#pragma once

#include <cstddef>
#include <span>

namespace gmt {

/// Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Running first and second moments; merged in a fixed order by the
/// parallel reducers.
struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  friend Moments operator+(const Moments& a, const Moments& b) {
    return {a.sum + b.sum, a.sum_sq + b.sum_sq, a.n + b.n};
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  /// Standard error of the mean (0 for fewer than two samples).
  double std_error() const;
  Estimate estimate(double scale = 1.0) const;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope * x + intercept; needs >= 2 distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> v);

}  // namespace gmt
