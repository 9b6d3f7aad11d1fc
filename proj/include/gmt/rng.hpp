#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace gmt {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Key for an independent stream family: mixes the user seed with a
/// component name, so adding a component never shifts another's draws.
std::uint64_t derive_key(std::uint64_t seed, std::string_view component);
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index);

/// Sequential draws for one (key, sample index) pair. The counter is
/// (block, 0, index lo, index hi), so sample i always sees the same numbers
/// no matter which worker evaluates it.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t key, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }
  /// Standard normal (Box-Muller, one output per call).
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t index_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace gmt
