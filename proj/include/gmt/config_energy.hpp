#pragma once

#include <cstdint>
#include <vector>

#include "gmt/measures.hpp"
#include "gmt/rigid_motion.hpp"
#include "gmt/spatial_index.hpp"

namespace gmt {

/// Enumeration versus sampling policy shared by the configuration
/// operations. `cap` bounds the number of tuples an exact pass would cover.
struct EnumerationPolicy {
  std::uint64_t cap = std::uint64_t{1} << 20;
  bool allow_sampling = true;
  std::size_t samples = std::size_t{1} << 16;
  std::uint64_t seed = 0;
  /// Exclude tuples that repeat a point index (weights renormalised).
  bool distinct = false;
};

/// k(k-1)/2 pairwise distances |x_i - x_j|, i < j, lexicographic.
std::vector<double> config_vector(std::span<const Point> tuple);

struct CellCount {
  std::size_t cells = 0;
  bool exact = true;
  std::uint64_t tuples = 0;  // tuples enumerated or sampled
};

/// Occupied delta-cells of the configuration vectors of k-tuples of the
/// support (repeats allowed unless policy.distinct).
CellCount config_cells(const DiscreteMeasure& m, int k, double delta, const EnumerationPolicy& policy = {});

/// Law of u - g(v) for independent m-samples u, v. Atoms within 1e-12 are
/// merged. When m is uniform on N points, `counts` holds the number of
/// ordered pairs behind each atom (weights are counts / N^2).
struct PushedMeasure {
  MergedAtoms atoms;
  std::uint64_t support_size = 0;  // N
  bool uniform = false;
  const std::vector<std::uint64_t>& counts() const { return atoms.multiplicity; }
};

inline constexpr double kAtomMergeTol = 1e-12;

PushedMeasure push_measure(const DiscreteMeasure& m, const RigidMotion& g);

struct EnergyResult {
  double value = 0.0;
  bool exact = true;
  std::uint64_t samples = 0;
  double std_error = 0.0;
  /// Exact tuple count (numerator over N^{2k}) when the measure is uniform
  /// and the enumeration was exact.
  std::uint64_t numerator = 0;
  bool has_numerator = false;
};

struct EnergyPolicy {
  std::uint64_t cap = std::uint64_t{1} << 24;  // on N^{2k}
  bool allow_sampling = true;
  std::size_t samples = std::size_t{1} << 16;
  std::uint64_t seed = 0;
};

/// m^{2k}-mass of (x_1..x_k, y_1..y_k) with |(x_i - g y_i) - (x_j - g y_j)| <= delta
/// for all i < j.
EnergyResult group_energy(const DiscreteMeasure& m, const RigidMotion& g, int k, double delta,
                          const EnergyPolicy& policy = {});

struct RhsResult {
  double value = 0.0;
  std::uint64_t numerator = 0;  // over N^{2k}, uniform measures only
  bool has_numerator = false;
};

/// sum_z w(z) * nu_g(B_{radius_factor * delta}(z))^{k-1} over closed balls.
RhsResult energy_rhs(const DiscreteMeasure& m, const RigidMotion& g, int k, double delta,
                     double radius_factor = 2.5);

/// Average of group_energy over Haar-random g in O(d), d in {2, 3}.
Estimate haar_energy(const DiscreteMeasure& m, int k, double delta, std::size_t g_samples, std::uint64_t seed,
                     const EnergyPolicy& policy = {});

/// delta^{-k(k-1)/2} * P(|t - t'|_inf <= delta) for independent configuration
/// vectors t, t' of m-random k-tuples.
Estimate nu_l2_mass(const DiscreteMeasure& m, int k, double delta, const EnumerationPolicy& policy = {});

}  // namespace gmt
