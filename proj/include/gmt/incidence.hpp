#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmt/measures.hpp"
#include "gmt/rigid_motion.hpp"
#include "gmt/stats.hpp"
#include "gmt/tube.hpp"

namespace gmt {

// ---- Rigid-motion coordinates -------------------------------------------

/// (fixed point, cot(theta / 2)) of an orientation-preserving planar motion.
/// Pure translations have no fixed point and are flagged invalid.
struct MotionCoords {
  Point x0 = Point(0.0, 0.0);
  double z = 0.0;
  bool valid = false;

  Point as_point() const { return Point(x0[0], x0[1], z); }
  static MotionCoords from_point(const Point& p) { return {Point(p[0], p[1]), p[2], true}; }
};

/// Throws InvalidArgument for reflections or non-planar motions.
MotionCoords motion_to_coords(const RigidMotion& g);

/// Rotation by 2 arccot(z) in (0, 2 pi) about x0.
RigidMotion coords_to_motion(const MotionCoords& c);

/// Line in R^3 of the motions carrying x3 to x1: anchor + t * direction.
/// The direction is ((x1 - x3)^perp / 2, 1), not normalised, so the line
/// parameter equals the z-coordinate. Coincident points give the vertical
/// line through (x1, 0) with `degenerate` set.
struct Line3 {
  Point anchor;
  Point direction;
  bool degenerate = false;

  Point at(double t) const { return anchor + t * direction; }
};

Line3 pair_line(const Point& x1, const Point& x3);

// ---- Tube families --------------------------------------------------------

struct TubeFamily {
  int dim = 0;
  double radius = 0.0;
  std::vector<Tube> tubes;
  std::optional<double> direction_separation;

  std::size_t size() const { return tubes.size(); }
};

/// Validates the shared radius and dimension.
TubeFamily make_family(int dim, double radius, std::vector<Tube> tubes,
                       std::optional<double> direction_separation = std::nullopt);

struct PairTubeOptions {
  double box_bound = 3.0;           // |x0| <= box_bound
  double z_bound = 19.983330554894014;  // cot(0.05): rotation angle >= 0.1
};

/// One radius-delta tube per pair (x1, x3) in F1 x F2, around the pair line
/// clipped to |x0| <= box_bound and |z| <= z_bound. Pairs whose clipped line
/// is empty are dropped.
TubeFamily build_pair_tubes(const PointCloud& F1, const PointCloud& F2, double delta,
                            const PairTubeOptions& options = {});

struct DirectionWitness {
  std::size_t intersecting_pairs = 0;
  std::size_t violations = 0;  // intersecting pairs with gap < threshold
  double min_gap = 0.0;        // over intersecting pairs (pi/2 if none)
  std::size_t first_i = 0, first_j = 0;
};

/// Scans all tube pairs whose radius neighbourhoods meet (axis distance
/// <= 2 * radius) and checks their direction gap against `threshold`.
DirectionWitness direction_gap_witness(const TubeFamily& fam, double threshold);

/// Maximal-by-greedy set of lines through the origin in R^3 whose pairwise
/// angles are >= separation (u and -u are the same line).
std::vector<Point> separated_directions_3d(double separation);

/// Unit segments through the origin along 3-d directions `separation_factor *
/// delta` apart; tube radius delta.
TubeFamily origin_bush_3d(double delta, double separation_factor = 10.0);

/// L unit segments through the origin in R^2 at angles i * spacing.
TubeFamily planar_bush(double delta, std::size_t L, double spacing);

/// L unit segments with delta-separated directions and centres uniform in
/// [0,1]^3. Fewer directions than L is an error.
TubeFamily random_family_3d(double delta, std::size_t L, std::uint64_t seed);

// ---- Cell census ------------------------------------------------------------

inline constexpr std::uint64_t kDefaultCellCap = std::uint64_t{1} << 24;

/// Per-cell tube counts over a grid of side `cell` aligned to the origin.
/// `histogram[c]` is the number of cells met by exactly c tubes (cells met by
/// no tube are not counted) and `max_norm[c]` the largest centre norm among
/// them. A cell is met by a tube when its centre lies within
/// `membership_radius` of the tube axis.
struct Census {
  int dim = 0;
  double cell = 0.0;
  double membership_radius = 0.0;
  std::size_t tubes = 0;
  std::vector<std::uint64_t> histogram;
  std::vector<double> max_norm;

  std::uint64_t cells_at_least(std::size_t r) const;
  double measure_at_least(std::size_t r) const;
  double max_norm_at_least(std::size_t r) const;
};

/// Dense count over the bounding box, processed in slabs along the last axis
/// so that at most `max_cells` counters are alive. Throws ResourceCapExceeded
/// when a single layer of cells exceeds the cap.
Census tube_census(const TubeFamily& fam, double cell, double membership_radius,
                   std::uint64_t max_cells = kDefaultCellCap);

struct RichnessProfile {
  double delta = 0.0;  // tube radius
  double cell = 0.0;
  std::size_t L = 0;
  int dim = 0;
  std::vector<std::uint64_t> r;
  std::vector<double> measure;
};

/// Dyadic r = 1, 2, 4, ... up to the first power of two >= L.
std::vector<std::uint64_t> dyadic_r(std::size_t L);

/// Conservative richness profile: membership radius = radius + half the cell
/// diagonal.
RichnessProfile rich_profile(const TubeFamily& fam, double cell, const std::vector<std::uint64_t>& r_list,
                             std::uint64_t max_cells = kDefaultCellCap);
RichnessProfile profile_from_census(const Census& census, double delta, const std::vector<std::uint64_t>& r_list);

/// Cells whose centre lies within inflate * radius of some axis, times cell^d.
double union_volume(const TubeFamily& fam, double cell, double inflate = 3.0,
                    std::uint64_t max_cells = kDefaultCellCap);

/// Upper bound for the measure of the intersection of two radius-R
/// neighbourhoods of segments: 0 when the axes are more than 2R apart, else
/// min(c_d R^d / sin(gap), full neighbourhood measure) with c_2 = 4 and
/// c_3 = 16/3.
double pair_intersection_measure(const Tube& s, const Tube& t, double R);

/// Grid estimate of the same intersection (cell-centre membership).
double pair_intersection_grid(const Tube& s, const Tube& t, double R, double cell);

/// Measure of the radius-R neighbourhood of a segment (caps included).
double tube_measure(int dim, double length, double R);

/// Sum over unordered pairs of pair_intersection_measure at R = inflate * radius.
double pairwise_intersection_sum(const TubeFamily& fam, double inflate = 3.0);

/// Slope of log measure against log r over r in [4, L/4] with measure > 0.
double fit_richness_exponent(const RichnessProfile& profile);

enum class BoundKind { weak, guess, szt, cordoba, weak_planar };

BoundKind parse_bound(std::string_view name);
std::string_view bound_name(BoundKind kind);
double bound_value(BoundKind kind, double delta, double L, double r);

struct BoundRow {
  std::uint64_t r = 0;
  double measure = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct BoundCheck {
  std::vector<BoundRow> rows;
  double max_ratio = 0.0;
};

BoundCheck verify_bound(const RichnessProfile& profile, BoundKind kind);

/// Largest centre norm over cells met by >= r tubes (conservative membership).
double bush_radius_check(const TubeFamily& fam, double cell, std::uint64_t r,
                         std::uint64_t max_cells = kDefaultCellCap);
/// 10 / sqrt(r) + sqrt(3) * cell.
double bush_radius_bound(std::uint64_t r, double cell);

// ---- Angle condition -------------------------------------------------------

struct TechOptions {
  double translation_radius = 3.0;
  double angle_cut = 0.1;       // U' = {|S - I| >= angle_cut}
  double near_factor = 2.0;     // |x1 - g x3| <= near_factor * delta
};

struct TechResult {
  double ratio = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  double mean_all = 0.0;    // mean integrand over U(2)
  double mean_inner = 0.0;  // mean integrand times indicator of U'
};

/// Ratio of the squared near-coincidence mass over U' to that over U, with
/// g sampled from Haar angle times uniform translation in a ball.
TechResult tech_ratio(const DiscreteMeasure& m1, const DiscreteMeasure& m2, double delta, std::size_t g_samples,
                      std::uint64_t seed, const TechOptions& options = {});

/// Fraction of rotation angles with |2 sin(theta / 2)| >= cut.
double tech_angular_fraction(double cut);

}  // namespace gmt
