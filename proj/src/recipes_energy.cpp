#include <algorithm>
#include <cmath>

#include "gmt/config_energy.hpp"
#include "gmt/errors.hpp"
#include "gmt/experiment.hpp"
#include "gmt/ifs.hpp"
#include "gmt/rng.hpp"

namespace gmt::experiment {

namespace {

DiscreteMeasure random_cloud(std::uint64_t key, std::uint64_t index, int max_points) {
  CounterStream rs(key, index);
  const auto n = 2 + static_cast<std::size_t>(rs.below(static_cast<std::uint64_t>(max_points - 1)));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rs.uniform(), y = rs.uniform();
    pts.emplace_back(x, y);
  }
  return DiscreteMeasure::uniform(PointCloud(2, std::move(pts)));
}

void energy_inequality_sweep(Context& ctx) {
  const auto clouds = ctx.integer("clouds");
  const auto motions = ctx.integer("motions");
  const int max_points = static_cast<int>(ctx.integer("max_points"));
  if (max_points < 2) throw InvalidArgument("max_points must be >= 2");
  const auto ks = ctx.integers("k_list");
  const auto deltas = ctx.reals("delta_list");
  const std::uint64_t cloud_key = derive_key(ctx.seed(), "energy_sweep_clouds");
  const std::uint64_t motion_key = derive_key(ctx.seed(), "energy_sweep_motions");

  EnergyPolicy exact;
  exact.allow_sampling = false;
  Table& t = ctx.table("energy_inequality", {"cloud", "motion", "k", "delta", "points", "energy", "rhs", "rhs_2delta",
                                   "holds", "holds_2delta"});
  std::size_t violations = 0, violations_2delta = 0, checks = 0;
  for (std::int64_t c = 0; c < clouds; ++c) {
    const DiscreteMeasure m = random_cloud(cloud_key, static_cast<std::uint64_t>(c), max_points);
    for (std::int64_t j = 0; j < motions; ++j) {
      CounterStream rs(motion_key, static_cast<std::uint64_t>(c * motions + j));
      const RigidMotion g = haar_orthogonal(2, rs);
      for (auto k64 : ks)
        for (double delta : deltas) {
          const int k = static_cast<int>(k64);
          const EnergyResult e = group_energy(m, g, k, delta, exact);
          const RhsResult rhs = energy_rhs(m, g, k, delta, ctx.real("radius_factor"));
          const RhsResult rhs2 = energy_rhs(m, g, k, delta, 2.0);
          if (!e.has_numerator || !rhs.has_numerator || !rhs2.has_numerator)
            throw Error("lemma52-sweep: exact counts unavailable");
          const bool holds = e.numerator <= rhs.numerator;
          const bool holds2 = e.numerator <= rhs2.numerator;
          violations += !holds;
          violations_2delta += !holds2;
          ++checks;
          t.rows.push_back({cell(c), cell(j), cell(k), cell(delta), cell(m.size()), cell(e.value), cell(rhs.value),
                            cell(rhs2.value), cell(holds ? 1 : 0), cell(holds2 ? 1 : 0)});
        }
    }
  }
  ctx.summary("checks", static_cast<double>(checks));
  ctx.summary("violations_2delta", static_cast<double>(violations_2delta));
  ctx.verdict("violations", static_cast<double>(violations), Comparison::at_most, ctx.real("max_violations"), 0.0);
}

void gilp_chain(Context& ctx) {
  const PointCloud cloud = generate_ifs_cloud(IfsSystem::by_name(ctx.text("ifs")), static_cast<int>(ctx.integer("depth")));
  const DiscreteMeasure m = DiscreteMeasure::uniform(cloud);
  const int k = static_cast<int>(ctx.integer("k"));
  const int d = m.dim();
  const auto g_samples = static_cast<std::size_t>(ctx.integer("g_samples"));

  EnergyPolicy ep;
  ep.cap = static_cast<std::uint64_t>(ctx.integer("energy_cap"));
  ep.samples = static_cast<std::size_t>(ctx.integer("energy_samples"));
  EnumerationPolicy np;
  np.cap = static_cast<std::uint64_t>(ctx.integer("nu_cap"));
  np.samples = static_cast<std::size_t>(ctx.integer("nu_samples"));
  np.seed = derive_key(ctx.seed(), "gilp_nu");
  np.distinct = ctx.flag("distinct");

  Table& t = ctx.table("chain", {"delta", "nu_l2", "nu_se", "haar_energy", "haar_se", "ratio"});
  std::vector<double> ratios;
  for (auto e : ctx.integers("delta_exponents")) {
    const double delta = std::ldexp(1.0, -static_cast<int>(e));
    const Estimate nu = nu_l2_mass(m, k, delta, np);
    const Estimate he = haar_energy(m, k, delta, g_samples, derive_key(ctx.seed(), "gilp_haar"), ep);
    const double ratio = nu.value / (std::pow(delta, -d * (k - 1)) * he.value);
    ratios.push_back(ratio);
    t.rows.push_back({cell(delta), cell(nu.value), cell(nu.std_error), cell(he.value), cell(he.std_error), cell(ratio)});
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double band = *hi / *lo;
  ctx.summary("ratio_min", *lo);
  ctx.summary("ratio_max", *hi);
  ctx.verdict("ratio_band", band, Comparison::at_most, ctx.real("band"), 0.0);
}

}  // namespace

void add_energy_recipes(std::vector<Recipe>& out) {
  out.push_back({"lemma52-sweep",
                 "exact check of the group energy against the pushed-measure ball bound on random clouds",
                 "E^k(mu, g, delta) <= integral of nu_g(B_{2.5 delta}(z))^{k-1} d nu_g(z); the 2 delta form is "
                 "recorded without a verdict",
                 {{"clouds", ParamKind::integer, "100", "random clouds"},
                  {"motions", ParamKind::integer, "20", "Haar motions per cloud"},
                  {"max_points", ParamKind::integer, "8", "cloud size is uniform in [2, max_points]"},
                  {"k_list", ParamKind::integer_list, "2,3", "configuration sizes"},
                  {"delta_list", ParamKind::real_list, "0.05,0.1,0.3", "scales"},
                  {"radius_factor", ParamKind::real, "2.5", "ball radius in units of delta on the right side"},
                  {"max_violations", ParamKind::real, "0", "allowed inequality violations"}},
                 energy_inequality_sweep});
  out.push_back({"gilp-chain",
                 "configuration L2 mass against the Haar-averaged group energy across scales",
                 "the L2 mass of the configuration measure is bounded by C delta^{-n(k-1)} times the Haar "
                 "average of E^k(mu, g, delta)",
                 {{"ifs", ParamKind::text, "four-corner", "generator: cantor, four-corner, sierpinski"},
                  {"depth", ParamKind::integer, "4", "IFS depth"},
                  {"k", ParamKind::integer, "2", "configuration size"},
                  {"delta_exponents", ParamKind::integer_list, "3,4,5,6", "delta = 2^-e"},
                  {"g_samples", ParamKind::integer, "64", "Haar motions"},
                  {"energy_cap", ParamKind::integer, "4294967296", "exact group energy when N^{2k} <= cap"},
                  {"energy_samples", ParamKind::integer, "65536", "tuples per motion when sampling"},
                  {"nu_cap", ParamKind::integer, "1048576", "exact L2 mass when N^k <= cap"},
                  {"nu_samples", ParamKind::integer, "1048576", "tuple pairs when sampling"},
                  {"distinct", ParamKind::flag, "false", "exclude tuples with repeated points"},
                  {"band", ParamKind::real, "4", "allowed max/min ratio across scales"}},
                 gilp_chain});
}

}  // namespace gmt::experiment
