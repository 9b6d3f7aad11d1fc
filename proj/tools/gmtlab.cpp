// gmtlab: command-line front end for the library and the recipe runner.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmt/bounds.hpp"
#include "gmt/config_energy.hpp"
#include "gmt/errors.hpp"
#include "gmt/experiment.hpp"
#include "gmt/ifs.hpp"
#include "gmt/incidence.hpp"
#include "gmt/measures.hpp"
#include "gmt/parallel.hpp"
#include "gmt/rng.hpp"

namespace {

using nlohmann::ordered_json;

enum Exit { kPass = 0, kVerdictFail = 1, kUsage = 2, kResourceCap = 3 };

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  unsigned threads = 0;
  bool dry_run = false;
};

// Writes `body` to <out>/<name> when --out is set, else to stdout.
void emit(const Globals& g, const std::string& name, const std::string& body) {
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::create_directories(g.out);
  std::ofstream os(std::filesystem::path(g.out) / name, std::ios::binary);
  if (!os) throw gmt::InvalidArgument("cannot write " + (std::filesystem::path(g.out) / name).string());
  os << body;
}


ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

gmt::PointCloud load_cloud(const std::string& csv, const std::string& ifs, int depth) {
  if (!csv.empty()) {
    std::ifstream is(csv);
    if (!is) throw gmt::InvalidArgument("cannot open cloud file " + csv);
    return gmt::read_cloud_csv(is);
  }
  return gmt::generate_ifs_cloud(gmt::IfsSystem::by_name(ifs), depth);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- generate ----------------------------------------------------------------

struct GenerateOpts {
  std::string ifs = "four-corner";
  int depth = 5;
  double net = 0.0;
};

int cmd_generate(const Globals& g, const GenerateOpts& o) {
  if (g.dry_run) return kPass;
  gmt::PointCloud cloud = gmt::generate_ifs_cloud(gmt::IfsSystem::by_name(o.ifs), o.depth);
  if (o.net > 0.0) cloud = gmt::delta_net(cloud, o.net);
  std::ostringstream os;
  gmt::write_cloud_csv(os, cloud);
  emit(g, "cloud.csv", os.str());
  return kPass;
}

// ---- dimension ---------------------------------------------------------------

struct DimensionOpts {
  std::string cloud, ifs = "four-corner", method = "box";
  int depth = 5;
  std::vector<double> scales;
  std::size_t samples = 20000;
};

int cmd_dimension(const Globals& g, const DimensionOpts& o) {
  if (o.method != "box" && o.method != "frostman" && o.method != "l2")
    throw gmt::InvalidArgument("--method must be box, frostman or l2");
  if (g.dry_run) return kPass;
  const gmt::PointCloud cloud = load_cloud(o.cloud, o.ifs, o.depth);
  const gmt::DiscreteMeasure m = gmt::DiscreteMeasure::uniform(cloud);
  gmt::ScaleSeries series;
  double dim = 0.0;
  if (o.method == "box") {
    std::vector<double> s = o.scales;
    if (s.empty())
      for (int e = 1; e <= 6; ++e) s.push_back(std::ldexp(1.0, -e));
    series = gmt::box_count_series(cloud, s);
    dim = gmt::box_dimension(series);
  } else if (o.method == "frostman") {
    std::vector<double> s = o.scales;
    if (s.empty())
      for (int e = 2; e <= 6; ++e) s.push_back(std::ldexp(1.0, -e));
    for (double r : s) series.push_back({r, 0.0, 0.0});
    dim = gmt::frostman_exponent(m, s);
  } else {
    std::vector<double> s = o.scales.empty() ? std::vector<double>{4, 8, 16} : o.scales;
    const gmt::L2Dimension l2 = gmt::l2_dimension(m, s, o.samples, gmt::derive_key(g.seed, "cli_l2"));
    series = l2.series;
    dim = l2.dimension;
  }
  std::ostringstream os;
  gmt::write_scale_series_csv(os, series);
  emit(g, "series.csv", os.str());
  ordered_json j;
  j["method"] = o.method;
  j["points"] = cloud.size();
  j["dimension"] = num(dim);
  std::cerr << j.dump() << '\n';
  if (!g.out.empty()) emit(g, "summary.json", j.dump(2) + "\n");
  return kPass;
}

// ---- bounds ------------------------------------------------------------------

struct BoundsOpts {
  int n = 2, k = 3;
  double s_min = 0.0, s_max = -1.0, s_step = 0.1;
};

int cmd_bounds(const Globals& g, const BoundsOpts& o) {
  if (o.n < 1) throw gmt::InvalidArgument("--n must be >= 1");
  if (o.k < 2) throw gmt::InvalidArgument("--k must be >= 2");
  if (!(o.s_step > 0.0)) throw gmt::InvalidArgument("--s-step must be positive");
  if (g.dry_run) return kPass;
  const double hi = o.s_max < 0.0 ? o.n : o.s_max;
  std::ostringstream os;
  os << "n,k,s,gamma,bound,lebesgue_positive\n";
  const auto steps = static_cast<long>(std::floor((hi - o.s_min) / o.s_step + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double s = o.s_min + static_cast<double>(i) * o.s_step;
    const gmt::bounds::BoundReport b = gmt::bounds::config_dim_bound(o.n, o.k, s);
    os << o.n << ',' << o.k << ',' << fmt(s) << ',' << fmt(gmt::bounds::gamma_s(o.n, s)) << ',' << fmt(b.value) << ','
       << (b.lebesgue_positive ? 1 : 0) << '\n';
  }
  emit(g, "bounds.csv", os.str());
  return kPass;
}

// ---- energy ------------------------------------------------------------------

struct EnergyOpts {
  int k = 2;
  double delta = 0.125;
  std::size_t g_samples = 64;
  std::string cloud, ifs = "four-corner";
  int depth = 3;
  std::uint64_t cap = std::uint64_t{1} << 24;
};

int cmd_energy(const Globals& g, const EnergyOpts& o) {
  if (o.k < 2) throw gmt::InvalidArgument("--k must be >= 2");
  if (!(o.delta > 0.0)) throw gmt::InvalidArgument("--delta must be positive");
  if (o.g_samples < 1) throw gmt::InvalidArgument("--g-samples must be >= 1");
  if (g.dry_run) return kPass;
  const gmt::DiscreteMeasure m = gmt::DiscreteMeasure::uniform(load_cloud(o.cloud, o.ifs, o.depth));
  const int d = m.dim();
  const std::uint64_t gkey = gmt::derive_key(g.seed, "cli_energy_motions");
  gmt::EnergyPolicy ep;
  ep.cap = o.cap;
  double e_sum = 0.0, rhs_sum = 0.0;
  bool holds = true, exact = true;
  for (std::size_t i = 0; i < o.g_samples; ++i) {
    gmt::CounterStream rs(gkey, i);
    const gmt::RigidMotion h = gmt::haar_orthogonal(d, rs);
    ep.seed = gmt::derive_key(g.seed, i);
    const gmt::EnergyResult e = gmt::group_energy(m, h, o.k, o.delta, ep);
    const gmt::RhsResult r = gmt::energy_rhs(m, h, o.k, o.delta);
    exact = exact && e.exact;
    holds = holds && (e.has_numerator && r.has_numerator ? e.numerator <= r.numerator : e.value <= r.value);
    e_sum += e.value;
    rhs_sum += r.value;
  }
  const double n = static_cast<double>(o.g_samples);
  gmt::EnumerationPolicy np;
  np.seed = gmt::derive_key(g.seed, "cli_energy_nu");
  const gmt::Estimate nu = gmt::nu_l2_mass(m, o.k, o.delta, np);
  const double E = e_sum / n;
  ordered_json j;
  j["E"] = num(E);
  j["rhs"] = num(rhs_sum / n);
  j["lemma52_holds"] = holds;
  j["chain_ratio"] = num(nu.value / (std::pow(o.delta, -d * (o.k - 1)) * E));
  j["exact"] = exact;
  j["g_samples"] = o.g_samples;
  j["points"] = m.size();
  emit(g, "energy.json", j.dump(2) + "\n");
  return holds ? kPass : kVerdictFail;
}

// ---- incidence ---------------------------------------------------------------

struct IncidenceOpts {
  std::string config = "bush3d";
  double delta = 1.0 / 64;
  std::size_t L = 0;
  double cell = 0.0;  // 0: delta / 2
  double inflate = 3.0;
  std::string bound = "weak";
};

gmt::PointCloud random_net(gmt::CounterStream& rs, std::size_t n, double x0, double delta) {
  std::vector<gmt::Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x0 + 0.25 * rs.uniform(), y = 0.25 * rs.uniform();
    pts.emplace_back(x, y);
  }
  return gmt::delta_net(gmt::PointCloud(2, std::move(pts)), delta);
}

int cmd_incidence(const Globals& g, const IncidenceOpts& o) {
  const gmt::BoundKind kind = gmt::parse_bound(o.bound);
  if (!(o.delta > 0.0)) throw gmt::InvalidArgument("--delta must be positive");
  if (o.config != "bush3d" && o.config != "bush2d" && o.config != "random3d" && o.config != "pairs")
    throw gmt::InvalidArgument("--config must be bush3d, bush2d, random3d or pairs");
  if (g.dry_run) return kPass;
  gmt::TubeFamily fam;
  if (o.config == "bush3d") {
    fam = gmt::origin_bush_3d(o.delta);
  } else if (o.config == "bush2d") {
    const double spacing = 10.0 * o.delta;
    const std::size_t L = o.L ? o.L : static_cast<std::size_t>(std::floor(std::numbers::pi / spacing));
    fam = gmt::planar_bush(o.delta, L, spacing);
  } else if (o.config == "random3d") {
    const std::size_t L = o.L ? o.L : static_cast<std::size_t>(std::floor(1.0 / (o.delta * o.delta)));
    fam = gmt::random_family_3d(o.delta, L, g.seed);
  } else {
    gmt::CounterStream rs(gmt::derive_key(g.seed, "cli_pair_nets"), 0);
    const std::size_t n = o.L ? o.L : 40;
    const gmt::PointCloud A = random_net(rs, n, 0.0, o.delta);
    const gmt::PointCloud B = random_net(rs, n, 0.75, o.delta);
    fam = gmt::build_pair_tubes(A, B, o.delta);
  }
  const double cell = o.cell > 0.0 ? o.cell : 0.5 * o.delta;
  const gmt::RichnessProfile p = gmt::rich_profile(fam, cell, gmt::dyadic_r(fam.size()));
  const gmt::BoundCheck bc = gmt::verify_bound(p, kind);
  std::ostringstream os;
  os << "r,measure,bound_value,ratio\n";
  for (const gmt::BoundRow& row : bc.rows)
    os << row.r << ',' << fmt(row.measure) << ',' << fmt(row.bound) << ',' << fmt(row.ratio) << '\n';
  emit(g, "profile.csv", os.str());

  ordered_json j;
  j["config"] = o.config;
  j["L"] = fam.size();
  j["delta"] = o.delta;
  try {
    j["fitted_exponent"] = num(gmt::fit_richness_exponent(p));
  } catch (const gmt::InvalidArgument&) {
    j["fitted_exponent"] = nullptr;  // too few rich levels to fit
  }
  j["max_ratio"] = num(bc.max_ratio);
  j["bound"] = o.bound;
  j["union_volume"] = num(gmt::union_volume(fam, cell, o.inflate));
  std::cerr << j.dump() << '\n';
  if (!g.out.empty()) emit(g, "summary.json", j.dump(2) + "\n");
  return kPass;
}

// ---- run / list --------------------------------------------------------------

int cmd_run(const Globals& g, const std::string& path) {
  gmt::experiment::ExperimentConfig cfg = gmt::experiment::load_config(path);
  if (g.seed_given) cfg.seed = g.seed;
  if (!g.out.empty()) cfg.out_dir = g.out;
  const gmt::experiment::Report r = gmt::experiment::run(cfg, g.dry_run);
  if (g.dry_run) {
    std::cout << "config ok: " << r.recipe << '\n';
    return kPass;
  }
  for (const auto& v : r.verdicts)
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << " value=" << fmt(v.value) << ' '
              << gmt::experiment::comparison_name(v.comparison) << ' ' << fmt(v.target) << " tol=" << fmt(v.tolerance)
              << '\n';
  std::cout << r.recipe << ": " << (r.passed() ? "pass" : "fail") << " (" << r.elapsed_seconds << " s)\n";
  return r.passed() ? kPass : kVerdictFail;
}

int cmd_list() {
  for (const auto& rec : gmt::experiment::recipes()) {
    std::cout << rec.name << "\n  " << rec.description << "\n  claim: " << rec.claim << '\n';
    for (const auto& p : rec.params)
      std::cout << "    " << p.key << " = " << p.default_value << "  # " << p.description << '\n';
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gmtlab: geometric measure theory experiments"};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "base seed for all random streams");
  app.add_option("--out", g.out, "output directory (default: stdout)");
  app.add_option("--threads", g.threads, "worker threads, 0 = hardware");
  app.add_flag("--dry-run", g.dry_run, "validate arguments without computing");

  GenerateOpts gen;
  auto* c_gen = app.add_subcommand("generate", "write an IFS point cloud as CSV");
  c_gen->add_option("--ifs", gen.ifs, "cantor, four-corner or sierpinski");
  c_gen->add_option("--depth", gen.depth, "IFS depth");
  c_gen->add_option("--net", gen.net, "thin to a delta-net with this delta");

  DimensionOpts dim;
  auto* c_dim = app.add_subcommand("dimension", "box, Frostman or L2 dimension of a cloud");
  c_dim->add_option("--cloud", dim.cloud, "cloud CSV (default: generated IFS)");
  c_dim->add_option("--ifs", dim.ifs, "IFS when no cloud is given");
  c_dim->add_option("--depth", dim.depth, "IFS depth");
  c_dim->add_option("--method", dim.method, "box, frostman or l2");
  c_dim->add_option("--scales", dim.scales, "scales (box sides, radii or frequency radii)")->delimiter(',');
  c_dim->add_option("--samples", dim.samples, "Monte Carlo samples for l2");

  BoundsOpts bo;
  auto* c_bounds = app.add_subcommand("bounds", "configuration dimension bound over an s-grid");
  c_bounds->add_option("--n", bo.n, "ambient dimension");
  c_bounds->add_option("--k", bo.k, "configuration size");
  c_bounds->add_option("--s-min", bo.s_min, "first s");
  c_bounds->add_option("--s-max", bo.s_max, "last s (default n)");
  c_bounds->add_option("--s-step", bo.s_step, "grid step");

  EnergyOpts en;
  auto* c_energy = app.add_subcommand("energy", "group energy, ball bound and chain ratio");
  c_energy->add_option("--k", en.k, "configuration size");
  c_energy->add_option("--delta", en.delta, "scale");
  c_energy->add_option("--g-samples", en.g_samples, "Haar motions");
  c_energy->add_option("--cloud", en.cloud, "cloud CSV (default: generated IFS)");
  c_energy->add_option("--ifs", en.ifs, "IFS when no cloud is given");
  c_energy->add_option("--depth", en.depth, "IFS depth");
  c_energy->add_option("--cap", en.cap, "exact enumeration cap on N^{2k}");

  IncidenceOpts inc;
  auto* c_inc = app.add_subcommand("incidence", "richness profile of a tube family");
  c_inc->add_option("--config", inc.config, "bush3d, bush2d, random3d or pairs");
  c_inc->add_option("--delta", inc.delta, "tube radius");
  c_inc->add_option("--L", inc.L, "tube count (0: family default)");
  c_inc->add_option("--cell", inc.cell, "cell side (0: delta / 2)");
  c_inc->add_option("--inflate", inc.inflate, "radius factor for the union volume");
  c_inc->add_option("--bound", inc.bound, "weak, guess, szt, cordoba or weak_planar");

  std::string config_path;
  auto* c_run = app.add_subcommand("run", "run a recipe from a config file");
  c_run->add_option("config", config_path, "config file")->required();

  auto* c_list = app.add_subcommand("list", "list recipes and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    gmt::parallel::set_threads(g.threads);
    if (*c_gen) return cmd_generate(g, gen);
    if (*c_dim) return cmd_dimension(g, dim);
    if (*c_bounds) return cmd_bounds(g, bo);
    if (*c_energy) return cmd_energy(g, en);
    if (*c_inc) return cmd_incidence(g, inc);
    if (*c_run) return cmd_run(g, config_path);
    if (*c_list) return cmd_list();
  } catch (const gmt::ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kResourceCap;
  } catch (const gmt::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerdictFail;
  }
  return kUsage;
}
