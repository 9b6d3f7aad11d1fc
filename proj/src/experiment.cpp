#include "gmt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gmt/errors.hpp"

namespace gmt::experiment {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("parameter '" + key + "': '" + v + "' is not a number");
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("parameter '" + key + "': '" + v + "' is not an integer");
}

bool parse_flag(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidArgument("parameter '" + key + "': '" + v + "' is not true/false");
}

void check_kind(const ParamSpec& spec, const std::string& v) {
  switch (spec.kind) {
    case ParamKind::real: parse_real(spec.key, v); break;
    case ParamKind::integer: parse_int(spec.key, v); break;
    case ParamKind::flag: parse_flag(spec.key, v); break;
    case ParamKind::real_list:
      for (const auto& x : split_list(v)) parse_real(spec.key, x);
      break;
    case ParamKind::integer_list:
      for (const auto& x : split_list(v)) parse_int(spec.key, x);
      break;
    case ParamKind::text: break;
  }
}

std::uint64_t parse_seed(const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used, 0);
    if (used == v.size() && v.front() != '-') return x;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("seed: '" + v + "' is not a 64-bit unsigned integer");
}

}  // namespace

ExperimentConfig parse_config(std::istream& is, const std::string& source) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  bool have_recipe = false;
  std::map<std::string, int> seen;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidArgument(source + ":" + std::to_string(lineno) + ": empty key");
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
      throw InvalidArgument(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "' (first on line " +
                            std::to_string(it->second) + ")");
    if (key == "recipe") {
      cfg.recipe = value;
      have_recipe = true;
    } else if (key == "seed") {
      cfg.seed = parse_seed(value);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else {
      cfg.params[key] = value;
    }
  }
  if (!have_recipe) throw InvalidArgument(source + ": missing 'recipe = <name>'");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  return parse_config(in, path);
}

std::string comparison_name(Comparison c) {
  switch (c) {
    case Comparison::at_most: return "at_most";
    case Comparison::at_least: return "at_least";
    case Comparison::near: return "near";
  }
  return "";
}

std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string cell(std::uint64_t v) { return std::to_string(v); }
std::string cell(std::int64_t v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += '\n';
  }
  return out;
}

bool Report::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Verdict& Report::verdict(const std::string& name) const {
  for (const Verdict& v : verdicts)
    if (v.name == name) return v;
  throw InvalidArgument("report has no verdict '" + name + "'");
}

const Table& Report::table(const std::string& name) const {
  for (const Table& t : tables)
    if (t.name == name) return t;
  throw InvalidArgument("report has no table '" + name + "'");
}

namespace {
// JSON has no NaN or infinity; such values are written as null.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
}  // namespace

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["recipe"] = recipe;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["seed"] = seed;
  j["verdicts"] = nlohmann::ordered_json::array();
  for (const Verdict& v : verdicts)
    j["verdicts"].push_back({{"name", v.name},
                             {"value", number(v.value)},
                             {"tolerance", number(v.tolerance)},
                             {"pass", v.pass},
                             {"target", number(v.target)},
                             {"comparison", comparison_name(v.comparison)}});
  j["tables"] = nlohmann::ordered_json::array();
  for (const Table& t : tables) j["tables"].push_back(t.name + ".csv");
  j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : summary) j["summary"][k] = number(v);
  j["elapsed_seconds"] = elapsed_seconds;
  if (dry_run) j["dry_run"] = true;
  return j.dump(2) + "\n";
}

Context::Context(const Recipe& recipe, Params params, std::uint64_t seed, Report& report)
    : recipe_(recipe), params_(std::move(params)), seed_(seed), report_(report) {}

const std::string& Context::raw(const std::string& key) const {
  auto it = params_.find(key);
  if (it == params_.end()) throw InvalidArgument("recipe " + recipe_.name + " has no parameter '" + key + "'");
  return it->second;
}

double Context::real(const std::string& key) const { return parse_real(key, raw(key)); }
std::int64_t Context::integer(const std::string& key) const { return parse_int(key, raw(key)); }
std::string Context::text(const std::string& key) const { return raw(key); }
bool Context::flag(const std::string& key) const { return parse_flag(key, raw(key)); }

std::vector<double> Context::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& x : split_list(raw(key))) out.push_back(parse_real(key, x));
  return out;
}

std::vector<std::int64_t> Context::integers(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (const auto& x : split_list(raw(key))) out.push_back(parse_int(key, x));
  return out;
}

Table& Context::table(const std::string& name, std::vector<std::string> columns) {
  report_.tables.push_back({name, std::move(columns), {}});
  return report_.tables.back();
}

const Verdict& Context::verdict(const std::string& name, double value, Comparison cmp, double target,
                                double tolerance) {
  Verdict v{name, value, target, cmp, tolerance, false};
  switch (cmp) {
    case Comparison::at_most: v.pass = value <= target + tolerance; break;
    case Comparison::at_least: v.pass = value >= target - tolerance; break;
    case Comparison::near: v.pass = std::abs(value - target) <= tolerance; break;
  }
  report_.verdicts.push_back(v);
  return report_.verdicts.back();
}

void Context::summary(const std::string& key, double value) { report_.summary[key] = value; }

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> all = [] {
    std::vector<Recipe> v;
    add_bounds_recipes(v);
    add_measure_recipes(v);
    add_energy_recipes(v);
    add_incidence_recipes(v);
    std::sort(v.begin(), v.end(), [](const Recipe& a, const Recipe& b) { return a.name < b.name; });
    return v;
  }();
  return all;
}

const Recipe& find_recipe(const std::string& name) {
  for (const Recipe& r : recipes())
    if (r.name == name) return r;
  throw InvalidArgument("unknown recipe '" + name + "' (see `gmtlab list`)");
}

Params resolve_params(const Recipe& recipe, const Params& given) {
  Params out;
  for (const ParamSpec& spec : recipe.params) out[spec.key] = spec.default_value;
  for (const auto& [k, v] : given) {
    auto it = std::find_if(recipe.params.begin(), recipe.params.end(), [&](const ParamSpec& s) { return s.key == k; });
    if (it == recipe.params.end()) throw InvalidArgument("recipe " + recipe.name + ": unknown parameter '" + k + "'");
    out[k] = v;
  }
  for (const ParamSpec& spec : recipe.params) check_kind(spec, out[spec.key]);
  return out;
}

void write_report(const Report& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory '" + out_dir + "': " + ec.message());
  for (const Table& t : report.tables) {
    std::ofstream f(fs::path(out_dir) / (t.name + ".csv"), std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + t.name + ".csv in '" + out_dir + "'");
    f << t.csv();
  }
  std::ofstream f(fs::path(out_dir) / "report.json", std::ios::binary);
  if (!f) throw InvalidArgument("cannot write report.json in '" + out_dir + "'");
  f << report.json();
}

Report run(const ExperimentConfig& config, bool dry_run) {
  const Recipe& recipe = find_recipe(config.recipe);
  Report report;
  report.recipe = recipe.name;
  report.params = resolve_params(recipe, config.params);
  report.seed = config.seed;
  report.dry_run = dry_run;
  if (dry_run) return report;
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx(recipe, report.params, config.seed, report);
  try {
    recipe.run(ctx);
  } catch (const ResourceCapExceeded& e) {
    throw ResourceCapExceeded("recipe " + recipe.name + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument("recipe " + recipe.name + ": " + e.what());
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (report.verdicts.empty()) throw Error("recipe " + recipe.name + " produced no verdicts");
  if (!config.out_dir.empty()) write_report(report, config.out_dir);
  return report;
}

}  // namespace gmt::experiment
