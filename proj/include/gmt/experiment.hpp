#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <deque>
#include <map>
#include <string>
#include <vector>

namespace gmt::experiment {

using Params = std::map<std::string, std::string>;

struct ExperimentConfig {
  std::string recipe;
  Params params;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty: keep the report in memory only
};

/// Flat `key = value` lines, `#` starts a comment. `recipe`, `seed` and `out`
/// are reserved keys; every other key becomes a recipe parameter.
ExperimentConfig parse_config(std::istream& is, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

enum class Comparison { at_most, at_least, near };

struct Verdict {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  Comparison comparison = Comparison::at_most;
  double tolerance = 0.0;
  bool pass = false;
};

std::string comparison_name(Comparison c);

struct Table {
  std::string name;  // written as <name>.csv
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const;
};

/// Fixed-format cell text: %.17g for reals, decimal for integers.
std::string cell(double v);
std::string cell(std::uint64_t v);
std::string cell(std::int64_t v);
std::string cell(int v);
inline std::string cell(const std::string& s) { return s; }
inline std::string cell(const char* s) { return s; }

struct Report {
  std::string recipe;
  Params params;  // resolved, defaults filled in
  std::uint64_t seed = 0;
  std::vector<Verdict> verdicts;
  std::deque<Table> tables;  // deque: Context::table hands out stable references
  std::map<std::string, double> summary;
  double elapsed_seconds = 0.0;
  bool dry_run = false;

  bool passed() const;
  const Verdict& verdict(const std::string& name) const;
  const Table& table(const std::string& name) const;
  std::string json() const;
};

enum class ParamKind { real, integer, text, real_list, integer_list, flag };

struct ParamSpec {
  std::string key;
  ParamKind kind = ParamKind::real;
  std::string default_value;
  std::string description;
};

class Context;

struct Recipe {
  std::string name;
  std::string description;
  std::string claim;  // the statement the recipe probes
  std::vector<ParamSpec> params;
  std::function<void(Context&)> run;
};

/// Typed access to resolved parameters plus report builders.
class Context {
 public:
  Context(const Recipe& recipe, Params params, std::uint64_t seed, Report& report);

  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<std::int64_t> integers(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::uint64_t seed() const { return seed_; }

  Table& table(const std::string& name, std::vector<std::string> columns);
  const Verdict& verdict(const std::string& name, double value, Comparison cmp, double target, double tolerance);
  void summary(const std::string& key, double value);

 private:
  const std::string& raw(const std::string& key) const;
  const Recipe& recipe_;
  Params params_;
  std::uint64_t seed_;
  Report& report_;
};

/// Registered recipes in stable (alphabetical) order.
const std::vector<Recipe>& recipes();
const Recipe& find_recipe(const std::string& name);

/// Fills defaults, rejects unknown keys and values that do not parse as the
/// declared kind.
Params resolve_params(const Recipe& recipe, const Params& given);

/// Runs (or with dry_run only validates) a recipe. With a non-empty
/// out_dir, writes report.json and one CSV per table there.
Report run(const ExperimentConfig& config, bool dry_run = false);

void write_report(const Report& report, const std::string& out_dir);

// Recipe groups, one per source file.
void add_bounds_recipes(std::vector<Recipe>& out);
void add_measure_recipes(std::vector<Recipe>& out);
void add_energy_recipes(std::vector<Recipe>& out);
void add_incidence_recipes(std::vector<Recipe>& out);

}  // namespace gmt::experiment
