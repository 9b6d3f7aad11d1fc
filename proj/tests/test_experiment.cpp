#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "gmt/errors.hpp"
#include "gmt/experiment.hpp"
#include "gmt/parallel.hpp"
#include "json.hpp"

using namespace gmt;
using namespace gmt::experiment;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse("# header\nrecipe = bounds-table\n\nseed = 42  # trailing\n  n = 3 \n");
  CHECK(c.recipe == "bounds-table");
  CHECK(c.seed == 42);
  REQUIRE(c.params.count("n") == 1);
  CHECK(c.params.at("n") == "3");

  CHECK_THROWS_AS(parse("recipe = a\nrecipe = b\n"), InvalidArgument);
  CHECK_THROWS_AS(parse("seed = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse("recipe = a\nnot a pair\n"), InvalidArgument);
  CHECK_THROWS_AS(parse("recipe = a\nseed = -3\n"), InvalidArgument);
}

TEST_CASE("parameter resolution") {
  const Recipe& r = find_recipe("threshold-table");
  const Params p = resolve_params(r, {});
  for (const ParamSpec& s : r.params) CHECK(p.count(s.key) == 1);
  CHECK_THROWS_AS(resolve_params(r, {{"no_such_key", "1"}}), InvalidArgument);
  CHECK_THROWS_AS(find_recipe("no-such-recipe"), InvalidArgument);

  ExperimentConfig c;
  c.recipe = "bush3d";
  c.params["delta_exponent"] = "seven";
  CHECK_THROWS_AS(run(c, true), InvalidArgument);
}

TEST_CASE("registry is sorted and complete") {
  const auto& all = recipes();
  std::set<std::string> names;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i > 0) CHECK(all[i - 1].name < all[i].name);
    names.insert(all[i].name);
    CHECK_FALSE(all[i].description.empty());
    CHECK_FALSE(all[i].claim.empty());
    // Defaults of every declared parameter parse as their kind.
    CHECK_NOTHROW(resolve_params(all[i], {}));
  }
  for (const char* n : {"bush3d", "bush2d", "cordoba2d", "gilp-chain", "lemma52-sweep", "bounds-table",
                        "threshold-table", "asymmetric-grid", "random3d", "counting-identity", "weak-bound",
                        "kakeya-union", "pair-tubes", "tech-condition", "coords-roundtrip"})
    CHECK(names.count(n) == 1);
}

TEST_CASE("dry run validates without computing") {
  for (const Recipe& r : recipes()) {
    ExperimentConfig c;
    c.recipe = r.name;
    const Report rep = run(c, true);
    CHECK(rep.dry_run);
    CHECK(rep.verdicts.empty());
  }
}

TEST_CASE("report layout") {
  const auto dir = std::filesystem::temp_directory_path() / "gmt_test_report";
  std::filesystem::remove_all(dir);
  ExperimentConfig c;
  c.recipe = "threshold-table";
  c.seed = 7;
  c.out_dir = dir.string();
  const Report rep = run(c);
  CHECK(rep.passed());
  CHECK_FALSE(rep.verdicts.empty());

  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  for (const char* key : {"recipe", "params", "seed", "verdicts", "tables", "summary", "elapsed_seconds"})
    CHECK(j.contains(key));
  CHECK(j["recipe"] == "threshold-table");
  CHECK(j["seed"] == 7);
  for (const auto& t : j["tables"]) CHECK(std::filesystem::exists(dir / t.get<std::string>()));
  for (const auto& v : j["verdicts"]) {
    CHECK(v.contains("name"));
    CHECK(v.contains("pass"));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("cheap recipes produce verdicts and pass") {
  for (const char* name : {"bounds-table", "threshold-table", "asymmetric-grid", "pair-tubes"}) {
    ExperimentConfig c;
    c.recipe = name;
    c.seed = 20240601;
    const Report rep = run(c);
    CAPTURE(name);
    CHECK_FALSE(rep.verdicts.empty());
    CHECK(rep.passed());
  }
}

TEST_CASE("failing tolerance fails the verdict") {
  ExperimentConfig c;
  c.recipe = "pair-tubes";
  c.params["min_counterexample_violations"] = "1000000";
  CHECK_FALSE(run(c).passed());
}

TEST_CASE("tables are byte-identical across thread counts") {
  ExperimentConfig c;
  c.recipe = "counting-identity";
  c.seed = 3;
  c.params = {{"L", "64"}, {"seeds", "2"}, {"delta_exponent", "4"}};
  parallel::set_threads(1);
  const Report a = run(c);
  parallel::set_threads(4);
  const Report b = run(c);
  parallel::set_threads(0);
  REQUIRE(a.tables.size() == b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) CHECK(a.tables[i].csv() == b.tables[i].csv());
  CHECK(a.summary == b.summary);
}

TEST_CASE("cell formatting") {
  CHECK(cell(0.1) == "0.10000000000000001");
  CHECK(cell(std::uint64_t{12}) == "12");
  CHECK(cell(-3) == "-3");
  Table t{"x", {"a", "b"}, {{"1", "2"}}};
  CHECK(t.csv() == "a,b\n1,2\n");
}
