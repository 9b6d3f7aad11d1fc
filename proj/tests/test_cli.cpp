#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

const std::filesystem::path kTmp = std::filesystem::temp_directory_path() / "gmt_cli_test";

int gmtlab(const std::string& args) {
  const std::string cmd = std::string("\"") + GMTLAB_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string write_cfg(const std::string& name, const std::string& body) {
  std::filesystem::create_directories(kTmp);
  const auto p = kTmp / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(gmtlab("list") == 0);
  CHECK(gmtlab("--help") == 0);
  CHECK(gmtlab("--no-such-flag") == 2);
  CHECK(gmtlab("bounds --n 2 --k 3 --s-step 0") == 2);
  CHECK(gmtlab("--dry-run run " + write_cfg("dry.cfg", "recipe = bush3d\n")) == 0);
  CHECK(gmtlab("run " + write_cfg("unknown.cfg", "recipe = bush3d\nwidth = 3\n")) == 2);
  CHECK(gmtlab("run " + write_cfg("pass.cfg", "recipe = threshold-table\n")) == 0);
  CHECK(gmtlab("run " + write_cfg("fail.cfg", "recipe = pair-tubes\nmin_counterexample_violations = 1000000\n")) == 1);
  CHECK(gmtlab("generate --ifs cantor --depth 40") == 3);
}

TEST_CASE("cli outputs") {
  const auto out = kTmp / "out";
  std::filesystem::remove_all(out);
  REQUIRE(gmtlab("--out " + out.string() + " generate --ifs four-corner --depth 3") == 0);
  const std::string cloud = slurp(out / "cloud.csv");
  CHECK(cloud.rfind("x,y\n", 0) == 0);
  CHECK(std::count(cloud.begin(), cloud.end(), '\n') == 65);

  REQUIRE(gmtlab("--out " + out.string() + " bounds --n 2 --k 3 --s-min 0.5 --s-max 2 --s-step 0.5") == 0);
  const std::string b = slurp(out / "bounds.csv");
  CHECK(b.rfind("n,k,s,gamma,bound,lebesgue_positive\n", 0) == 0);
  CHECK(std::count(b.begin(), b.end(), '\n') == 5);

  REQUIRE(gmtlab("--out " + out.string() + " energy --k 2 --delta 0.1 --ifs four-corner --depth 2 --g-samples 4") == 0);
  const auto e = nlohmann::json::parse(slurp(out / "energy.json"));
  for (const char* key : {"E", "rhs", "lemma52_holds", "chain_ratio", "exact"}) CHECK(e.contains(key));
  CHECK(e["lemma52_holds"] == true);

  REQUIRE(gmtlab("--out " + out.string() + " --seed 5 run " + write_cfg("t.cfg", "recipe = threshold-table\n")) ==
          0);
  const auto r = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(r["seed"] == 5);
  std::filesystem::remove_all(kTmp);
}
