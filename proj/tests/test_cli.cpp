#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path path;
  Workdir() {
    path = fs::temp_directory_path() / ("odycon_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
};

int odycon(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(ODYCON_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::size_t lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("validate") {
  Workdir w;
  const auto log = w.path / "log.txt";
  CHECK(odycon("validate " ODYCON_SCENARIO_DIR "/saa_control.json", log) == 0);
  CHECK(slurp(log).find("27 decision variables") != std::string::npos);
  CHECK(odycon("validate " ODYCON_SCENARIO_DIR "/offshore_planning.json", log) == 0);
  CHECK(slurp(log).find("warning") != std::string::npos);

  std::string cyclic = fixture::kTinyControl;
  cyclic.replace(cyclic.find(R"("predecessors": []})"), 19, R"("predecessors": [2]})");
  write(w.path / "cycle.json", cyclic);
  CHECK(odycon("validate " + (w.path / "cycle.json").string(), log) == 1);
  CHECK(slurp(log).find("cycle") != std::string::npos);

  std::string weights = fixture::kTinyControl;
  weights.replace(weights.find(R"("weight": 1.0)"), 13, R"("weight": 0.8)");
  write(w.path / "weights.json", weights);
  CHECK(odycon("validate " + (w.path / "weights.json").string(), log) == 1);
  CHECK(slurp(log).find("weights") != std::string::npos);

  CHECK(odycon("validate " + (w.path / "missing.json").string(), log) == 1);
  CHECK(odycon("frobnicate", log) == 1);
}

TEST_CASE("run is reproducible and report reads its output") {
  Workdir w;
  const auto log = w.path / "log.txt";
  write(w.path / "plan.json", fixture::kTinyPlanning);
  const std::string base = "run " + (w.path / "plan.json").string() + " --iterations 5 --seed 7 --threads 2 --out ";
  REQUIRE(odycon(base + (w.path / "a").string(), log) == 0);
  REQUIRE(odycon(base + (w.path / "b").string(), log) == 0);
  CHECK(slurp(w.path / "a/records.csv") == slurp(w.path / "b/records.csv"));
  CHECK(slurp(w.path / "a/summary.json") == slurp(w.path / "b/summary.json"));
  CHECK(lines(slurp(w.path / "a/records.csv")) == 6);

  const auto summary = nlohmann::json::parse(slurp(w.path / "a/summary.json"));
  CHECK(summary["seed"] == 7);
  CHECK(summary["mode"] == "moo");
  CHECK(summary["percentiles"].contains("O_F"));

  REQUIRE(odycon("report " + (w.path / "a/records.csv").string() + " --top-k 2 --scenario " +
                     (w.path / "plan.json").string(),
                 log) == 0);
  CHECK(lines(slurp(w.path / "a/combinations.csv")) <= 3);
  CHECK(slurp(w.path / "a/percentiles.csv").find("O_PD,50,") != std::string::npos);
  CHECK(slurp(w.path / "a/preference_curves.csv").find("O_PD,P50,") != std::string::npos);
  CHECK(lines(slurp(w.path / "a/ecdf.csv")) > 1);
  CHECK(slurp(w.path / "a/variable_frequency.csv").rfind("variable,value,frequency\n", 0) == 0);

  // Percentiles printed by report equal those in the summary.
  const auto pct = slurp(w.path / "a/percentiles.csv");
  std::istringstream in(pct);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  const double p50 = std::stod(line.substr(line.rfind(',') + 1));
  CHECK(p50 == summary["percentiles"]["O_PD"][0].get<double>());
}

TEST_CASE("control run writes penalties and one row per measure in the report") {
  Workdir w;
  const auto log = w.path / "log.txt";
  REQUIRE(odycon("run " ODYCON_SCENARIO_DIR "/saa_control.json --mode soo:cost --iterations 2 --out " +
                     (w.path / "c").string(),
                 log) == 0);
  const auto summary = nlohmann::json::parse(slurp(w.path / "c/summary.json"));
  CHECK(summary["penalties"]["penalty_per_day_minor"] == 1000000);
  CHECK(summary["kind"] == "control");
  REQUIRE(odycon("report " + (w.path / "c/records.csv").string(), log) == 0);
  std::istringstream in(slurp(w.path / "c/variable_frequency.csv"));
  std::string line;
  std::set<std::string> vars;
  std::getline(in, line);
  while (std::getline(in, line)) vars.insert(line.substr(0, line.find(',')));
  CHECK(vars.size() == 27);
}

TEST_CASE("bad flags and infeasible scenarios") {
  Workdir w;
  const auto log = w.path / "log.txt";
  write(w.path / "plan.json", fixture::kTinyPlanning);
  const std::string file = (w.path / "plan.json").string();
  CHECK(odycon("run " + file + " --mode soo:nuisance --out " + (w.path / "x").string(), log) == 1);
  CHECK(odycon("run " + file + " --percentiles 50,150 --out " + (w.path / "x").string(), log) == 1);

  std::string infeasible = fixture::kTinyPlanning;
  infeasible.replace(infeasible.find(R"("ga":)"), 5, R"("constraints": {"min_total": 9}, "ga":)");
  write(w.path / "bad.json", infeasible);
  CHECK(odycon("run " + (w.path / "bad.json").string() + " --iterations 3 --out " + (w.path / "y").string(), log) == 2);
  CHECK(slurp(log).find("iteration 0") != std::string::npos);
}
