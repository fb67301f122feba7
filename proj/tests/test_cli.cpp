#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "thinmc/csv.hpp"
#include "thinmc/schedules.hpp"

using namespace thinmc;
namespace fs = std::filesystem;

namespace {

// Fresh working directory per test case, removed on destruction.
struct WorkDir {
  fs::path path;
  explicit WorkDir(const std::string& name) : path(fs::temp_directory_path() / ("thinmc_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~WorkDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

int run_cli(const std::string& args, const std::string& capture_path = "") {
  std::string cmd = std::string(CLI_BIN) + " " + args;
  cmd += capture_path.empty() ? " > /dev/null 2>&1" : " > " + capture_path + " 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sample writes one trace row per recorded iteration") {
  WorkDir wd("sample_rows");
  int rc = run_cli("sample --target pi1 --dim 2 --algo mala --step 0.1 "
                   "--iters 10 --burnin 0 --seed 3 --out " + wd.str());
  CHECK(rc == 0);

  CsvTable trace = read_csv(wd.str() + "/trace.csv");
  REQUIRE(trace.header.size() == 5);  // iter, x_0, x_1, accepted, log_pi
  CHECK(trace.header.front() == "iter");
  CHECK(trace.header.back() == "log_pi");
  REQUIRE(trace.rows.size() == 10);
  CHECK(trace.rows.front()[0] == "1");
  CHECK(trace.rows.back()[0] == "10");
  for (const auto& row : trace.rows) {
    CHECK((row[3] == "0" || row[3] == "1"));
  }

  CsvTable report = read_csv(wd.str() + "/report.csv");
  REQUIRE(report.rows.size() == 2);  // one row per coordinate
  CHECK(report.header.front() == "coord");
}

TEST_CASE("identical seeds give byte-identical traces") {
  WorkDir a("sample_rep_a"), b("sample_rep_b");
  std::string args = "sample --target pi1 --dim 3 --algo mao --step 0.05 "
                     "--iters 500 --burnin 100 --zeta 0.25 --seed 42 --out ";
  CHECK(run_cli(args + a.str()) == 0);
  CHECK(run_cli(args + b.str()) == 0);
  CHECK(slurp(a.str() + "/trace.csv") == slurp(b.str() + "/trace.csv"));
}

TEST_CASE("bad inputs exit with the argument-error code") {
  WorkDir wd("sample_bad");
  CHECK(run_cli("sample --target nosuch --step 0.1 --iters 10 --burnin 0 --out " + wd.str()) == 2);
  CHECK(run_cli("sample --target pi1 --step auto --iters 10 --burnin 0 --out " + wd.str()) == 2);
  CHECK(run_cli("definitely-not-a-subcommand") != 0);
}

TEST_CASE("bench output is independent of the thread count") {
  WorkDir a("bench_t1"), b("bench_t3");
  std::string args = "bench --target pi1 --algos rwm,mala,mao --dims 1,2 "
                     "--step 0.1 --iters 2000 --burnin 100 --seed 7 ";
  CHECK(run_cli(args + "--threads 1 --out " + a.str()) == 0);
  CHECK(run_cli(args + "--threads 3 --out " + b.str()) == 0);
  std::string csv_a = slurp(a.str() + "/bench.csv");
  CHECK(csv_a == slurp(b.str() + "/bench.csv"));

  CsvTable table = read_csv(a.str() + "/bench.csv");
  REQUIRE(table.rows.size() == 6);
  REQUIRE(table.header.size() == 9);
  CHECK(table.header.back() == "status");
  for (const auto& row : table.rows) CHECK(row.back() == "ok");
}

TEST_CASE("a failing bench cell is reported in its status column, not fatally") {
  WorkDir wd("bench_err");
  int rc = run_cli("bench --target radial --alpha 1.5 --algos mala --dims 1,2 "
                   "--step 0.1 --iters 500 --burnin 50 --out " + wd.str());
  CHECK(rc == 0);
  CsvTable table = read_csv(wd.str() + "/bench.csv");
  REQUIRE(table.rows.size() == 2);
  for (const auto& row : table.rows) {
    CHECK(row.back().rfind("error:", 0) == 0);
  }
}

TEST_CASE("schedule output matches the library computation exactly") {
  WorkDir wd("schedule");
  std::string out = wd.str() + "/schedule.txt";
  CHECK(run_cli("schedule --target pi1 --dim 8 --eps 0.5 --beta 10 --schedule B", out) == 0);

  std::ifstream in(out);
  std::string header, line;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, line));
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) fields.push_back(tok);
  REQUIRE(fields.size() == 8);

  Schedule sch = step_size(0.5, 10.0, 8, 4.0, 4.0, 1.0, StepRule::B);
  CHECK(parse_double(fields[4]) == sch.h);
  CHECK(parse_double(fields[1]) == sch.s);
  CHECK(fields[0] == "B");
}

TEST_CASE("oracle writes the divergence trajectory and reports a mixing time") {
  WorkDir wd("oracle");
  std::string out = wd.str() + "/stdout.txt";
  int rc = run_cli("oracle --target pi1 --a 1 --algo mao --step 0.05 --cells 256 "
                   "--eps 0.1 --out " + wd.str(), out);
  CHECK(rc == 0);

  CsvTable table = read_csv(wd.str() + "/oracle.csv");
  CHECK(table.header == std::vector<std::string>{"step", "divergence"});
  REQUIRE(table.rows.size() >= 2);
  // Divergences decrease overall: last below first.
  double first = parse_double(table.rows.front()[1]);
  double last = parse_double(table.rows.back()[1]);
  CHECK(last < first);
  CHECK(last <= 0.1);

  std::string text = slurp(out);
  CHECK(text.find("t_mix=") != std::string::npos);
  CHECK(text.find("tv_stationary=") != std::string::npos);
}
