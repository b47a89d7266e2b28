#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* cli_binary() {
  const char* env = std::getenv("PARTBIAS_CLI");
  REQUIRE_MESSAGE(env != nullptr, "PARTBIAS_CLI must point at the binary");
  return env;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path();
  const fs::path out = dir / ("partbias_out_" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("partbias_err_" + std::to_string(counter) + ".txt");
  ++counter;

  const std::string cmd = std::string(cli_binary()) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult result{WEXITSTATUS(raw), slurp(out), slurp(err)};
  fs::remove(out);
  fs::remove(err);
  return result;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("count prints the exact class count") {
  const auto r = run_cli("count --k 2 --t 3 --r 1 --n 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "5\n");

  const auto oracle = run_cli("count --k 2 --t 3 --r 1 --n 4 --oracle");
  CHECK(oracle.exit_code == 0);
  CHECK(oracle.out == "5\n");

  // the enumeration oracle is capped by --oracle-bound (default 40)
  CHECK(run_cli("count --k 2 --t 3 --r 1 --n 60 --oracle").exit_code == 1);
  CHECK(run_cli("count --k 2 --t 3 --r 1 --n 45 --oracle --oracle-bound 50")
            .exit_code == 0);
}

TEST_CASE("psi prints one line per residue, or a single value with --r") {
  const auto all = run_cli("psi --k 2 --t 3");
  CHECK(all.exit_code == 0);
  std::istringstream lines(all.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) ++n;
  CHECK(n == 3);

  const auto single = run_cli("psi --k 2 --t 3 --r 2");
  CHECK(single.exit_code == 0);
  CHECK(single.out.find("e") != std::string::npos);  // decimal notation
}

TEST_CASE("order and gaps") {
  const auto order = run_cli("order --k 2 --t 3");
  CHECK(order.exit_code == 0);
  CHECK(order.out == "2 3 1\n");  // ascending bias: class 2 loses the race

  const auto gaps = run_cli("gaps --k 9 --t 10");
  CHECK(gaps.exit_code == 0);
  CHECK(gaps.out.find("pairs 45") != std::string::npos);
  CHECK(gaps.out.find("max 1 9 ") != std::string::npos);
}

TEST_CASE("separate prints the constructed twist") {
  const auto r = run_cli("separate --r 3 --s 5 --t 15");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "11\n");
}

TEST_CASE("asym prints a decimal prediction") {
  const auto r = run_cli("asym --k 2 --t 3 --r 1 --n 2000");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("e+") != std::string::npos);  // huge positive value
}

TEST_CASE("lvalue and twist work from fixture files") {
  const auto fixture = write_temp("partbias_fixture.txt",
                                  "# quarters relation\n4: 1,-3,1,1\n");

  const auto lv = run_cli("lvalue --file " + fixture.string());
  CHECK(lv.exit_code == 0);
  CHECK(lv.out.starts_with("1 "));

  const auto lv_oracle =
      run_cli("lvalue --file " + fixture.string() +
              " --oracle --block-count 1000");
  CHECK(lv_oracle.exit_code == 0);

  const auto tw = run_cli("twist --file " + fixture.string() + " --h 3");
  CHECK(tw.exit_code == 0);
  CHECK(tw.out == "4: 1,-3,1,1\n");  // this kernel function is 3-stable

  fs::remove(fixture);
}

TEST_CASE("sweep emits csv deterministically across workers") {
  const std::string args = "sweep --t-min 3 --t-max 10 --output-format csv";
  const auto serial = run_cli(args + " --workers 1");
  const auto parallel = run_cli(args + " --workers 4");
  const auto repeat = run_cli(args + " --workers 4");
  CHECK(serial.exit_code == 0);
  CHECK(serial.out == parallel.out);
  CHECK(parallel.out == repeat.out);

  std::istringstream lines(serial.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) ++n;
  CHECK(n == 9);  // header + 8 rows
  CHECK(serial.out.starts_with("t,k_bound,"));
}

TEST_CASE("conjecture report in json") {
  const auto r =
      run_cli("conjecture --t-min 3 --t-max 6 --output-format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"schema_version\": 1") != std::string::npos);
  CHECK(r.out.find("all_min_gaps_positive") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
  const auto config = write_temp("partbias_config.ini",
                                 "precision-bits=128\n");
  const auto from_config =
      run_cli("--config " + config.string() + " psi --k 2 --t 3 --r 1");
  const auto overridden = run_cli("--config " + config.string() +
                                  " --precision-bits 256 psi --k 2 --t 3 --r 1");
  CHECK(from_config.exit_code == 0);
  CHECK(overridden.exit_code == 0);
  // more precision -> more round-trip digits on the same value
  CHECK(overridden.out.size() > from_config.out.size());
  fs::remove(config);
}

TEST_CASE("usage and I/O failures map to distinct exit codes") {
  CHECK(run_cli("no-such-command").exit_code == 1);
  CHECK(run_cli("count --k 2 --t 3").exit_code == 1);      // missing flags
  CHECK(run_cli("count --k 2 --t 4 --r 1 --n 4").exit_code == 1);  // not coprime
  CHECK(run_cli("separate --r 2 --s 3 --t 15").exit_code == 1);

  const auto io = run_cli(
      "sweep --t-min 3 --t-max 4 --output-path /nonexistent-dir/x.csv");
  CHECK(io.exit_code == 3);

  const auto unknown_format =
      run_cli("sweep --t-min 3 --t-max 4 --output-format yaml");
  CHECK(unknown_format.exit_code == 1);

  const auto help = run_cli("--help");
  CHECK(help.exit_code == 0);
}
