#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "expcensus/cli.hpp"
#include "expcensus/counting.hpp"
#include "expcensus/errors.hpp"
#include "expcensus/verify.hpp"

using namespace expcensus;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "expcensus");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("expcensus_test_" + name)).string();
}

}  // namespace

TEST_CASE("parse_grid") {
  CHECK(parse_grid("3:6:1") == std::vector<double>{3, 4, 5, 6});
  CHECK(parse_grid("1:2:0.5") == std::vector<double>{1, 1.5, 2});
  CHECK(parse_grid("7:7:1") == std::vector<double>{7});
  for (const char* bad : {"3:1:1", "1:2:0", "1:2", "a:b:c", "1:2:-1", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_grid(bad), Error);
  }
}

TEST_CASE("count prints the summary line") {
  const auto r = run({"count", "--k", "1", "--l", "1", "--r", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("n_A=2 n_B=0 n=2 ") != std::string::npos);
  CHECK(r.out.find("N=0.2160661652919") != std::string::npos);
}

TEST_CASE("iterate and characteristic") {
  const auto it = run({"iterate", "--m", "3", "--r", "1"});
  CHECK(it.code == 0);
  CHECK(it.out.rfind("m,r,theta,value,derivative,log_value\n3,1,0,", 0) == 0);
  const auto ch = run({"--format", "jsonl", "characteristic", "--m", "1", "--r", "7"});
  CHECK(ch.code == 0);
  CHECK(ch.out.find("\"method\":\"direct\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"count", "--k", "1", "--l", "1"}).code == 2);
  CHECK(run({"sweep", "--k", "2", "--l", "1", "--grid", "6:3:1"}).code == 2);
  CHECK(run({"verify", "--suite", "no_such_suite"}).code == 2);
  CHECK(run({"--format", "xml", "verify"}).code == 2);
}

TEST_CASE("computational errors exit with 1 and name the error") {
  const auto depth = run({"count", "--k", "3", "--l", "2", "--r", "2"});
  CHECK(depth.code == 1);
  CHECK(depth.err.rfind("Domain: ", 0) == 0);
  const auto radius = run({"iterate", "--m", "2", "--r", "0"});
  CHECK(radius.code == 1);
  CHECK(radius.err.rfind("Domain: ", 0) == 0);
  const auto ee = run({"characteristic", "--method", "ee", "--r", "900"});
  CHECK(ee.code == 1);
}

TEST_CASE("sweep writes a provenance line and the csv table") {
  const std::string path = temp_path("sweep.csv");
  const auto r = run({"sweep", "--k", "2", "--l", "1", "--grid", "3:4:1", "--out", path});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(path);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].rfind("# expcensus ", 0) == 0);
  CHECK(lines[0].find("sweep --k 2 --l 1 --grid 3:4:1") != std::string::npos);
  CHECK(lines[1] == kCountCsvHeader);
  CHECK(lines[2].rfind("3,2,1,14,", 0) == 0);
  CHECK(lines[3].rfind("4,2,1,62,", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("census writes jsonl for A and pair roots") {
  const std::string path = temp_path("census.jsonl");
  REQUIRE(run({"census", "--k", "2", "--l", "1", "--r", "6.5", "--out", path}).code == 0);
  const auto lines = lines_of(path);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0].rfind("# expcensus ", 0) == 0);
  int pairs = 0;
  for (const auto& line : lines) pairs += line.find("\"kind\":\"pair\"") != std::string::npos;
  CHECK(pairs == 2);
  std::filesystem::remove(path);
}

TEST_CASE("verify exit code follows the rows") {
  const auto pass = run({"verify", "--suite", "closed_forms", "--suite", "exact_counts_11"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find(kCheckCsvHeader) != std::string::npos);

  // The t = 1000 row asks for a gap below double resolution; its verdict drives the exit code.
  const auto ec = run({"verify", "--suite", "lemma_ec"});
  std::istringstream in(ec.out);
  std::string line;
  int rows = 0;
  bool any_false = false;
  while (std::getline(in, line)) {
    if (line.rfind("lemma_ec,", 0) != 0) continue;
    ++rows;
    any_false = any_false || line.find(",false,") != std::string::npos;
  }
  CHECK(rows == 3);
  CHECK(ec.code == (any_false ? 1 : 0));
}

TEST_CASE("verify output is byte-identical across runs and thread counts") {
  const std::string a = temp_path("a.csv"), b = temp_path("b.csv");
  run({"--threads", "1", "verify", "--suite", "census", "--suite", "lemma6", "--out", a});
  run({"--threads", "3", "verify", "--suite", "census", "--suite", "lemma6", "--out", b});
  auto la = lines_of(a), lb = lines_of(b);
  REQUIRE(la.size() > 2);
  REQUIRE(la.size() == lb.size());
  // The provenance line carries the argument list, which differs in --threads.
  for (std::size_t i = 1; i < la.size(); ++i) CHECK(la[i] == lb[i]);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
