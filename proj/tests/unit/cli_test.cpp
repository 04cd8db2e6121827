#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "gp/cli.hpp"
#include "gp/domains.hpp"
#include "gp/text_format.hpp"

using namespace gp;
namespace fs = std::filesystem;

namespace {

struct Cli {
  int code = -1;
  std::string out, err;
};

Cli cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Cli r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("gp_cli_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) n += line.find(needle) != std::string::npos;
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes one file per instance") {
  TempDir dir("gen");
  const auto r = cli({"gen", "--domain", "reverse", "--count", "4", "--seed", "3",
                      "--out", dir / "train"});
  CHECK(r.code == kExitOk);
  const auto loaded = load_instances(dir / "train");
  REQUIRE(loaded.size() == 4);
  CHECK(loaded[0].first.filename() == "reverse-training-000000.txt");
  CHECK(loaded[0].second.init.size() == 2);
  CHECK(loaded[3].second.init.size() == 5);

  const auto v = cli({"gen", "--domain", "reverse", "--count", "50", "--split", "validation",
                      "--out", dir / "valid"});
  CHECK(v.code == kExitOk);
  const auto valid = load_instances(dir / "valid");
  REQUIRE(valid.size() == 50);
  CHECK(valid.back().second.init.size() == 51);
}

TEST_CASE("validate the reference reverse program on its 50-instance suite") {
  TempDir dir("validate");
  const auto& spec = domain_spec("reverse");
  write_file(dir / "rev.txt", serialize_program(reference_program(spec), domain_actions(spec)));
  REQUIRE(cli({"gen", "--domain", "reverse", "--count", "50", "--split", "validation",
               "--out", dir / "valid"}).code == kExitOk);
  const auto r = cli({"validate", "--program", dir / "rev.txt", "--instances", dir / "valid"});
  CHECK(r.code == kExitOk);
  CHECK(count_lines_with(r.out, ": END_GOAL") == 50);
  CHECK(r.out.find("total=50 END_GOAL=50") != std::string::npos);
}

TEST_CASE("validate classifies a looping program") {
  TempDir dir("loop");
  write_file(dir / "loop.txt", "0. inc(z1)\n1. dec(z1)\n2. goto(0,EQ)\n3. end\n");
  REQUIRE(cli({"gen", "--domain", "reverse", "--count", "2", "--out", dir / "in"}).code ==
          kExitOk);
  const auto on = cli({"validate", "--program", dir / "loop.txt", "--instances", dir / "in"});
  CHECK(on.code == kExitFailure);
  CHECK(count_lines_with(on.out, ": INFINITE") == 2);
  const auto off = cli({"validate", "--program", dir / "loop.txt", "--instances", dir / "in",
                        "--no-infinite-detection", "--max-steps", "1000"});
  CHECK(off.code == kExitFailure);
  CHECK(count_lines_with(off.out, ": STEP_LIMIT") == 2);
}

TEST_CASE("synth on a reverse toy problem writes a program that validates") {
  TempDir dir("synth");
  REQUIRE(cli({"gen", "--domain", "reverse", "--count", "3", "--out", dir / "train"}).code ==
          kExitOk);
  REQUIRE(cli({"gen", "--domain", "reverse", "--count", "50", "--split", "validation",
               "--out", dir / "valid"}).code == kExitOk);
  const auto s = cli({"synth", "--domain", "reverse", "--instances", dir / "train", "--lines",
                      "6", "--pointers", "2", "--eval", "h5,f1", "--out", dir / "p.txt"});
  CHECK(s.code == kExitOk);
  CHECK(s.out.find("domain,n,pointers,eval,time_s,mem_mb,expanded,evaluated,status") !=
        std::string::npos);
  CHECK(s.out.find("reverse,6,2,\"h5,f1\",") != std::string::npos);
  CHECK(s.out.find(",solution") != std::string::npos);
  REQUIRE(fs::exists(dir / "p.txt"));
  const auto v = cli({"validate", "--program", dir / "p.txt", "--instances", dir / "valid"});
  CHECK(v.code == kExitOk);
}

TEST_CASE("synth exit codes for no solution and budget") {
  TempDir dir("synth_fail");
  REQUIRE(cli({"gen", "--domain", "reverse", "--count", "3", "--out", dir / "train"}).code ==
          kExitOk);
  const auto none = cli({"synth", "--domain", "reverse", "--instances", dir / "train",
                         "--lines", "2", "--pointers", "2", "--out", dir / "p.txt"});
  CHECK(none.code == kExitFailure);
  CHECK(none.out.find(",no_solution") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "p.txt"));
  const auto budget = cli({"synth", "--domain", "reverse", "--instances", dir / "train",
                           "--lines", "9", "--pointers", "3", "--timeout", "0",
                           "--out", dir / "p.txt"});
  CHECK(budget.code == kExitBudget);
}

TEST_CASE("errors exit with code 1 and a message") {
  TempDir dir("errors");
  CHECK(cli({}).code == kExitError);
  CHECK(cli({"frobnicate"}).code == kExitError);
  const auto unknown = cli({"gen", "--domain", "hanoi", "--count", "1", "--out", dir / "x"});
  CHECK(unknown.code == kExitError);
  CHECK(unknown.err.find("error:") != std::string::npos);
  const auto missing = cli({"validate", "--program", dir / "nope.txt", "--instances", dir / "none"});
  CHECK(missing.code == kExitError);
  write_file(dir / "bad.txt", "0. goto(1,EQ)\n1. end\n");
  REQUIRE(cli({"gen", "--domain", "reverse", "--count", "1", "--out", dir / "in"}).code ==
          kExitOk);
  const auto bad = cli({"validate", "--program", dir / "bad.txt", "--instances", dir / "in"});
  CHECK(bad.code == kExitError);
  CHECK(bad.err.find("illegal goto target") != std::string::npos);
  CHECK(cli({"bench", "--suite", "huge", "--out", dir / "b.csv"}).code == kExitError);
  CHECK(cli({"synth", "--help"}).code == kExitOk);
}

TEST_CASE("bench suites") {
  CHECK(bench_suite("smoke").size() == 2);
  CHECK(bench_suite("desk").size() == 5);
  CHECK(bench_suite("paper").size() == 64);
  CHECK_THROWS_AS(bench_suite("tiny"), std::invalid_argument);
}

TEST_CASE("bench smoke is repeatable") {
  TempDir dir("bench");
  const auto a = cli({"bench", "--suite", "smoke", "--out", dir / "a.csv", "--programs",
                      dir / "pa"});
  const auto b = cli({"bench", "--suite", "smoke", "--out", dir / "b.csv", "--programs",
                      dir / "pb"});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  // Rows without time and memory columns must agree.
  auto strip = [](const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::string cur;
      bool quoted = false;
      for (char c : line) {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) {
          f.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      f.push_back(cur);
      REQUIRE(f.size() == 9);
      out += f[0] + f[1] + f[2] + f[3] + f[6] + f[7] + f[8] + "\n";
    }
    return out;
  };
  CHECK(strip(a.out) == strip(b.out));
  CHECK(count_lines_with(a.out, ",solution") == 2);
  CHECK(read_file(dir / "pa/reverse-h5_f1.txt") == read_file(dir / "pb/reverse-h5_f1.txt"));
}

TEST_CASE("GP_THREADS") {
  ::setenv("GP_THREADS", "3", 1);
  CHECK(bench_threads_from_env() == 3);
  ::setenv("GP_THREADS", "zero", 1);
  CHECK(bench_threads_from_env() == 1);
  ::unsetenv("GP_THREADS");
  CHECK(bench_threads_from_env() == 1);
}

}  // TEST_SUITE
