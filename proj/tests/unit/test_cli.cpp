#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhardy/cli.hpp"
#include "hhardy/errors.hpp"
#include "hhardy/kernels.hpp"

using namespace hh;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hhardy");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
  return f;
}

fs::path scratch(const std::string &name) {
  const fs::path d = fs::temp_directory_path() / "hhardy_test_cli";
  fs::create_directories(d);
  return d / name;
}

} // namespace

TEST_CASE("list and range parsing") {
  CHECK(parse_real_list("0.5") == std::vector<double>{0.5});
  CHECK(parse_real_list("0.3, 0.5,0.7") == std::vector<double>{0.3, 0.5, 0.7});
  CHECK(parse_real_list("0.1:0.3:0.1") == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(parse_real_list("1:0:0.5").empty());
  CHECK(parse_int_list("1,2") == std::vector<int>{1, 2});
  CHECK(parse_int_list("1:3:1") == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(parse_int_list("1.5"), InvalidInput);
  CHECK_THROWS_AS(parse_real_list("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_real_list("0:1:0"), InvalidInput);
  CHECK_THROWS_AS(parse_real_list("0:1:1e-9"), InvalidInput);
}

TEST_CASE("format defaults") {
  CHECK(default_format("sweep") == "csv");
  CHECK(default_format("constants") == "json");
  CHECK(default_format("verify") == "json");
}

TEST_CASE("constants in JSON and CSV agree") {
  const Run j = run({"constants", "--n", "1,2", "--s", "0.5", "--delta", "1"});
  REQUIRE(j.code == kExitPass);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["tool"] == "hhardy");
  CHECK(doc["command"] == "constants");
  REQUIRE(doc["rows"].size() == 2);
  const double c = doc["rows"][0]["values"]["c_ns_nonhomog"].get<double>();
  CHECK(c == doctest::Approx(0.941775540443748945324388141828).epsilon(1e-13));
  CHECK(doc["rows"][0]["provenance"]["Us_norm"] == "spectral");

  const Run v = run({"constants", "--n", "1,2", "--s", "0.5", "--delta", "1", "--format", "csv"});
  REQUIRE(v.code == kExitPass);
  std::stringstream ss(v.out);
  std::string head, row;
  std::getline(ss, head);
  std::getline(ss, row);
  const auto names = split(head), vals = split(row);
  REQUIRE(names.size() == vals.size());
  for (size_t i = 3; i < names.size(); ++i) {
    CAPTURE(names[i]);
    const auto &jv = doc["rows"][0]["values"][names[i]];
    if (jv.is_number()) CHECK(std::stod(vals[i]) == jv.get<double>());
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"constants", "--n", "1", "--s", "3"}).code == kExitUsage);
  CHECK(run({"constants", "--s", "1:0:0.1"}).code == kExitUsage);
  CHECK(run({"constants", "--delta", "-1"}).code == kExitUsage);
  CHECK(run({"verify", "nosuchsuite"}).code == kExitUsage);
  CHECK(run({"sweep", "--theorem", "nosuchtheorem"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  const Run bad = run({"constants", "--n", "1", "--s", "3"});
  CHECK(bad.err.find("out of range") != std::string::npos);
  CHECK(bad.out.empty());
}

TEST_CASE("version and help exit with 0") {
  const Run v = run({"--version"});
  CHECK(v.code == kExitPass);
  CHECK(!v.out.empty());
  CHECK(run({"--help"}).code == kExitPass);
}

TEST_CASE("config file and atomic output") {
  const fs::path conf = scratch("run.ini");
  {
    std::ofstream f(conf);
    f << "n=2\ns=0.25\n";
  }
  const fs::path out = scratch("constants.json");
  fs::remove(out);
  const Run r = run({"constants", "--config", conf.string(), "--out", out.string()});
  REQUIRE(r.code == kExitPass);
  CHECK(r.out.empty());
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["rows"][0]["n"] == 2);
  CHECK(doc["rows"][0]["s"] == 0.25);
  CHECK(doc["rows"][0]["values"]["c_ns_nonhomog"].get<double>() ==
        doctest::Approx(0.348807181512008035638273281107).epsilon(1e-13));
  // command-line flags win over the file
  const Run o = run({"constants", "--config", conf.string(), "--s", "0.5"});
  CHECK(nlohmann::json::parse(o.out)["rows"][0]["s"] == 0.5);

  const fs::path w = scratch("atomic.txt");
  write_atomic(w.string(), "first");
  write_atomic(w.string(), "second");
  std::ifstream wi(w);
  std::string content((std::istreambuf_iterator<char>(wi)), std::istreambuf_iterator<char>());
  CHECK(content == "second");
  int others = 0;
  for (const auto &e : fs::directory_iterator(w.parent_path()))
    if (e.path().filename().string().rfind("atomic.txt", 0) == 0 && e.path() != w) ++others;
  CHECK(others == 0);
}

TEST_CASE("sweep is independent of the thread count") {
  RunConfig cfg;
  cfg.command = "sweep";
  cfg.n = std::vector<int>{1};
  cfg.s = std::vector<double>{0.5};
  cfg.delta = std::vector<double>{1.0};
  cfg.theorems = {"hardy_nonhomog", "hardy_homog"};
  const auto a = run_sweep(cfg, 1);
  const auto b = run_sweep(cfg, 3);
  REQUIRE(a.size() == 8);
  CHECK(sweep_report(cfg, a) == sweep_report(cfg, b));
  for (const auto &r : a) {
    CAPTURE(r.function_id);
    CHECK(r.ok);
    CHECK(r.pass);
  }
  const Run cli = run({"sweep", "--n", "1", "--s", "0.5", "--delta", "1"});
  CHECK(cli.code == kExitPass);
  CHECK(cli.out.rfind("n,s,delta", 0) == 0);
}

TEST_CASE("verify euclid through the command line") {
  const Run r = run({"verify", "euclid"});
  CHECK(r.code == kExitPass);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["suite"] == "euclid");
  CHECK(doc["config"]["seed"] == 42);
}
