#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

using namespace zonoshape;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("zonoshape_cli_" + name);
}

}  // namespace

TEST(Cli, CapOrthant) {
  const auto r = run_cli({"cap", "--cone", "orthant2", "--a", "1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("u=(0.5,0.5)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("q=1.650963"), std::string::npos) << r.out;
}

TEST(Cli, CountSpotValue) {
  const auto r = run_cli({"count", "--cone", "orthant2", "--k", "2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("p=5"), std::string::npos) << r.out;
  const auto ns = run_cli({"count", "--k", "2,2", "--non-strict"});
  EXPECT_NE(ns.out.find("p=9"), std::string::npos) << ns.out;
}

TEST(Cli, ExitCodes) {
  const auto unknown = run_cli({"frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("unknown subcommand"), std::string::npos);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"cap", "--cone", "orthant2"}).code, 2);               // --a missing
  EXPECT_EQ(run_cli({"cap", "--a", "-1,1"}).code, 2);                      // outside the dual
  EXPECT_EQ(run_cli({"cap", "--cone", "/nonexistent.json", "--a", "1,1"}).code, 2);
  EXPECT_EQ(run_cli({"count", "--k", "40,40", "--state-budget", "10"}).code, 3);
  EXPECT_EQ(run_cli({"faces", "ar", "--r", "6"}).code, 2);
  EXPECT_EQ(run_cli({"shape", "converge", "--n", "100,10", "--replicas", "2"}).code, 2);
  EXPECT_EQ(run_cli({"cap", "--a", "1,1", "--threads", "0"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, GlobalFlagsAnywhere) {
  const auto a = run_cli({"--seed", "3", "--format", "csv", "cap", "--a", "1,1"});
  const auto b = run_cli({"cap", "--a", "1,1", "--seed", "3", "--format", "csv"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out.substr(a.out.find('\n')), b.out.substr(b.out.find('\n')));
}

TEST(Cli, CsvIsReproducibleAndSelfDescribing) {
  const auto p1 = temp_path("m1.csv"), p2 = temp_path("m2.csv");
  const std::vector<std::string> base{"gibbs", "sample", "--k", "1,1", "--n", "50",
                                      "--replicas", "40", "--seed", "7", "--csv"};
  auto args1 = base, args2 = base;
  args1.push_back(p1.string());
  args2.push_back(p1.string());
  ASSERT_EQ(run_cli(args1).code, 0);
  const std::string first = slurp(p1);
  ASSERT_EQ(run_cli(args2).code, 0);
  EXPECT_EQ(first, slurp(p1));
  EXPECT_EQ(first.rfind("# zonoshape gibbs sample", 0), 0u) << first;
  const auto header = first.substr(first.find('\n') + 1, first.find('\n', first.find('\n') + 1) -
                                                             first.find('\n') - 1);
  EXPECT_EQ(header, "quantity,i,j,value,se,reference");
  args2.back() = p2.string();
  args2[9] = "8";
  ASSERT_EQ(run_cli(args2).code, 0);
  EXPECT_NE(first.substr(first.find('\n')), slurp(p2).substr(slurp(p2).find('\n')));
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST(Cli, JsonMirrorsCsv) {
  const auto j = run_cli({"cap", "--cone", "orthant3", "--a", "1,1,1", "--json"});
  ASSERT_EQ(j.code, 0) << j.err;
  const auto doc = nlohmann::json::parse(j.out);
  const auto& row = doc.at("rows").at(0);
  EXPECT_NEAR(row.at("q").get<double>(), std::pow(64.0 / 6.0, 0.25), 1e-13);
  EXPECT_EQ(row.at("u_exact").get<std::string>(), "(1/3,1/3,1/3)");
  const auto c = run_cli({"count", "--k", "1,1", "--n-max", "4", "--format", "json"});
  const auto rows = nlohmann::json::parse(c.out).at("rows");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].at("p").get<int>(), 5);
}

TEST(Cli, ConePresetsAndFiles) {
  const auto w = run_cli({"cap", "--cone", "wedge:(1,0),(1,2)", "--a", "3/10,1/5"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_NE(w.out.find("u_exact=(5/2,5/4)"), std::string::npos) << w.out;
  const auto circ = run_cli({"cap", "--cone", "circ3:64", "--a", "0,0,1"});
  EXPECT_NE(circ.out.find("q=1.2546"), std::string::npos) << circ.out;
  const auto path = temp_path("cone.json");
  std::ofstream(path) << R"({"d": 2, "generators": [[1, 0], [1, 2]]})";
  const auto f = run_cli({"cap", "--cone", path.string(), "--a", "3/10,1/5"});
  EXPECT_EQ(f.out, w.out);
  std::filesystem::remove(path);
}

TEST(Cli, FacesAndShape) {
  const auto path = temp_path("gens.json");
  std::ofstream(path) << R"({"d": 3, "generators": [[1,1,1],[1,2,4],[1,3,9],[1,4,16],[1,5,25]]})";
  const auto f = run_cli({"faces", "count", "--generators", path.string(), "--oracle"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_NE(f.out.find("method=arrangement f=(22,40,20)"), std::string::npos) << f.out;
  std::filesystem::remove(path);
  const auto ar = run_cli({"faces", "ar", "--r", "1"});
  EXPECT_NE(ar.out.find("chambers=8"), std::string::npos) << ar.out;
  const auto b = run_cli({"shape", "boundary", "--d", "2", "--grid", "20"});
  EXPECT_EQ(b.code, 0) << b.out;
  const auto t0 = run_cli({"shape", "t0", "--net", "8", "--format", "csv"});
  ASSERT_EQ(t0.code, 0) << t0.err;
  EXPECT_EQ(std::count(t0.out.begin(), t0.out.end(), '\n'), 10);
}

TEST(Cli, LattAndUniform) {
  const auto d = run_cli({"latt", "density", "--d", "2", "--N", "200"});
  ASSERT_EQ(d.code, 0) << d.err;
  const auto c = run_cli({"latt", "cubature", "--trials", "4", "--seed", "1"});
  EXPECT_EQ(c.code, 0) << c.err;
  const auto u = run_cli({"gibbs", "uniform", "--nk", "2,2", "--accepted", "200", "--format", "csv"});
  ASSERT_EQ(u.code, 0) << u.err;
  EXPECT_EQ(std::count(u.out.begin(), u.out.end(), '\n'), 7);  // comment, header, 5 rows
}

TEST(Cli, VerifySingleCriterion) {
  const auto v = run_cli({"verify", "--criterion", "1"});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.out.rfind("PASS  1", 0), 0u) << v.out;
}
