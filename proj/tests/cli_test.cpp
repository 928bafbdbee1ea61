#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "gtest/gtest.h"

#ifndef TRICOMM_CLI_PATH
#error "TRICOMM_CLI_PATH must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = 0;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  FILE* pipe = popen((std::string(TRICOMM_CLI_PATH) + " " + args + " 2>&1").c_str(), "r");
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  r.status = pclose(pipe);
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tricomm_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  fs::path dir_;
};

TEST_F(Cli, ScoreOracleAndDetectOnTwoEdgeGraph) {
  write("g.txt", "2 2 2\n0 0 0\n1 1 1\n");
  write("single.json", R"({"red":[0,1],"green":[0,1],"blue":[0,1]})");
  auto r = run("score --in " + path("g.txt") + " --partition " + path("single.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("q 18.679700"), std::string::npos) << r.out;

  r = run("oracle --in " + path("g.txt") + " --out " + path("best.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("q 6.392317"), std::string::npos) << r.out;
  EXPECT_NE(read("best.json").find("\"red\":[0,0]"), std::string::npos);

  r = run("--quiet detect --in " + path("g.txt") + " --seed 3 --out " + path("pred.json") + " --report");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"communities\""), std::string::npos) << r.out;
  EXPECT_EQ(read("pred.json"), read("best.json"));
}

TEST_F(Cli, GenerateDetectNmi) {
  auto r = run("--quiet generate --preset one2one --communities 3 --nodes-per-comm 10 --p-dense 0.5 --p-sparse 0.001 "
               "--seed 42 --out " + path("g.txt") + " --truth " + path("truth.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  r = run("--quiet detect --in " + path("g.txt") + " --seed 42 --out " + path("pred.json"));
  ASSERT_EQ(r.status, 0) << r.out;
  r = run("nmi --truth " + path("truth.json") + " --pred " + path("pred.json"));
  EXPECT_EQ(r.out, "red 1.000000\ngreen 1.000000\nblue 1.000000\n");
  r = run("nmi --truth " + path("truth.json") + " --pred " + path("pred.json") + " --color all");
  EXPECT_EQ(r.out, "1.000000\n");
}

TEST_F(Cli, SweepWritesGroupedCsv) {
  auto r = run("--quiet sweep --preset one2one --communities 2 --nodes-per-comm 5 --p-dense 0.5,0.2 --runs 2 "
               "--seed 1 --out " + path("s.csv"));
  ASSERT_EQ(r.status, 0) << r.out;
  const std::string csv = read("s.csv");
  EXPECT_EQ(csv.rfind("p_dense,run,nmi_red,nmi_green,nmi_blue,q,seconds\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * (2 + 2));
  EXPECT_NE(csv.find("\n0.200000,mean,"), std::string::npos);
}

TEST_F(Cli, ErrorsExitNonzeroWithOneLine) {
  write("bad.txt", "2 2 2\n0 0 5\n");
  auto r = run("detect --in " + path("bad.txt"));
  EXPECT_NE(r.status, 0);
  EXPECT_EQ(r.out, "error: line 2: blue index out of range\n");

  write("g.txt", "2 2 2\n0 0 0\n");
  write("p.json", R"({"red":[0,2],"green":[0,0],"blue":[0,0]})");
  r = run("score --in " + path("g.txt") + " --partition " + path("p.json"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("labels not contiguous"), std::string::npos) << r.out;

  write("big.txt", "9 9 9\n0 0 0\n");
  r = run("oracle --in " + path("big.txt"));
  EXPECT_NE(r.status, 0);
  EXPECT_EQ(r.out.rfind("error: ", 0), 0u) << r.out;
}

}  // namespace
