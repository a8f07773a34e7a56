#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "carpet-metric");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = carpet::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path golden(const char* name) { return fs::path(CARPET_GOLDEN_DIR) / name; }

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("carpet-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                                                   ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const char* name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST(CliGolden, Beta) {
  const Result r = run({"beta", "--mu1", "0.125", "--rho", "1.25148"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(golden("beta.txt")));
}

TEST(CliGolden, Dist) {
  const Result r = run({"dist", "--a", "0.5", "--b", "0.25", "--from", "1/2,0/1", "--to", "0/1,1/2", "--level", "1",
                        "--pure"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(golden("dist.txt")));
}

TEST(CliGolden, Scan) {
  TempDir dir;
  const Result r = run({"scan", "--grid", "0.25", "--level", "2", "--out", dir.file("scan.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(dir.file("scan.csv")), slurp(golden("scan.csv")));
}

TEST(Cli, DistExamples) {
  const Result third = run({"dist", "--a", "0.3333333333", "--b", "0.3333333333", "--from", "0/1,0/1", "--to",
                            "1/1,0/1", "--level", "4", "--snap-i1"});
  EXPECT_EQ(third.code, 0);
  EXPECT_NE(third.out.find("value=1\n"), std::string::npos) << third.out;
  EXPECT_NE(third.out.find("region=OnI1\n"), std::string::npos);

  const Result unsnapped = run({"dist", "--a", "0.3333333333", "--b", "0.3333333333", "--from", "0/1,0/1", "--to",
                                "1/1,0/1", "--level", "4"});
  EXPECT_EQ(unsnapped.code, 3);
  EXPECT_NE(unsnapped.out.find("value=0.9999999996"), std::string::npos) << unsnapped.out;
}

TEST(Cli, ScanMarksSigmaOneExact) {
  TempDir dir;
  ASSERT_EQ(run({"scan", "--grid", "0.05", "--level", "4", "--threads", "4", "--out", dir.file("scan.csv")}).code, 0);
  std::istringstream csv(slurp(dir.file("scan.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "a,b,level,region,D_p1p3,bottom_bound,verdict");
  std::size_t sigma1 = 0;
  while (std::getline(csv, line)) {
    double a = 0, b = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf", &a, &b), 2);
    if (2 * a + b >= 1 - 1e-12 && a <= b + 1e-12) {
      EXPECT_EQ(line.substr(line.rfind(',') + 1), "Exact1") << line;
      ++sigma1;
    }
  }
  EXPECT_GT(sigma1, 100u);
}

TEST(Cli, VerifyOracle) {
  const Result r = run({"verify", "--suite", "oracle", "--samples", "50", "--seed", "7", "--level", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "suite=oracle checked=50 violations=0\n");
}

TEST(Cli, VerifySuitesPass) {
  for (const char* suite : {"prop21", "lemma27", "lemma28"}) {
    const Result r = run({"verify", "--suite", suite, "--samples", "40", "--seed", "3"});
    EXPECT_EQ(r.code, 0) << suite << "\n" << r.out << r.err;
  }
  EXPECT_EQ(run({"verify", "--suite", "adapted", "--samples", "20", "--level", "3"}).code, 0);
  EXPECT_EQ(run({"verify", "--suite", "qs", "--samples", "20", "--level", "3"}).code, 0);
  EXPECT_EQ(run({"verify", "--suite", "chaincond", "--chain-n", "2,4", "--level", "3"}).code, 0);
}

TEST(Cli, Reproducible) {
  TempDir dir;
  const std::vector<std::string> base{"verify", "--suite", "qs", "--samples", "30", "--level", "3", "--seed", "99"};
  auto with = [&](const char* threads, const char* file) {
    auto args = base;
    args.insert(args.end(), {"--threads", threads, "--out", dir.file(file)});
    return run(args);
  };
  const Result one = with("1", "one.jsonl");
  const Result four = with("4", "four.jsonl");
  const Result again = with("4", "again.jsonl");
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(slurp(dir.file("one.jsonl")), slurp(dir.file("four.jsonl")));
  EXPECT_EQ(slurp(dir.file("four.jsonl")), slurp(dir.file("again.jsonl")));
  EXPECT_FALSE(slurp(dir.file("one.jsonl")).empty());

  const auto beta1 = run({"beta", "--mu1", "0.1"});
  EXPECT_EQ(beta1.out, run({"beta", "--mu1", "0.1"}).out);
  const auto scan1 = run({"scan", "--grid", "0.2", "--level", "3", "--threads", "3"});
  EXPECT_EQ(scan1.out, run({"scan", "--grid", "0.2", "--level", "3", "--threads", "1"}).out);
}

TEST(CliExitCodes, General) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"beta", "--threads", "0"}).code, 2);
  EXPECT_EQ(run({"beta", "--out", "/nonexistent-dir/x.txt"}).code, 1);
}

TEST(CliExitCodes, Dist) {
  EXPECT_EQ(run({"dist", "--a", "abc", "--b", "0.3", "--from", "p1", "--to", "p3"}).code, 2);
  EXPECT_EQ(run({"dist", "--a", "0.3", "--from", "p1", "--to", "p3"}).code, 2);
  EXPECT_EQ(run({"dist", "--a", "1.5", "--b", "0.3", "--from", "p1", "--to", "p3"}).code, 2);
  EXPECT_EQ(run({"dist", "--a", "0.3", "--b", "0.4", "--from", "1/2,1/2", "--to", "p3"}).code, 2);
  EXPECT_EQ(run({"dist", "--a", "0.3", "--b", "0.4", "--from", "p1", "--to", "p3", "--filter", "line:0"}).code, 2);
  const Result non_metric = run({"dist", "--a", "0.45", "--b", "0.10", "--from", "p1", "--to", "p3", "--level", "2"});
  EXPECT_EQ(non_metric.code, 3);
  EXPECT_NE(non_metric.out.find("value="), std::string::npos);
  EXPECT_NE(non_metric.err.find("pseudometric"), std::string::npos);
  EXPECT_EQ(run({"dist", "--a", "0.3", "--b", "0.4", "--from", "p1", "--to", "p5", "--filter", "seg:0/1,0/1,1/3,0/1",
                 "--level", "2", "--pure"})
                .code,
            4);
}

TEST(CliExitCodes, Ball) {
  EXPECT_EQ(run({"ball", "--a", "0.3", "--b", "0.4", "--at", "p1"}).code, 2);
  EXPECT_EQ(run({"ball", "--a", "0.3", "--b", "0.4", "--at", "p1", "--radius", "-1"}).code, 2);
  const Result ok = run({"ball", "--a", "0.3333333333", "--snap-i1", "--at", "p1", "--radius", "0.34", "--level", "1",
                         "--pure"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "level,ix,iy,dist\n1,0,0,0.3333333333\n");
}

TEST(CliExitCodes, Scan) {
  EXPECT_EQ(run({"scan", "--grid", "0"}).code, 2);
  EXPECT_EQ(run({"scan", "--grid", "1.5"}).code, 2);
  EXPECT_EQ(run({"scan"}).code, 2);
}

TEST(CliExitCodes, Verify) {
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "lemma27", "--a", "0.3", "--b", "0.45"}).code, 2);
  const Result capped = run({"verify", "--suite", "adapted", "--samples", "3", "--level", "3", "--cap", "0.5"});
  EXPECT_EQ(capped.code, 5);
  EXPECT_NE(capped.out.find("\"ok\":false"), std::string::npos);
}

TEST(CliExitCodes, Beta) {
  EXPECT_EQ(run({"beta", "--mu1", "0.3"}).code, 2);
  EXPECT_EQ(run({"beta", "--mu1", "0.125", "--rho", "10"}).code, 2);
  EXPECT_EQ(run({"beta", "--mu1", "x"}).code, 2);
}

TEST(CliExitCodes, Volume) {
  EXPECT_EQ(run({"volume", "--mu1", "0.125", "--radii", "-0.5"}).code, 2);
  EXPECT_EQ(run({"volume", "--mu1", "0.3", "--radii", "0.5"}).code, 2);
  const Result ok = run({"volume", "--mu1", "0.125", "--radii", "0,10", "--level", "2"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "r,V\n0,0\n10,1\n");
}

TEST(CliExitCodes, Profile) {
  const Result bad = run({"profile", "--mu1", "0.125", "--d", "0.2", "--times", "0,1", "--level", "3"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.out, "");
  EXPECT_EQ(run({"profile", "--mu1", "0.125", "--d", "-1", "--times", "1"}).code, 2);
  const Result ok = run({"profile", "--mu1", "0.125", "--d", "0", "--times", "1", "--level", "3"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "t,d,V,lower,upper\n1,0,1,1,1\n");
}
