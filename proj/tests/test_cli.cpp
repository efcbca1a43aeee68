#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string("\"") + GREEDY_ENERGY_CLI + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, GenerateWritesOneRowPerPoint) {
  const auto r = run("generate --domain circle --s 1 --n 64");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), 65u);
  EXPECT_EQ(r.out.rfind("n,param,x1,x2,potential,energy", 0), 0u);
}

TEST(Cli, GenerateJson) {
  const auto r = run("generate --domain interval --a -1 --b 1 --s 0 --n 8 --format json --seed 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"seed\":5"), std::string::npos);
  EXPECT_NE(r.out.find("\"kernel\":\"log\""), std::string::npos);
}

TEST(Cli, PackingCounterexample) {
  const auto r = run("packing --counterexample interval --levels 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), 10u);
}

TEST(Cli, ConstantsPrintsShortestRoundTrip) {
  const auto f = run("constants --name f --s 2");
  EXPECT_EQ(f.status, 0);
  EXPECT_EQ(f.out, "1.2222222222222223\n");
  const auto e = run("constants --name circle_min_energy --n 4 --s 2");
  EXPECT_EQ(e.out, "5\n");
}

TEST(Cli, ReportSecondOrder) {
  const auto r = run("report --kind second_order --domain circle --s 0.5 --n 96");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("N,statistic,reference,ratio", 0), 0u);
}

TEST(Cli, InvalidInputExitsOne) {
  EXPECT_EQ(run("generate --domain torus --n 4").status, 1);
  EXPECT_EQ(run("generate --domain circle --s -1 --n 4").status, 1);
  EXPECT_EQ(run("constants --name zeta --s 1").status, 1);
  EXPECT_EQ(run("frobnicate").status, 1);
}

TEST(Cli, VerifySingleCriterion) {
  const auto r = run("verify --criteria 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("PASS [ 3]", 0), 0u);
}

TEST(Cli, ConfigFileSuppliesDefaults) {
  const auto path = std::filesystem::temp_directory_path() / "greedy_energy_cli_config.json";
  {
    std::ofstream os(path);
    os << R"({"domain": "interval", "a": 0, "b": 1, "s": 2, "n": 10})";
  }
  const auto r = run("generate --config " + path.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines(r.out), 11u);
  EXPECT_EQ(r.out.rfind("n,param,x1,potential", 0), 0u);
  // explicit flags win over the file
  EXPECT_EQ(lines(run("generate --config " + path.string() + " --n 5").out), 6u);
  std::filesystem::remove(path);
}
