#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ptdyn_cli/app.hpp"
#include "ptdyn_cli/config.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("ptdyn_cli_" + std::string(info->name()) + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& name, const json& doc) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << doc.dump(2);
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the installed binary with extra arguments; returns its exit status.
  int run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " \"" + std::string(PTDYN_BINARY) + "\" " + args + " > \"" +
                            path("stdout.txt") + "\" 2> \"" + path("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

json doc(const std::string& command, json params = json::object()) {
  return json{{"schema_version", 1}, {"command", command}, {"params", std::move(params)}};
}

TEST_F(CliTest, SpinSweepWritesFigureData) {
  const auto cfg = write_config("c.json", doc("spin-sweep"));
  ASSERT_EQ(run("--config " + cfg + " --out " + path("sweep.csv")), 0) << slurp(path("stderr.txt"));
  std::ifstream in(path("sweep.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,level_index,re_E,im_E,regime");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string k, level, re, im;
    std::getline(ls, k, ',');
    std::getline(ls, level, ',');
    std::getline(ls, re, ',');
    std::getline(ls, im, ',');
    if (std::abs(std::stod(k)) > 1.0 + 1e-12) {
      EXPECT_EQ(std::stod(im), 0.0) << line;
    }
  }
  EXPECT_EQ(rows, 1202);
  EXPECT_TRUE(fs::exists(path("sweep.csv.config.json")));
}

TEST_F(CliTest, EmptySweepRangeIsValidationFailure) {
  const auto cfg = write_config("c.json", doc("spin-sweep", {{"k_min", 1.0}, {"k_max", 1.0}}));
  EXPECT_EQ(run("--config " + cfg + " --out " + path("o.csv")), ptdyn::cli::kExitValidation);
  EXPECT_FALSE(slurp(path("stderr.txt")).empty());
}

TEST_F(CliTest, SchemaViolationsExitTwo) {
  auto bad = doc("lattice");
  bad["colour"] = "blue";
  const auto cfg = write_config("bad.json", bad);
  EXPECT_EQ(run("--config " + cfg + " --out " + path("o.csv")), ptdyn::cli::kExitValidation);
  const auto malformed = path("malformed.json");
  std::ofstream(malformed) << "{\"schema_version\": 1,";
  EXPECT_EQ(run("--config " + malformed + " --out " + path("o.csv")),
            ptdyn::cli::kExitValidation);
  EXPECT_EQ(run("--out " + path("o.csv")), ptdyn::cli::kExitValidation);
}

TEST_F(CliTest, UnwritableOutputIsReported) {
  const auto cfg = write_config("c.json", doc("branch-map", {{"resolution", 32}}));
  EXPECT_EQ(run("--config " + cfg + " --out " + path("missing/dir/o.csv")),
            ptdyn::cli::kExitValidation);
}

TEST_F(CliTest, BlowUpExitsThree) {
  const auto cfg = write_config(
      "c.json", doc("lattice", {{"alpha1", 3.0}, {"alpha2", -3.0}, {"n_sites", 20}, {"z_max", 50.0},
                                {"dz", 0.01}}));
  EXPECT_EQ(run("--config " + cfg + " --out " + path("t.csv")), ptdyn::cli::kExitNumerical);
  EXPECT_NE(slurp(path("stderr.txt")).find("last stable Z"), std::string::npos);
}

TEST_F(CliTest, IdenticalConfigGivesByteIdenticalOutputs) {
  const auto cfg = write_config("c.json", doc("verify", {{"checks", {"spin_isospectral", "nu_form"}},
                                                         {"random_draws", 20}}));
  ASSERT_EQ(run("--config " + cfg + " --seed 7 --out " + path("a.jsonl")), 0);
  ASSERT_EQ(run("--config " + cfg + " --seed 7 --out " + path("b.jsonl")), 0);
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
}

TEST_F(CliTest, ResolvedEchoReproducesOutputs) {
  const auto cfg = write_config("c.json", doc("swanson", {{"n_trunc", 32}, {"n_levels", 4}}));
  ASSERT_EQ(run("--config " + cfg + " --out " + path("s.csv")), 0) << slurp(path("stderr.txt"));
  auto echo = json::parse(slurp(path("s.csv.config.json")));
  echo["output_path"] = path("s2.csv");
  const auto cfg2 = write_config("echo.json", echo);
  ASSERT_EQ(run("--config " + cfg2), 0) << slurp(path("stderr.txt"));
  EXPECT_EQ(slurp(path("s.csv")), slurp(path("s2.csv")));
  EXPECT_EQ(slurp(path("s.csv.regimes.csv")), slurp(path("s2.csv.regimes.csv")));
  EXPECT_EQ(slurp(path("s.csv.chain.json")), slurp(path("s2.csv.chain.json")));
}

TEST_F(CliTest, VerifyDefaultSuiteAllPass) {
  const auto cfg = write_config("c.json", doc("verify"));
  ASSERT_EQ(run("--config " + cfg + " --out " + path("v.jsonl")), 0) << slurp(path("stdout.txt"));
  std::ifstream in(path("v.jsonl"));
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    const auto j = json::parse(line);
    EXPECT_TRUE(j.at("pass").get<bool>()) << line;
    ++lines;
  }
  EXPECT_EQ(lines, 19);
}

TEST_F(CliTest, ThreadsFlagBeatsEnvironment) {
  const auto cfg = write_config("c.json", doc("branch-map", {{"resolution", 32}}));
  EXPECT_EQ(run("--config " + cfg + " --out " + path("b.csv"), "PTDYN_THREADS=bogus"),
            ptdyn::cli::kExitValidation);
  EXPECT_EQ(run("--config " + cfg + " --threads 2 --out " + path("b.csv"), "PTDYN_THREADS=bogus"),
            0);
  EXPECT_EQ(run("--config " + cfg + " --threads 0 --out " + path("b.csv")),
            ptdyn::cli::kExitValidation);
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutput) {
  const auto cfg = write_config("c.json", doc("branch-map", {{"resolution", 64}}));
  ASSERT_EQ(run("--config " + cfg + " --threads 1 --out " + path("a.csv")), 0);
  ASSERT_EQ(run("--config " + cfg + " --threads 3 --out " + path("b.csv")), 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST(ResolveThreads, Precedence) {
  EXPECT_EQ(ptdyn::cli::resolve_threads(std::nullopt, nullptr), 1U);
  EXPECT_EQ(ptdyn::cli::resolve_threads(std::nullopt, "4"), 4U);
  EXPECT_EQ(ptdyn::cli::resolve_threads(2, "4"), 2U);
  EXPECT_THROW(ptdyn::cli::resolve_threads(std::nullopt, "x"), ptdyn::cli::ConfigError);
}

}  // namespace
