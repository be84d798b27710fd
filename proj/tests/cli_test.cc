// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "cmbx/json_io.h"
#include "gtest/gtest.h"

namespace cmbx {
namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult RunCli(const std::string& args) {
  const std::string cmd = std::string(CMBX_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Data(const std::string& name) {
  return std::string(CMBX_TEST_DATA_DIR) + "/" + name;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("cmbx_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

std::string Sha256(const std::string& path) {
  FILE* p = popen(("sha256sum " + path).c_str(), "r");
  std::array<char, 65> buf{};
  const std::size_t got = fread(buf.data(), 1, 64, p);
  pclose(p);
  return std::string(buf.data(), got);
}

TEST_F(CliTest, GoldenGeneratorHash) {
  const std::string out = Path("h.json");
  ASSERT_EQ(RunCli("gen --family H --m 3 --n 4 --seed 7 --out " + out).code, 0);
  EXPECT_EQ(Sha256(out), "aa978e9bc673f4b313632b46ebdf38561b9ece96ffd0cd5df208b0e40429f1a1");
}

TEST_F(CliTest, SeedAfterSubcommandAndFromEnvironment) {
  const RunResult a = RunCli("gen --family R --m 3 --n 3 --seed 4");
  const RunResult b = RunCli("--seed 4 gen --family R --m 3 --n 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, RunCli("gen --family R --m 3 --n 3 --seed 5").out);
  setenv("CMBX_SEED", "4", 1);
  const RunResult e = RunCli("gen --family R --m 3 --n 3");
  unsetenv("CMBX_SEED");
  EXPECT_EQ(a.out, e.out);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli("gen --family Q").code, 2);
  EXPECT_EQ(RunCli("gen").code, 2);
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("solve " + Path("missing.json")).code, 2);
  EXPECT_EQ(RunCli("solve " + Data("condstar_fail.json") + " --mode fast").code, 2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST_F(CliTest, SolveModes) {
  const std::string inst = Path("ex1.json");
  ASSERT_EQ(RunCli("gen --family example1 --out " + inst).code, 0);
  const Json model = ReadJsonFile(inst);
  EXPECT_EQ(model["meta"]["family"], "example1");

  const std::string h = Path("h.json");
  ASSERT_EQ(RunCli("gen --family H --m 2 --n 3 --seed 2 --out " + h).code, 0);
  double values[3];
  const char* modes[] = {"relax", "exact", "bnb"};
  for (int i = 0; i < 3; ++i) {
    const RunResult r = RunCli("solve " + h + " --mode " + modes[i]);
    ASSERT_EQ(r.code, 0) << modes[i];
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["status"], "Optimal");
    values[i] = j["value"].get<double>();
  }
  EXPECT_NEAR(values[0], values[1], 1e-6 * (1 + std::abs(values[1])));
  EXPECT_NEAR(values[2], values[1], 1e-6 * (1 + std::abs(values[1])));
}

TEST_F(CliTest, ChecksAndExitCodes) {
  const std::string h = Path("h.json");
  ASSERT_EQ(RunCli("gen --family H --m 3 --n 4 --seed 7 --out " + h).code, 0);
  const RunResult ok = RunCli("check " + h + " --what condstar --samples 500");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("P1"), std::string::npos);
  EXPECT_EQ(RunCli("check " + h + " --what submodular").code, 0);
  EXPECT_EQ(RunCli("check " + h + " --what nonneg").code, 0);

  const RunResult bad = RunCli("check " + Data("condstar_fail.json") + " --what condstar");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("Witness"), std::string::npos);

  const std::string table = Path("table.json");
  Json t = ReadJsonFile(Data("condstar_fail.json"));
  t["n"] = 2;
  t["functions"][0] = Json::parse(R"({"family":"table","values":[0,0,0,1]})");
  t["objective"]["cz"] = Json::array({0.0, 0.0});
  {
    std::ofstream(table) << t.dump();
  }
  const RunResult sub = RunCli("check " + table + " --what submodular");
  EXPECT_EQ(sub.code, 1);
  EXPECT_NE(sub.out.find("gap"), std::string::npos);
}

TEST_F(CliTest, HulltestAndCutcheck) {
  const std::string h = Path("h.json");
  ASSERT_EQ(RunCli("gen --family M --m 2 --n 3 --seed 3 --out " + h).code, 0);
  const RunResult r = RunCli("hulltest " + h + " --objectives 5 --seed 2 --csv " + Path("h.csv"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["summary"]["trials"], 5);
  EXPECT_TRUE(std::filesystem::exists(Path("h.csv")));

  const RunResult zero = RunCli("hulltest " + h + " --objectives 0");
  ASSERT_EQ(zero.code, 0);
  EXPECT_TRUE(Json::parse(zero.out)["rows"].empty());

  const std::string cuts = Path("cuts.json");
  ASSERT_EQ(RunCli("solve " + h + " --mode bnb --cuts-out " + cuts).code, 0);
  EXPECT_EQ(RunCli("cutcheck " + h + " " + cuts).code, 0);
  Json pool = ReadJsonFile(cuts);
  ASSERT_FALSE(pool.empty());
  pool[0]["pi"][0] = pool[0]["pi"][0].get<double>() + 5.0;
  {
    std::ofstream(cuts) << pool.dump();
  }
  EXPECT_EQ(RunCli("cutcheck " + h + " " + cuts).code, 1);
}

TEST_F(CliTest, BssPipeline) {
  const RunResult r = RunCli("bss " + Data("bss_sample.csv") + " --criterion bic --alpha 0.5");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "Optimal");
  EXPECT_TRUE(j["subset"].is_array());

  const std::string bad = Path("bad.csv");
  {
    std::ofstream(bad) << "u1,a\n1,2\n1\n";
  }
  EXPECT_EQ(RunCli("bss " + bad).code, 2);
  EXPECT_EQ(RunCli("bss " + Path("none.csv")).code, 2);
}

TEST_F(CliTest, HalfIntegralReportAndStrengthen) {
  const RunResult e = RunCli("example1");
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(Json::parse(e.out)["rows"].size(), 3u);
  const std::string h = Path("h.json");
  ASSERT_EQ(RunCli("gen --family H --m 2 --n 3 --seed 5 --out " + h).code, 0);
  const RunResult s = RunCli("strengthen " + h);
  ASSERT_EQ(s.code, 0);
  const Json j = Json::parse(s.out);
  EXPECT_LE(j["value_no_polymatroid"].get<double>(), j["value_with"].get<double>() + 1e-9);
  EXPECT_NEAR(j["value_with"].get<double>(), j["value_exact"].get<double>(), 1e-6);
}

TEST_F(CliTest, OutDirReceivesFiles) {
  ASSERT_EQ(RunCli("--out-dir " + dir_.string() + " gen --family H --seed 1").code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "instance.json"));
}

}  // namespace
}  // namespace cmbx
