// tests/unit/cli_test.cc

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sre/cli.h"
#include "sre/text_io.h"
#include "sre/trial_data.h"

namespace sre::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sre_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run_cli(std::vector<std::string> args) {
    std::vector<const char *> argv{"sre-eval"};
    for (const std::string &a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }
  std::string path(const std::string &name) const { return (dir_ / name).string(); }
  void write(const std::string &name, const std::string &text) { std::ofstream(dir_ / name) << text; }

  void write_worked_example() {
    std::string h = std::string(kKeyHeader) + "\n";
    write("key.tsv", h + "t0\ta\ttarget\tfemale\tY\tY\tNA\t1\taudio\n" +
                         "t1\tb\ttarget\tfemale\tY\tY\tNA\t1\taudio\n" +
                         "n0\tc\tnontarget\tfemale\tY\tY\tNA\t1\taudio\n" +
                         "n1\td\tnontarget\tfemale\tY\tY\tNA\t1\taudio\n");
    write("scores.tsv", std::string(kScoreHeader) + "\n" +
                            "t0\ta\t5.0\nt1\tb\t3.5\nn0\tc\t4.0\nn1\td\t0.0\n");
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, ValidateExitCodes) {
  write_worked_example();
  EXPECT_EQ(run_cli({"validate", "--key", path("key.tsv"), "--scores", path("scores.tsv"),
                     "--out-dir", path("v")}),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "v" / "validation.json"));
  EXPECT_TRUE(fs::exists(dir_ / "v" / "manifest.json"));

  write("missing.tsv", std::string(kScoreHeader) + "\nt0\ta\t5.0\nt1\tb\t3.5\nn0\tc\t4.0\n");
  EXPECT_EQ(run_cli({"validate", "--key", path("key.tsv"), "--scores", path("missing.tsv"),
                     "--out-dir", path("v")}),
            kExitEvaluation);
  EXPECT_NE(out_.str().find("\"count\": 1"), std::string::npos) << out_.str();

  write("bad_key.tsv", "not a header\n");
  EXPECT_EQ(run_cli({"validate", "--key", path("bad_key.tsv"), "--scores", path("scores.tsv"),
                     "--out-dir", path("v")}),
            kExitInput);
  EXPECT_NE(err_.str().find("1"), std::string::npos);
  EXPECT_EQ(run_cli({"validate", "--key", path("nope.tsv"), "--scores", path("scores.tsv")}),
            kExitInput);
  EXPECT_EQ(run_cli({"no-such-command"}), kExitInput);
}

TEST_F(CliTest, ScoreWorkedExample) {
  write_worked_example();
  ASSERT_EQ(run_cli({"score", "--key", path("key.tsv"), "--scores", path("scores.tsv"),
                     "--schema", "none", "--out-dir", path("s")}),
            kExitOk)
      << err_.str();
  std::string report = read_file(dir_ / "s" / "cost_report.json");
  EXPECT_NE(report.find("\"actual_c_primary\": 5"), std::string::npos) << report;
  EXPECT_NE(report.find("\"min_c_primary\": 0.5"), std::string::npos) << report;
  EXPECT_TRUE(fs::exists(dir_ / "s" / "cost_report.tsv"));
}

TEST_F(CliTest, EmptyCellsExitOne) {
  std::string h = std::string(kKeyHeader) + "\n";
  write("key.tsv", h + "t0\ta\ttarget\tfemale\tY\tY\tNA\t1\taudio\n");
  write("scores.tsv", std::string(kScoreHeader) + "\nt0\ta\t1.0\n");
  EXPECT_EQ(run_cli({"score", "--key", path("key.tsv"), "--scores", path("scores.tsv"),
                     "--out-dir", path("s")}),
            kExitEvaluation);
}

TEST_F(CliTest, BootstrapNeedsSeedAndIsRepeatable) {
  write("cfg.json", "{\"n_speakers\": 8, \"male_fraction\": 0.5}\n");
  ASSERT_EQ(run_cli({"synth", "--config", path("cfg.json"), "--seed", "1", "--out-dir", path("y")}),
            kExitOk);
  std::vector<std::string> args{"bootstrap", "--key", path("y/key_audio.tsv"), "--scores",
                                path("y/scores_audio.tsv"), "--replicates", "50"};
  auto with_dir = [&](const std::string &d) {
    auto a = args;
    a.insert(a.end(), {"--seed", "7", "--out-dir", path(d)});
    return a;
  };
  EXPECT_EQ(run_cli(args), kExitInput);
  ASSERT_EQ(run_cli(with_dir("b1")), kExitOk) << err_.str();
  ASSERT_EQ(run_cli(with_dir("b2")), kExitOk) << err_.str();
  EXPECT_EQ(read_file(dir_ / "b1" / "bootstrap.json"), read_file(dir_ / "b2" / "bootstrap.json"));
}

TEST_F(CliTest, SynthIsByteIdentical) {
  write("cfg.json", "{\"n_speakers\": 6, \"male_fraction\": 0.5}\n");
  for (const char *d : {"y1", "y2"})
    ASSERT_EQ(run_cli({"synth", "--config", path("cfg.json"), "--seed", "3", "--out-dir", path(d)}),
              kExitOk)
        << err_.str();
  std::size_t compared = 0;
  for (const auto &entry : fs::directory_iterator(dir_ / "y1")) {
    std::string name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    EXPECT_EQ(read_file(entry.path()), read_file(dir_ / "y2" / name)) << name;
    ++compared;
  }
  EXPECT_GE(compared, 10u);
  write("bad.json", "{\"n_speakers\": \"many\"}");
  EXPECT_EQ(run_cli({"synth", "--config", path("bad.json"), "--seed", "3", "--out-dir", path("y3")}),
            kExitInput);
}

}  // namespace
}  // namespace sre::cli
