#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "synad/csv.h"
#include "synad/rng.h"
#include "test_util.h"

namespace synad {
namespace {

using nlohmann::json;
using testing::TempDir;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "synad");
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Normal rows near x = 0.2 with proto tcp/udp, anomalies near x = 0.8.
std::string role_csv(std::uint64_t seed, int rows, double center) {
  Rng rng(seed, 1);
  std::ostringstream out;
  out << "x,y,proto\n";
  for (int i = 0; i < rows; ++i)
    out << center + 0.05 * rng.normal() << "," << rng.uniform() << ","
        << (rng.uniform() < 0.5 ? "tcp" : "udp") << "\n";
  return out.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    normal_ = dir_.file("normal.csv");
    anomalies_ = dir_.file("anom.csv");
    testing::write_file(normal_, role_csv(1, 120, 0.2));
    testing::write_file(anomalies_, role_csv(2, 30, 0.8));
  }

  std::vector<std::string> train_args(const std::string& out) const {
    return {"train", "--normal", normal_, "--known-anom", anomalies_, "--hidden", "8",
            "--epochs", "5", "--seed", "7", "--out", out};
  }

  TempDir dir_;
  std::string normal_, anomalies_;
};

void expect_error_json(const Result& r, int code) {
  EXPECT_EQ(r.code, code) << r.err;
  const json doc = json::parse(r.err);
  EXPECT_EQ(doc["error"]["exit_code"], code);
  EXPECT_TRUE(doc["error"]["kind"].is_string());
  EXPECT_TRUE(doc["error"]["message"].is_string());
}

TEST_F(CliTest, HelpAndUsageErrors) {
  const Result help = run({"--help"});
  EXPECT_EQ(help.code, cli::kExitOk);
  EXPECT_NE(help.out.find("train"), std::string::npos);
  expect_error_json(run({}), cli::kExitUsage);
  expect_error_json(run({"train", "--no-such-flag", "1"}), cli::kExitUsage);
  expect_error_json(run({"train"}), cli::kExitUsage);
  expect_error_json(run({"theory"}), cli::kExitUsage);
}

TEST_F(CliTest, TrainWritesArtifacts) {
  const std::string out = dir_.file("run");
  const Result r = run(train_args(out));
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json summary = json::parse(r.out);
  EXPECT_EQ(summary["status"], "ok");
  EXPECT_TRUE(summary["final_val_risk"].is_number());
  for (const char* name :
       {"checkpoint.json", "normalizer.json", "schema.json", "history.csv", "manifest.json"})
    EXPECT_TRUE(std::filesystem::exists(dir_.file(std::string("run/") + name))) << name;
  const json manifest = json::parse(testing::read_file(dir_.file("run/manifest.json")));
  EXPECT_EQ(manifest["config"]["seed"], "7");
}

TEST_F(CliTest, TrainIsDeterministic) {
  ASSERT_EQ(run(train_args(dir_.file("a"))).code, cli::kExitOk);
  ASSERT_EQ(run(train_args(dir_.file("b"))).code, cli::kExitOk);
  EXPECT_EQ(testing::read_file(dir_.file("a/history.csv")),
            testing::read_file(dir_.file("b/history.csv")));
  // The checkpoints differ only in the recorded output directory.
  const json a = json::parse(testing::read_file(dir_.file("a/checkpoint.json")));
  const json b = json::parse(testing::read_file(dir_.file("b/checkpoint.json")));
  EXPECT_EQ(a["parameters"], b["parameters"]);
}

TEST_F(CliTest, TrainWithoutSyntheticAnomalies) {
  auto args = train_args(dir_.file("vc"));
  args.insert(args.end(), {"--synthetic", "multiplier=0"});
  const Result r = run(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_DOUBLE_EQ(json::parse(r.out)["s_tilde"].get<double>(), 1.0);
}

TEST_F(CliTest, DataErrors) {
  testing::write_file(dir_.file("ragged.csv"), "x,y,proto\n0.1,0.2\n");
  expect_error_json(run({"train", "--normal", dir_.file("ragged.csv"), "--out", dir_.file("r")}),
                    cli::kExitData);
  expect_error_json(run({"train", "--normal", dir_.file("missing.csv"), "--out", dir_.file("r")}),
                    cli::kExitData);
}

TEST_F(CliTest, DivergentTrainingExitsWithTrainingFailure) {
  auto args = train_args(dir_.file("div"));
  args.insert(args.end(), {"--loss", "hinge", "--mapping", "raw", "--lr", "1e12",
                           "--weight-decay", "0", "--momentum", "0.99"});
  const Result r = run(args);
  expect_error_json(r, cli::kExitTraining);
  EXPECT_TRUE(std::filesystem::exists(dir_.file("div/history.csv")));
}

TEST_F(CliTest, ConfigFileWithFlagOverrides) {
  testing::write_file(dir_.file("c.json"), json{{"epochs", 3}, {"seed", 2}}.dump());
  auto args = train_args(dir_.file("cfg"));
  args.insert(args.end(), {"--config", dir_.file("c.json")});
  const Result r = run(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json manifest = json::parse(testing::read_file(dir_.file("cfg/manifest.json")));
  EXPECT_EQ(manifest["config"]["epochs"], "5");  // flag beats config
  EXPECT_EQ(manifest["config"]["seed"], "7");

  testing::write_file(dir_.file("bad.json"), json{{"bogus", 1}}.dump());
  args.back() = dir_.file("bad.json");
  expect_error_json(run(args), cli::kExitUsage);
}

TEST_F(CliTest, EvaluatePerSubtypeWithOutOfDomainRows) {
  ASSERT_EQ(run(train_args(dir_.file("m"))).code, cli::kExitOk);
  std::ostringstream test;
  test << "x,y,proto,label,subtype\n";
  Rng rng(9, 0);
  for (int i = 0; i < 40; ++i)
    test << 0.2 + 0.05 * rng.normal() << "," << rng.uniform() << ",tcp,normal,normal\n";
  for (int i = 0; i < 10; ++i)
    test << 0.8 + 0.05 * rng.normal() << "," << rng.uniform() << ",udp,anomaly,dos\n";
  test << "50.0,0.5,tcp,anomaly,probe\n";
  test << "0.2,0.5,icmp,anomaly,probe\n";
  testing::write_file(dir_.file("test.csv"), test.str());

  const Result r = run({"evaluate", "--checkpoint", dir_.file("m/checkpoint.json"), "--test",
                        dir_.file("test.csv"), "--out", dir_.file("eval")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json report = json::parse(r.out);
  ASSERT_EQ(report["subtypes"].size(), 2u);
  EXPECT_EQ(report["subtypes"][0]["subtype"], "dos");
  EXPECT_EQ(report["subtypes"][1]["subtype"], "probe");
  EXPECT_DOUBLE_EQ(report["subtypes"][1]["aupr"].get<double>(), 1.0);
  EXPECT_NEAR(report["subtypes"][0]["random_baseline"].get<double>(), 10.0 / 50.0, 1e-12);
  EXPECT_EQ(report["out_of_domain_rows"], 2);

  std::istringstream scores(testing::read_file(dir_.file("eval/scores.csv")));
  const CsvTable t = read_csv(scores);
  ASSERT_EQ(t.rows.size(), 52u);
  EXPECT_DOUBLE_EQ(std::stod(t.rows[50][1]), 1.0);
  EXPECT_DOUBLE_EQ(std::stod(t.rows[51][1]), 1.0);
  EXPECT_TRUE(std::filesystem::exists(dir_.file("eval/pr_curve.csv")));
}

TEST_F(CliTest, EvaluateWithoutSubtypeColumn) {
  ASSERT_EQ(run(train_args(dir_.file("m"))).code, cli::kExitOk);
  testing::write_file(dir_.file("test.csv"),
                      "x,y,proto,label\n0.2,0.1,tcp,normal\n0.8,0.4,udp,anomaly\n"
                      "0.25,0.9,udp,normal\n");
  const Result r = run({"evaluate", "--checkpoint", dir_.file("m/checkpoint.json"), "--test",
                        dir_.file("test.csv"), "--out", dir_.file("eval")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json report = json::parse(r.out);
  ASSERT_EQ(report["subtypes"].size(), 1u);
  EXPECT_EQ(report["subtypes"][0]["subtype"], "all");
}

TEST_F(CliTest, SampleMatchesRealCount) {
  testing::write_file(dir_.file("s.json"), R"({
    "columns": [
      {"name": "x", "kind": "numeric", "role": "feature", "min": 0, "max": 10},
      {"name": "proto", "kind": "categorical", "categories": ["tcp", "udp", "icmp"],
       "role": "feature"},
      {"name": "label", "kind": "categorical", "categories": ["normal", "anomaly"],
       "role": "label"}],
    "label_convention": {"normal": ["normal"], "anomaly": ["anomaly"]}})");
  const std::vector<std::string> args = {"sample", "--schema", dir_.file("s.json"), "--count",
                                         "match-real", "--n", "70", "--n-minus", "30",
                                         "--seed", "1"};
  const Result a = run(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  std::istringstream in(a.out);
  const CsvTable t = read_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"x", "proto"}));
  EXPECT_EQ(t.rows.size(), 100u);
  for (const auto& row : t.rows)
    EXPECT_TRUE(row[1] == "tcp" || row[1] == "udp" || row[1] == "icmp");
  EXPECT_EQ(run(args).out, a.out);
  expect_error_json(run({"sample"}), cli::kExitUsage);
}

TEST_F(CliTest, PlanArchitecture) {
  const Result r =
      run({"theory", "plan-architecture", "--nmin", "10000", "--alpha", "1", "--d", "1",
           "--q", "0", "--m", "1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json plan = json::parse(r.out);
  for (const char* key : {"N", "tau", "L", "w", "v"}) EXPECT_TRUE(plan.contains(key)) << key;
  expect_error_json(run({"theory", "plan-architecture", "--nmin", "-1"}), cli::kExitUsage);
}

TEST_F(CliTest, ProbeNoise) {
  const Result r = run({"theory", "probe-noise", "--scenario", "example1", "--grid", "100000",
                        "--out", dir_.file("noise")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NEAR(json::parse(r.out)["q_hat"].get<double>(), 1.0, 0.15);
  EXPECT_TRUE(std::filesystem::exists(dir_.file("noise/noise_probe.csv")));
  EXPECT_TRUE(std::filesystem::exists(dir_.file("noise/manifest.json")));
  expect_error_json(run({"theory", "probe-noise", "--scenario", "nope"}), cli::kExitUsage);
}

TEST_F(CliTest, VerifyBoundSmall) {
  const Result r = run({"theory", "verify-bound", "--runs", "5", "--trained", "1", "--samples",
                        "100", "--epochs", "5", "--grid", "10000", "--out", dir_.file("b")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json summary = json::parse(r.out);
  EXPECT_EQ(summary["total"], 6);
  EXPECT_EQ(summary["holds"], 6);
}

}  // namespace
}  // namespace synad
