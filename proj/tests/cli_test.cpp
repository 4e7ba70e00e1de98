#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "rpurn/series.hpp"

namespace fs = std::filesystem;
using namespace rpurn;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rpurn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "rpurn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  BinarySeries series_at(const std::string& dir) const {
    std::ifstream in(dir_ / dir / "series.txt");
    return read_series(in);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kFixture =
    "{\"id\":\"1\",\"timestamp\":1,\"sentiment\":0.5}\n"
    "{\"id\":\"2\",\"timestamp\":2,\"sentiment\":0.2}\n"
    "{\"id\":\"3\",\"timestamp\":3,\"sentiment\":-0.4}\n"
    "{\"id\":\"4\",\"timestamp\":4,\"sentiment\":0.36}\n";

}  // namespace

TEST_F(Cli, IngestFixture) {
  write("posts.jsonl", kFixture);
  ASSERT_EQ(run({"ingest", "--input", path("posts.jsonl"), "--output-dir", path("out")}), 0) << err_.str();
  const auto s = series_at("out");
  EXPECT_EQ(s.values, (std::vector<Bit>{1, 0, 1}));
  EXPECT_EQ(s.discarded_count, 1u);
  EXPECT_EQ(s.source_count, 4u);
  EXPECT_EQ(read(dir_ / "out" / "descriptives.csv"),
            "subset,posts,pct_positive,source_count,discarded_count,subset_removed,malformed\n"
            "entire,3,66.67,4,1,0,0\n");
}

TEST_F(Cli, IngestErrors) {
  write("empty.jsonl", "");
  EXPECT_EQ(run({"ingest", "--input", path("empty.jsonl"), "--output-dir", path("out")}), 3);
  write("posts.jsonl", kFixture);
  EXPECT_EQ(run({"ingest", "--input", path("posts.jsonl"), "--subset", "bots_only", "--output-dir",
                 path("out")}),
            2);
  EXPECT_EQ(run({"ingest", "--input", path("missing.jsonl"), "--output-dir", path("out")}), 3);
  EXPECT_EQ(run({"ingest", "--input", path("posts.jsonl"), "--threshold", "-1"}), 2);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "series.txt"));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"simulate", "--length", "abc"}), 2);
  EXPECT_EQ(run({"simulate", "--length", "10", "--generator", "nope", "--output-dir", path("o")}), 2);
  EXPECT_EQ(run({"simulate", "--length", "10", "--generator", "complete", "--p0", "1.5",
                 "--output-dir", path("o")}),
            2);
  EXPECT_EQ(run({"--help"}), 0);
}

TEST_F(Cli, SimulateDeterministic) {
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(run({"simulate", "--generator", "complete", "--length", "5000", "--p0", "0.4", "--gamma",
                   "0.7", "--beta", "0.99", "--seed", "7", "--output-dir", path(out)}),
              0);
  }
  EXPECT_EQ(read(dir_ / "a" / "series.txt"), read(dir_ / "b" / "series.txt"));
  ASSERT_EQ(run({"simulate", "--generator", "no_fashion", "--length", "100", "--p0", "1", "--output-dir",
                 path("ones")}),
            0);
  const auto ones = series_at("ones");
  EXPECT_EQ(ones.values, std::vector<Bit>(100, 1));
  ASSERT_EQ(run({"simulate", "--generator", "rp_urn", "--length", "300", "--b0", "1,0", "--B0", "0,0",
                 "--alpha", "1", "--beta", "0.5", "--output-dir", path("urn")}),
            0);
  EXPECT_EQ(series_at("urn").values, std::vector<Bit>(300, 1));
}

// A fashion-only generator is absorbed: Bt is a bounded martingale that
// settles at 0 or 1, so long-run means pile up at the ends.
TEST_F(Cli, OnlyFashionGeneratorIsAbsorbed) {
  int near_edge = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    const std::string out = "s" + std::to_string(seed);
    ASSERT_EQ(run({"simulate", "--generator", "only_fashion", "--length", "100000", "--beta", "0.99",
                   "--seed", std::to_string(seed), "--output-dir", path(out)}),
              0);
    const auto s = series_at(out);
    double mean = 0.0;
    for (Bit b : s.values) mean += b;
    mean /= static_cast<double>(s.size());
    if (mean < 0.3 || mean > 0.7) ++near_edge;
  }
  EXPECT_GE(near_edge, 15);
}

TEST_F(Cli, FitEvalReportShapeAndDeterminism) {
  ASSERT_EQ(run({"simulate", "--generator", "complete", "--length", "6000", "--p0", "0.4", "--gamma",
                 "0.7", "--beta", "0.95", "--seed", "2", "--output-dir", path("sim")}),
            0);
  for (const char* out : {"r1", "r2"}) {
    ASSERT_EQ(run({"fit-eval", "--input", path("sim/series.txt"), "--slots", "6", "--output-dir",
                   path(out), "--write-predictions"}),
              0)
        << err_.str();
  }
  for (const char* f : {"ss_rel.csv", "mse.csv", "report.json", "params_evolution.csv", "predictions.csv"}) {
    EXPECT_EQ(read(dir_ / "r1" / f), read(dir_ / "r2" / f)) << f;
  }
  const auto doc = nlohmann::json::parse(read(dir_ / "r1" / "report.json"));
  EXPECT_EQ(doc["ss_rel_percent"].size(), 4u);
  EXPECT_TRUE(doc.contains("theoretical_value_percent"));
  ASSERT_EQ(doc["mse_table"].size(), 7u);
  for (const auto& row : doc["mse_table"]) EXPECT_EQ(row["mse"].size(), 4u);

  std::istringstream mse(read(dir_ / "r1" / "mse.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(mse, line)) ++rows;
  EXPECT_EQ(rows, 8);

  std::istringstream params(read(dir_ / "r1" / "params_evolution.csv"));
  rows = 0;
  while (std::getline(params, line)) ++rows;
  EXPECT_EQ(rows, 1 + 4 * 5);
}

TEST_F(Cli, FitEvalSizingAndSlots) {
  ASSERT_EQ(run({"simulate", "--generator", "no_fashion", "--length", "30", "--p0", "0.5", "--output-dir",
                 path("sim")}),
            0);
  EXPECT_EQ(run({"fit-eval", "--input", path("sim/series.txt"), "--output-dir", path("r")}), 2);
  EXPECT_EQ(run({"fit-eval", "--input", path("sim/series.txt"), "--slots", "1", "--output-dir", path("r")}), 2);
  EXPECT_EQ(run({"fit-eval", "--input", path("sim/series.txt"), "--slots", "16", "--output-dir", path("r")}), 3);
  EXPECT_NE(err_.str().find("32"), std::string::npos);
  EXPECT_EQ(run({"fit-eval", "--input", path("sim/series.txt"), "--slots", "2", "--models",
                 "polya,polya", "--output-dir", path("r")}),
            2);
  EXPECT_EQ(run({"fit-eval", "--input", path("sim/series.txt"), "--slots", "2", "--knots", "2",
                 "--output-dir", path("r")}),
            2);
}

TEST_F(Cli, FitEvalOnIidDataMatchesTheory) {
  ASSERT_EQ(run({"simulate", "--generator", "no_fashion", "--length", "100000", "--p0", "0.55", "--seed",
                 "4", "--output-dir", path("sim")}),
            0);
  ASSERT_EQ(run({"fit-eval", "--input", path("sim/series.txt"), "--slots", "10", "--models", "no_fashion",
                 "--knots", "3", "--output-dir", path("r")}),
            0);
  const auto doc = nlohmann::json::parse(read(dir_ / "r" / "report.json"));
  EXPECT_NEAR(doc["ss_rel_percent"]["no_fashion"].get<double>(),
              doc["theoretical_value_percent"].get<double>(), 1.0);
}

TEST_F(Cli, SmoothColumns) {
  std::string csv = "x,y\n";
  for (int i = 0; i < 200; ++i) csv += std::to_string(i) + ",0.25\n";
  write("curve.csv", csv);
  ASSERT_EQ(run({"smooth", "--input", path("curve.csv"), "--column", "y", "--knots", "3,5,10",
                 "--output-dir", path("s")}),
            0)
      << err_.str();
  std::istringstream in(read(dir_ / "s" / "smooth.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,k_3,k_5,k_10");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream fields(line);
    std::string f;
    std::getline(fields, f, ',');
    while (std::getline(fields, f, ',')) EXPECT_NEAR(std::stod(f), 0.25, 1e-9);
  }
  EXPECT_EQ(rows, 200);
  write("short.csv", "y\n1\n2\n3\n");
  EXPECT_EQ(run({"smooth", "--input", path("short.csv"), "--column", "y", "--knots", "3",
                 "--output-dir", path("s2")}),
            3);
}

TEST_F(Cli, ParamsEvolution) {
  ASSERT_EQ(run({"simulate", "--generator", "polya", "--length", "2000", "--a1", "2", "--a", "5",
                 "--output-dir", path("sim")}),
            0);
  ASSERT_EQ(run({"params-evolution", "--input", path("sim/series.txt"), "--slots", "5", "--models",
                 "polya,no_fashion", "--output-dir", path("p")}),
            0);
  std::istringstream in(read(dir_ / "p" / "params_evolution.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 1 + 2 * 4);
}
