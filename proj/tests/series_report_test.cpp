#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "rpurn/errors.hpp"
#include "rpurn/report.hpp"
#include "rpurn/series.hpp"

using namespace rpurn;

TEST(SlotScheme, Sizes) {
  SlotScheme s(3, 10);
  EXPECT_EQ(s.slot_len(), 3u);
  EXPECT_EQ(s.used_length(), 9u);
  EXPECT_EQ(s.begin(2), 6u);
  EXPECT_EQ(s.end(2), 9u);
  EXPECT_THROW(SlotScheme(1, 10), ConfigError);
  EXPECT_THROW(SlotScheme(11, 10), DataError);
}

TEST(SeriesFile, RoundTripIsExact) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BinarySeries s;
    s.values = oracle::random_bits(seed * 37, 0.5, seed);
    s.source_count = s.size() + seed;
    s.discarded_count = seed / 2;
    s.subset_removed = seed - seed / 2;
    s.subset = seed % 2 ? Subset::BotsOnly : Subset::Entire;
    if (seed % 3) s.threshold = 0.1 * static_cast<double>(seed) + 1.0 / 3.0;
    s.origin = "ingest";
    std::stringstream buf;
    write_series(buf, s);
    const BinarySeries back = read_series(buf);
    EXPECT_EQ(back.values, s.values);
    EXPECT_EQ(back.source_count, s.source_count);
    EXPECT_EQ(back.discarded_count, s.discarded_count);
    EXPECT_EQ(back.subset_removed, s.subset_removed);
    EXPECT_EQ(back.subset, s.subset);
    EXPECT_EQ(back.threshold, s.threshold);
    EXPECT_EQ(back.origin, s.origin);
  }
}

TEST(SeriesFile, Diagnostics) {
  std::istringstream not_series("hello\n1\n");
  EXPECT_THROW(read_series(not_series), DataError);
  std::istringstream empty("");
  EXPECT_THROW(read_series(empty), DataError);
  std::istringstream bad_bit("# rpurn-series v1\n1\n2\n");
  try {
    read_series(bad_bit);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::istringstream short_body("# rpurn-series v1\n# length=3\n1\n0\n");
  EXPECT_THROW(read_series(short_body), DataError);
}

TEST(Subset, Names) {
  EXPECT_EQ(parse_subset("bots_only"), Subset::BotsOnly);
  EXPECT_EQ(to_string(Subset::Entire), "entire");
  EXPECT_THROW(parse_subset("humans"), ConfigError);
}

namespace {

EvalReport sample_report() {
  EvalReport r;
  r.models = {ModelKind::Complete, ModelKind::Polya};
  r.ss_rel = {142.3487, std::numeric_limits<double>::infinity()};
  r.theoretical_value = 200.0;
  r.mse_table = {{std::nullopt, {0.25, 0.2}}, {3, {0.01, 0.02}}};
  r.slots = 2;
  r.length = 4;
  return r;
}

}  // namespace

TEST(Report, PercentFormatting) {
  EXPECT_EQ(format_percent(142.3487), "142.35");
  EXPECT_EQ(format_percent(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(mse_row_label({std::nullopt, {}}), "no smooth");
  EXPECT_EQ(mse_row_label({10, {}}), "k = 10");
}

TEST(Report, CsvLayout) {
  std::ostringstream ss, mse;
  write_ss_rel_csv(ss, sample_report());
  EXPECT_EQ(ss.str(), "metric,Complete RP,Standard Polya,Theoretical value\nSS_rel (%),142.35,inf,200.00\n");
  write_mse_csv(mse, sample_report());
  std::istringstream lines(mse.str());
  std::string header, row1, row2, extra;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  EXPECT_EQ(header, "smooth,Complete RP,Standard Polya");
  EXPECT_EQ(row1.rfind("no smooth,", 0), 0u);
  EXPECT_EQ(row2.rfind("k = 3,", 0), 0u);
  EXPECT_FALSE(std::getline(lines, extra));
}

TEST(Report, JsonCarriesInfinitySentinel) {
  std::ostringstream out;
  write_report_json(out, sample_report());
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["ss_rel_percent"]["polya"], "inf");
  EXPECT_NEAR(doc["ss_rel_percent"]["complete"].get<double>(), 142.3487, 1e-9);
  EXPECT_EQ(doc["theoretical_value_percent"].get<double>(), 200.0);
  EXPECT_TRUE(doc["mse_table"][0]["knots"].is_null());
  EXPECT_EQ(doc["mse_table"].size(), 2u);
}
