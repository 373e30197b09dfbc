#include <cyclekit/time_series.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

namespace ck = cyclekit;

namespace {

ck::TimeSeries make_series(std::vector<double> values, double start = 2000.0, double step = 1.0) {
  ck::TimeSeries s;
  s.start_time = start;
  s.step = step;
  s.values = std::move(values);
  return s;
}

TEST(TimeSeriesTest, TimeAxisAccessors) {
  ck::TimeSeries s = make_series({1.0, 2.0, 3.0}, 1990.0, 0.25);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s.time_at(0), 1990.0);
  EXPECT_DOUBLE_EQ(s.time_at(2), 1990.5);
  EXPECT_DOUBLE_EQ(s.end_time(), 1990.5);
}

TEST(TimeSeriesTest, ValidateRejectsShortSeries) {
  ck::TimeSeries s = make_series({1.0});
  EXPECT_THROW(ck::validate(s), ck::size_error);
}

TEST(TimeSeriesTest, ValidateRejectsNonPositiveStep) {
  ck::TimeSeries s = make_series({1.0, 2.0});
  s.step = 0.0;
  EXPECT_THROW(ck::validate(s), ck::spacing_error);
  s.step = -1.0;
  EXPECT_THROW(ck::validate(s), ck::spacing_error);
}

TEST(TimeSeriesTest, ValidateRejectsNonFiniteValuesNamingIndex) {
  ck::TimeSeries s = make_series({1.0, std::numeric_limits<double>::quiet_NaN(), 3.0});
  try {
    ck::validate(s);
    FAIL() << "expected domain_error";
  } catch (const ck::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos);
  }
}

TEST(GrowthTest, AbsoluteDifferences) {
  ck::TimeSeries s = make_series({10.0, 12.0, 11.0, 15.0}, 2000.0, 1.0);
  ck::GrowthSeries g = ck::growth(s, ck::GrowthMode::absolute);
  ASSERT_EQ(g.values.size(), 3u);
  EXPECT_DOUBLE_EQ(g.values[0], 2.0);
  EXPECT_DOUBLE_EQ(g.values[1], -1.0);
  EXPECT_DOUBLE_EQ(g.values[2], 4.0);
  EXPECT_DOUBLE_EQ(g.start_time, 2001.0);
  EXPECT_EQ(g.mode, ck::GrowthMode::absolute);
}

TEST(GrowthTest, PercentGrowth) {
  ck::TimeSeries s = make_series({100.0, 102.0, 104.04});
  ck::GrowthSeries g = ck::growth(s, ck::GrowthMode::percent);
  ASSERT_EQ(g.values.size(), 2u);
  EXPECT_NEAR(g.values[0], 2.0, 1e-12);
  EXPECT_NEAR(g.values[1], 2.0, 1e-12);
}

TEST(GrowthTest, PercentRequiresPositiveLevelsNamingIndex) {
  ck::TimeSeries s = make_series({100.0, 0.0, 104.0});
  try {
    ck::growth(s, ck::GrowthMode::percent);
    FAIL() << "expected domain_error";
  } catch (const ck::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos);
  }
  // Absolute mode accepts the same data.
  EXPECT_NO_THROW(ck::growth(s, ck::GrowthMode::absolute));
}

TEST(GrowthTest, GrowthModeNames) {
  EXPECT_STREQ(ck::to_string(ck::GrowthMode::absolute), "absolute");
  EXPECT_STREQ(ck::to_string(ck::GrowthMode::percent), "percent");
}

TEST(LogTransformTest, TakesLogsAndRewritesUnits) {
  ck::TimeSeries s = make_series({1.0, std::exp(1.0), std::exp(2.0)});
  s.units = "dollars";
  ck::TimeSeries out = ck::log_transform(s);
  EXPECT_NEAR(out.values[0], 0.0, 1e-15);
  EXPECT_NEAR(out.values[1], 1.0, 1e-15);
  EXPECT_NEAR(out.values[2], 2.0, 1e-15);
  EXPECT_EQ(out.units, "log(dollars)");
  EXPECT_DOUBLE_EQ(out.start_time, s.start_time);
}

TEST(LogTransformTest, RejectsNonPositive) {
  ck::TimeSeries s = make_series({1.0, -2.0});
  EXPECT_THROW(ck::log_transform(s), ck::domain_error);
}

TEST(CsvTest, ParsesHeaderedCsv) {
  std::istringstream in("year,gdp\n2000,100\n2001,103\n2002,105.5\n");
  ck::TimeSeries s = ck::load_csv(in);
  EXPECT_EQ(s.label, "gdp");
  EXPECT_DOUBLE_EQ(s.start_time, 2000.0);
  EXPECT_DOUBLE_EQ(s.step, 1.0);
  ASSERT_EQ(s.values.size(), 3u);
  EXPECT_DOUBLE_EQ(s.values[2], 105.5);
}

TEST(CsvTest, ParsesHeaderlessCsv) {
  std::istringstream in("1990.0,5\n1990.25,6\n1990.5,7\n");
  ck::TimeSeries s = ck::load_csv(in);
  EXPECT_TRUE(s.label.empty());
  EXPECT_DOUBLE_EQ(s.step, 0.25);
  EXPECT_DOUBLE_EQ(s.values[1], 6.0);
}

TEST(CsvTest, SkipsBlankLinesAndTrimsWhitespace) {
  std::istringstream in("\ntime,value\n 2000 , 1 \n\n2001,2\r\n2002,3\n\n");
  ck::TimeSeries s = ck::load_csv(in);
  ASSERT_EQ(s.values.size(), 3u);
  EXPECT_DOUBLE_EQ(s.values[0], 1.0);
  EXPECT_DOUBLE_EQ(s.values[2], 3.0);
}

TEST(CsvTest, CustomColumns) {
  std::istringstream in("id,year,na,gdp\n1,2000,x,10\n2,2001,x,20\n");
  ck::CsvSchema schema;
  schema.time_column = 1;
  schema.value_column = 3;
  ck::TimeSeries s = ck::load_csv(in, schema);
  EXPECT_EQ(s.label, "gdp");
  EXPECT_DOUBLE_EQ(s.values[1], 20.0);
}

TEST(CsvTest, LeadingPlusAndScientificNotationParse) {
  std::istringstream in("2000,+1.5e2\n2001,2e2\n");
  ck::TimeSeries s = ck::load_csv(in);
  EXPECT_DOUBLE_EQ(s.values[0], 150.0);
  EXPECT_DOUBLE_EQ(s.values[1], 200.0);
}

TEST(CsvTest, RejectsNonNumericCellWithPhysicalRowNumber) {
  std::istringstream in("time,value\n2000,1\n2001,oops\n");
  try {
    ck::load_csv(in);
    FAIL() << "expected parse_error";
  } catch (const ck::parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
  }
}

TEST(CsvTest, RejectsInfiniteValue) {
  std::istringstream in("2000,1\n2001,inf\n");
  EXPECT_THROW(ck::load_csv(in), ck::parse_error);
}

TEST(CsvTest, RejectsTooFewColumns) {
  std::istringstream in("2000,1\n2001\n");
  try {
    ck::load_csv(in);
    FAIL() << "expected parse_error";
  } catch (const ck::parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
}

TEST(CsvTest, RejectsFewerThanTwoRows) {
  std::istringstream one("time,value\n2000,1\n");
  EXPECT_THROW(ck::load_csv(one), ck::size_error);
  std::istringstream empty("");
  EXPECT_THROW(ck::load_csv(empty), ck::size_error);
}

TEST(CsvTest, RejectsNonIncreasingTimes) {
  std::istringstream in("2000,1\n2000,2\n2001,3\n");
  EXPECT_THROW(ck::load_csv(in), ck::spacing_error);
  std::istringstream in2("2000,1\n2001,2\n2000.5,3\n");
  EXPECT_THROW(ck::load_csv(in2), ck::spacing_error);
}

TEST(CsvTest, RejectsNonUniformSpacingNamingRow) {
  std::istringstream in("2000,1\n2001,2\n2003,3\n");
  try {
    ck::load_csv(in);
    FAIL() << "expected spacing_error";
  } catch (const ck::spacing_error& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
  }
}

TEST(CsvTest, AcceptsTinySpacingJitter) {
  // Relative jitter below 1e-9 must be tolerated (accumulated float noise).
  std::istringstream in("2000,1\n2000.25,2\n2000.50000000001,3\n");
  EXPECT_NO_THROW(ck::load_csv(in));
}

TEST(CsvTest, MissingFileIsIoError) {
  EXPECT_THROW(ck::load_csv_file("/nonexistent/definitely_missing.csv"), ck::io_error);
}

}  // namespace
