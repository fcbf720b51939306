#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cdelta/csv.hpp"

using cdelta::ErrorKind;
using cdelta::MissingPolicy;

namespace {

class CsvFile : public ::testing::Test {
 protected:
  std::filesystem::path write(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "cdelta_csv_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << content;
    return path;
  }
};

cdelta::Error capture(auto&& fn) {
  try {
    fn();
  } catch (const cdelta::Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected cdelta::Error";
  return cdelta::Error(ErrorKind::kUsageError, "none");
}

}  // namespace

TEST_F(CsvFile, CleanColumnsWithHeader) {
  const auto p = write("clean.csv", "x,y\n2,21\n3,32\n4,43\n6,65\n9,98\n");
  const auto s = cdelta::ingest_csv(p, "x", "y");
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s.x()[4], 9.0);
  EXPECT_EQ(s.y()[0], 21.0);
  // Index selectors resolve to the same columns.
  const auto t = cdelta::ingest_csv(p, "1", "0");
  EXPECT_EQ(t.x()[0], 21.0);
}

TEST_F(CsvFile, HeaderlessFileUsesIndices) {
  const auto p = write("noheader.csv", "1.5,-2e3\n  2.5 , +3\n\n4,5\r\n");
  const auto table = cdelta::read_csv(p);
  EXPECT_TRUE(table.header.empty());
  const auto s = cdelta::table_to_sample(table, "0", "1");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.y()[0], -2000.0);
  EXPECT_EQ(s.y()[1], 3.0);
  EXPECT_EQ(s.x()[2], 4.0);
}

TEST_F(CsvFile, QuotedHeaderNames) {
  const auto p = write("quoted.csv", "\"group, a\",\"b\"\"\"\n1,2\n3,5\n");
  const auto s = cdelta::ingest_csv(p, "group, a", "b\"");
  EXPECT_EQ(s.size(), 2u);
}

TEST_F(CsvFile, ParseErrorCarriesCoordinates) {
  const auto p = write("bad.csv", "a,b\n1,2\nabc,3\n4,5\n");
  const auto e = capture([&] { cdelta::ingest_csv(p, "a", "b"); });
  EXPECT_EQ(e.kind(), ErrorKind::kParseError);
  EXPECT_EQ(e.context_value("row"), "3");
  EXPECT_EQ(e.context_value("column"), "0");
  EXPECT_EQ(e.context_value("value"), "abc");
}

TEST_F(CsvFile, MissingCellPolicies) {
  const auto p = write("missing.csv", "a,b\n1,2\n2,\n3,4\n4,8\n5,1\n");
  const auto e = capture([&] { cdelta::ingest_csv(p, "a", "b"); });
  EXPECT_EQ(e.kind(), ErrorKind::kParseError);
  EXPECT_EQ(e.context_value("row"), "3");

  const auto s = cdelta::ingest_csv(p, "a", "b", MissingPolicy::kDropPairwise);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.x()[1], 3.0);
}

TEST_F(CsvFile, DropPolicyCanEmptyTheSample) {
  const auto p = write("holes.csv", "a,b\n1,\n,2\n");
  EXPECT_EQ(capture([&] { cdelta::ingest_csv(p, "a", "b", MissingPolicy::kDropPairwise); }).kind(),
            ErrorKind::kEmptyAfterDrop);
}

TEST_F(CsvFile, NonFiniteCellsRejected) {
  const auto p = write("inf.csv", "a,b\n1,2\ninf,3\n");
  EXPECT_EQ(capture([&] { cdelta::ingest_csv(p, "a", "b"); }).kind(), ErrorKind::kNonFiniteValue);
}

TEST_F(CsvFile, MissingFileAndColumn) {
  EXPECT_EQ(capture([] { cdelta::ingest_csv("/nonexistent/nope.csv", "a", "b"); }).kind(),
            ErrorKind::kFileNotFound);
  const auto p = write("cols.csv", "a,b\n1,2\n");
  const auto e = capture([&] { cdelta::ingest_csv(p, "a", "zzz"); });
  EXPECT_EQ(e.kind(), ErrorKind::kColumnNotFound);
  EXPECT_EQ(e.context_value("column"), "zzz");
  EXPECT_EQ(capture([&] { cdelta::ingest_csv(p, "a", "7"); }).kind(), ErrorKind::kColumnNotFound);
}

TEST(CsvParse, NumberParsingIsStrict) {
  using cdelta::csv_detail::parse_number;
  EXPECT_EQ(parse_number("1e-3"), 1e-3);
  EXPECT_EQ(parse_number(" -0.5 "), -0.5);
  EXPECT_FALSE(parse_number("1,5"));
  EXPECT_FALSE(parse_number("12abc"));
  EXPECT_FALSE(parse_number(""));
}
