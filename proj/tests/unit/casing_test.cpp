#include <gtest/gtest.h>

#include "driftkit/casing.hpp"
#include "driftkit/errors.hpp"

namespace driftkit {
namespace {

TEST(CaseStyle, PatternExamples) {
  EXPECT_TRUE(match_case_style("a_b", CaseStyle::Snake));
  EXPECT_FALSE(match_case_style("x", CaseStyle::Snake));
  EXPECT_FALSE(match_case_style("x", CaseStyle::Camel));
  EXPECT_TRUE(match_case_style("sortedLst", CaseStyle::Camel));
}

TEST(CaseStyle, PatternEdges) {
  EXPECT_TRUE(match_case_style("parseURL", CaseStyle::Camel));
  EXPECT_FALSE(match_case_style("item2Count", CaseStyle::Camel));
  EXPECT_FALSE(match_case_style("_private", CaseStyle::Snake));
  EXPECT_FALSE(match_case_style("trailing_", CaseStyle::Snake));
  EXPECT_TRUE(match_case_style("MaxValue", CaseStyle::Pascal));
  EXPECT_TRUE(match_case_style("MAX_VALUE", CaseStyle::ScreamingSnake));
  EXPECT_FALSE(match_case_style("MAXVALUE", CaseStyle::ScreamingSnake));
  EXPECT_FALSE(match_case_style("MAX_VALUE", CaseStyle::Snake));
  EXPECT_FALSE(match_case_style("", CaseStyle::Camel));
}

TEST(CaseStyle, ParseNames) {
  EXPECT_EQ(parse_case_style("screaming_snake"), CaseStyle::ScreamingSnake);
  EXPECT_EQ(to_string(CaseStyle::Pascal), "pascal");
  EXPECT_FALSE(parse_case_style("kebab").has_value());
}

TEST(ConvertCase, Examples) {
  EXPECT_EQ(convert_case("sortedLst", CaseStyle::Camel, CaseStyle::Snake), "sorted_lst");
  EXPECT_EQ(convert_case("sorted_lst", CaseStyle::Snake, CaseStyle::Camel), "sortedLst");
  EXPECT_EQ(convert_case("maxValue", CaseStyle::Camel, CaseStyle::ScreamingSnake), "MAX_VALUE");
}

TEST(ConvertCase, AllTargets) {
  EXPECT_EQ(convert_case("maxValue", CaseStyle::Camel, CaseStyle::Pascal), "MaxValue");
  EXPECT_EQ(convert_case("max_value", CaseStyle::Snake, CaseStyle::Pascal), "MaxValue");
  EXPECT_EQ(convert_case("max_value", CaseStyle::Snake, CaseStyle::ScreamingSnake), "MAX_VALUE");
  EXPECT_EQ(convert_case("MAX_VALUE", CaseStyle::ScreamingSnake, CaseStyle::Camel), "maxValue");
  EXPECT_EQ(convert_case("MaxValue", CaseStyle::Pascal, CaseStyle::Snake), "max_value");
}

TEST(ConvertCase, AcronymRunIsOneSegment) {
  EXPECT_EQ(segment_identifier("parseURL", CaseStyle::Camel), (std::vector<std::string>{"parse", "URL"}));
  EXPECT_EQ(convert_case("parseURL", CaseStyle::Camel, CaseStyle::Snake), "parse_url");
  EXPECT_EQ(convert_case("parse_url", CaseStyle::Snake, CaseStyle::Camel), "parseUrl");
}

TEST(ConvertCase, DigitsStayWithPrecedingSegment) {
  EXPECT_EQ(segment_identifier("maxValue2", CaseStyle::Camel), (std::vector<std::string>{"max", "Value2"}));
  EXPECT_EQ(convert_case("item2_count", CaseStyle::Snake, CaseStyle::Camel), "item2Count");
  EXPECT_EQ(convert_case("maxValue2", CaseStyle::Camel, CaseStyle::Snake), "max_value2");
}

TEST(ConvertCase, RejectsNonMatchingSource) {
  EXPECT_THROW(convert_case("plain", CaseStyle::Camel, CaseStyle::Snake), StyleError);
  EXPECT_THROW(convert_case("a_b", CaseStyle::Camel, CaseStyle::Snake), StyleError);
  EXPECT_THROW(convert_case("Single", CaseStyle::Pascal, CaseStyle::Snake), StyleError);
}

}  // namespace
}  // namespace driftkit
