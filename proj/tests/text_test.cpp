// Copyright 2026 The EcoDiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "ecodiag/text.hpp"

namespace ecodiag::text {
namespace {

TEST(CsvTest, SplitsPlainAndQuotedFields) {
  const auto recs = read_csv("a,b,c\n\"x,y\",\"he said \"\"hi\"\"\",\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].fields, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(recs[1].fields, (std::vector<std::string>{"x,y", "he said \"hi\"", ""}));
  EXPECT_EQ(recs[1].line, 2u);
  EXPECT_EQ(recs[1].columns, (std::vector<std::size_t>{1, 7, 24}));
}

TEST(CsvTest, SkipsCommentsAndBlankLinesAndKeepsLineNumbers) {
  const auto recs = read_csv("# header comment\n\na,b\r\n\n# x\nc,d");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].line, 3u);
  EXPECT_EQ(recs[1].line, 6u);
  EXPECT_EQ(recs[1].fields.back(), "d");
}

TEST(CsvTest, QuotedNewlineSpansLines) {
  const auto recs = read_csv("\"multi\nline\",x\nnext,y\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].fields[0], "multi\nline");
  EXPECT_EQ(recs[1].line, 3u);
}

TEST(CsvTest, SemicolonDelimiter) {
  const auto recs = read_csv("a;b,c;d\n", {.delimiter = ';'});
  EXPECT_EQ(recs[0].fields, (std::vector<std::string>{"a", "b,c", "d"}));
}

TEST(CsvTest, MalformedQuotesReportPosition) {
  try {
    read_csv("ok,1\nx,\"open\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(read_csv("\"a\"b,c\n"), ParseError);
}

TEST(CsvTest, EscapeThenReadIsIdentity) {
  std::mt19937 rng(7);
  const std::string alphabet = "ab,\"\n;# =";
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> fields(std::uniform_int_distribution<int>(1, 5)(rng));
    for (auto& f : fields) {
      const int len = std::uniform_int_distribution<int>(1, 6)(rng);
      for (int i = 0; i < len; ++i) f += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
      f = "v" + f;  // a record never starts blank or with '#'
    }
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_escape(fields[i]);
    const auto recs = read_csv(line + "\n");
    ASSERT_EQ(recs.size(), 1u) << line;
    EXPECT_EQ(recs[0].fields, fields) << line;
  }
}

TEST(NumberTest, StrictParsing) {
  EXPECT_EQ(to_double("156.0"), 156.0);
  EXPECT_EQ(to_double(" 0.119 "), 0.119);
  EXPECT_EQ(to_double("+2"), 2.0);
  EXPECT_EQ(to_double("1e3"), 1000.0);
  EXPECT_FALSE(to_double(""));
  EXPECT_FALSE(to_double("1,5"));
  EXPECT_FALSE(to_double("12abc"));
  EXPECT_FALSE(to_double("nan"));
  EXPECT_FALSE(to_double("inf"));
  EXPECT_EQ(to_integer("2019"), 2019);
  EXPECT_FALSE(to_integer("2019.5"));
}

TEST(NumberTest, ShortestFormattingRoundTrips) {
  EXPECT_EQ(format_number(0.119), "0.119");
  EXPECT_EQ(format_number(1000.0), "1000");
  EXPECT_EQ(format_number(-0.0), "0");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::uniform_real_distribution<double>(0.0, 1e6)(rng);
    EXPECT_EQ(to_double(format_number(v)), v);
  }
}

TEST(NumberTest, FixedFormatting) {
  EXPECT_EQ(format_fixed(50.0), "50.0");
  EXPECT_EQ(format_fixed(19.1233), "19.1");
  EXPECT_EQ(format_fixed(-0.01), "0.0");
  EXPECT_EQ(format_fixed(6.395252, 2), "6.40");
}

TEST(KeyValueTest, ParsesSemicolonList) {
  const auto kv = parse_key_values("fluid=R410A; leak_kg=0.5;;note=a=b");
  ASSERT_EQ(kv.size(), 3u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"fluid", "R410A"}));
  EXPECT_EQ(kv[1].second, "0.5");
  EXPECT_EQ(kv[2].second, "a=b");
  EXPECT_TRUE(parse_key_values("").empty());
}

TEST(HashTest, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

}  // namespace
}  // namespace ecodiag::text
