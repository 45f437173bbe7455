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

#include <algorithm>
#include <random>

#include "ecodiag/factors.hpp"
#include "ecodiag/samples.hpp"

namespace ecodiag {
namespace {

constexpr std::string_view kLaptopRow = "laptop,156.0,2.5,30,0.30,sample-base,2019,public_base,true,false";

std::string factor_file(std::string_view rows, std::string_view gwp = "", std::string_view grid = "0.119") {
  return "[factors]\n" + std::string(rows) + "\n[gwp]\n" + std::string(gwp) + "\n[grid]\ngrid_factor_kgco2e_per_kwh," +
         std::string(grid) + "\n";
}

SourceMeta source(std::string name, int year, SourceKind kind, bool neutral, bool peer) {
  return {std::move(name), year, kind, neutral, peer};
}

EmissionFactor factor(Category c, SourceMeta s, double fab = 100.0) {
  EmissionFactor f;
  f.category = c;
  f.fab_transport_kgco2e = fab;
  f.eol_kgco2e = 1.0;
  f.typical_power_w = 10.0;
  f.rel_uncertainty = 0.3;
  f.source = std::move(s);
  return f;
}

ParseError parse_error_of(const std::string& content) {
  try {
    load_factor_db(content);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ParseError";
  return ParseError("none", 0);
}

TEST(LoadFactorDbTest, SingleLaptopRowFieldByField) {
  const auto db = load_factor_db(factor_file(kLaptopRow));
  ASSERT_EQ(db.factors.size(), 1u);
  const auto& f = db.factors[0];
  EXPECT_EQ(f.category, Category::laptop);
  EXPECT_EQ(f.fab_transport_kgco2e, 156.0);
  EXPECT_EQ(f.eol_kgco2e, 2.5);
  EXPECT_EQ(f.typical_power_w, 30.0);
  EXPECT_EQ(f.rel_uncertainty, 0.30);
  EXPECT_EQ(f.source.name, "sample-base");
  EXPECT_EQ(f.source.year, 2019);
  EXPECT_EQ(f.source.kind, SourceKind::public_base);
  EXPECT_TRUE(f.source.commissioner_neutral);
  EXPECT_FALSE(f.source.peer_reviewed);
  EXPECT_EQ(db.default_grid_factor_kgco2e_per_kwh, 0.119);
}

TEST(LoadFactorDbTest, EmptySectionsKeepGridFactor) {
  const auto db = load_factor_db("[factors]\n[gwp]\n[grid]\ngrid_factor_kgco2e_per_kwh,0.119\n");
  EXPECT_TRUE(db.factors.empty());
  EXPECT_TRUE(db.gwp_table.empty());
  EXPECT_EQ(db.default_grid_factor_kgco2e_per_kwh, 0.119);
}

TEST(LoadFactorDbTest, DefaultGridFactorWhenSectionMissing) {
  EXPECT_EQ(kDefaultGridFactor, 0.119);
  EXPECT_EQ(load_factor_db("# nothing\n").default_grid_factor_kgco2e_per_kwh, 0.119);
}

TEST(LoadFactorDbTest, UnknownCategoryNamesToken) {
  const auto e = parse_error_of(factor_file("mainframe,1,1,1,0.1,s,2019,public_base,true,false"));
  EXPECT_NE(std::string(e.what()).find("mainframe"), std::string::npos);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 1u);
}

TEST(LoadFactorDbTest, NegativeValueReportsColumn) {
  const auto e = parse_error_of(factor_file("laptop,156,-2.5,30,0.3,s,2019,public_base,true,false"));
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 12u);
  EXPECT_NE(std::string(e.what()).find("eol_kgco2e"), std::string::npos);
}

TEST(LoadFactorDbTest, DuplicateGwpFluid) {
  const auto e = parse_error_of(factor_file("", "R410A,2088\nR410A,2000"));
  EXPECT_NE(std::string(e.what()).find("duplicate GWP fluid"), std::string::npos);
  EXPECT_EQ(e.line(), 5u);
}

TEST(LoadFactorDbTest, OtherSyntaxErrors) {
  EXPECT_THROW(load_factor_db("laptop,1,1,1,0.1,s,2019,public_base,true,false\n"), ParseError);  // no section
  EXPECT_THROW(load_factor_db("[other]\n"), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("laptop,1,1,1,0.1,s,2019,public_base,true")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("laptop,1,1,1,1.5,s,2019,public_base,true,false")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("laptop,1,1,1,0.1,,2019,public_base,true,false")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("laptop,1,1,1,0.1,s,1985,public_base,true,false")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("laptop,1,1,1,0.1,s,2019,blog,true,false")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("laptop,1,1,1,0.1,s,2019,public_base,yes,false")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("laptop,1,x,1,0.1,s,2019,public_base,true,false")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("", "R32,0")), ParseError);
  EXPECT_THROW(load_factor_db(factor_file("", "", "0")), ParseError);
  EXPECT_THROW(load_factor_db("[grid]\ngrid_factor_kgco2e_per_kwh,0.1\ngrid_factor_kgco2e_per_kwh,0.2\n"), ParseError);
}

TEST(LoadFactorDbTest, SampleFileLoads) {
  const auto db = load_factor_db(samples::kFactorFile);
  EXPECT_EQ(db.factors.size(), 26u);
  EXPECT_EQ(db.gwp_table.size(), 5u);
  EXPECT_EQ(find_gwp(db.gwp_table, "R410A"), 2088.0);
  EXPECT_EQ(db.default_grid_factor_kgco2e_per_kwh, 0.119);
}

TEST(ReliabilityRankTest, Examples) {
  EXPECT_EQ(reliability_rank(source("a", 2019, SourceKind::public_base, true, true)), 6);
  EXPECT_EQ(reliability_rank(source("a", 2019, SourceKind::vendor_fiche, false, false)), 0);
  EXPECT_EQ(reliability_rank(source("a", 2019, SourceKind::internal_measure, true, true)), 7);
  EXPECT_EQ(reliability_rank(source("a", 2019, SourceKind::internal_measure, false, false)), 1);
}

TEST(ReliabilityRankTest, TieBreaks) {
  const auto recent = source("x", 2019, SourceKind::public_base, true, false);
  const auto older = source("x", 2015, SourceKind::public_base, true, false);
  EXPECT_TRUE(compare_reliability(recent, older) > 0);
  EXPECT_TRUE(compare_reliability(source("a", 2019, SourceKind::public_base, true, false),
                                  source("b", 2019, SourceKind::public_base, true, false)) > 0);
}

TEST(ReliabilityRankTest, TotalOrderOverAllCombinations) {
  std::vector<SourceMeta> all;
  for (bool neutral : {false, true})
    for (bool peer : {false, true})
      for (auto kind : {SourceKind::public_base, SourceKind::vendor_fiche, SourceKind::peer_reviewed,
                        SourceKind::internal_measure})
        for (int year : {2015, 2019})
          for (const char* name : {"a", "b"}) all.push_back(source(name, year, kind, neutral, peer));
  for (const auto& a : all)
    for (const auto& b : all) {
      const auto ab = compare_reliability(a, b);
      const auto ba = compare_reliability(b, a);
      EXPECT_EQ(ab == 0, a == b);
      EXPECT_EQ(ab < 0, ba > 0);
      for (const auto& c : all)
        if (ab > 0 && compare_reliability(b, c) > 0) {
          EXPECT_TRUE(compare_reliability(a, c) > 0);
        }
    }
}

TEST(MergeFactorsTest, HighestRankWins) {
  FactorDatabase db;
  db.factors = {factor(Category::laptop, source("vendor", 2020, SourceKind::vendor_fiche, false, false), 190),
                factor(Category::laptop, source("peer", 2015, SourceKind::public_base, true, true), 156)};
  const auto merged = merge_factors(db);
  ASSERT_EQ(merged.factors.size(), 1u);
  EXPECT_EQ(merged.factors[0].source.name, "peer");
}

TEST(MergeFactorsTest, MoreRecentYearWinsOnEqualRank) {
  FactorDatabase db;
  db.factors = {factor(Category::server, source("old", 2015, SourceKind::public_base, true, false)),
                factor(Category::server, source("new", 2019, SourceKind::public_base, true, false))};
  EXPECT_EQ(merge_factors(db).factors[0].source.name, "new");
}

TEST(MergeFactorsTest, LexicographicNameBreaksRemainingTie) {
  FactorDatabase db;
  db.factors = {factor(Category::server, source("b", 2019, SourceKind::public_base, true, false)),
                factor(Category::server, source("a", 2019, SourceKind::public_base, true, false))};
  EXPECT_EQ(merge_factors(db).factors[0].source.name, "a");
}

TEST(MergeFactorsTest, OnePerCategoryIsUnchangedUpToOrder) {
  FactorDatabase db;
  db.factors = {factor(Category::desktop, source("s", 2019, SourceKind::public_base, true, false)),
                factor(Category::server, source("s", 2019, SourceKind::public_base, true, false))};
  db.gwp_table = {{"R32", 675}};
  EXPECT_EQ(merge_factors(db), db);
}

TEST(MergeFactorsTest, IdempotentAndPermutationInvariant) {
  const auto db = load_factor_db(samples::kFactorFile);
  const auto merged = merge_factors(db);
  EXPECT_EQ(merge_factors(merged), merged);
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto shuffled = db;
    std::shuffle(shuffled.factors.begin(), shuffled.factors.end(), rng);
    EXPECT_EQ(merge_factors(shuffled), merged);
  }
}

TEST(MergeFactorsTest, SampleWinners) {
  const auto merged = merge_factors(load_factor_db(samples::kFactorFile));
  EXPECT_EQ(lookup_factor(merged, Category::laptop).source.name, "sample-public-base");
  EXPECT_EQ(lookup_factor(merged, Category::network_switch).source.name, "sample-pdu-campaign");
  EXPECT_EQ(merged.factors.size(), 24u);
}

TEST(LookupFactorTest, PresentAbsentAndMergeConsistent) {
  FactorDatabase db;
  db.factors = {factor(Category::laptop, source("vendor", 2020, SourceKind::vendor_fiche, false, false), 190),
                factor(Category::laptop, source("peer", 2015, SourceKind::public_base, true, true), 156)};
  EXPECT_EQ(lookup_factor(db, Category::laptop).source.name, "peer");
  const auto merged = merge_factors(db);
  EXPECT_EQ(lookup_factor(merged, Category::laptop), merged.factors[0]);
  try {
    lookup_factor(merged, Category::tablet);
    FAIL();
  } catch (const MissingFactorError& e) {
    EXPECT_EQ(e.category(), "tablet");
    EXPECT_STREQ(e.what(), "missing factor: tablet");
  }
}

TEST(RenderFactorFileTest, RoundTripOnMergedDatabases) {
  const auto merged = merge_factors(load_factor_db(samples::kFactorFile));
  EXPECT_EQ(load_factor_db(render_factor_file(merged)), merged);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> value(0.0, 5000.0);
  for (int trial = 0; trial < 100; ++trial) {
    FactorDatabase db;
    for (const auto& ci : taxonomy()) {
      auto f = factor(ci.id, source("src-" + std::to_string(trial), 1990 + trial, SourceKind::peer_reviewed, true,
                                    trial % 2 == 0),
                      value(rng));
      f.eol_kgco2e = value(rng) / 100;
      f.typical_power_w = value(rng) / 3;
      f.rel_uncertainty = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      db.factors.push_back(f);
    }
    db.gwp_table = {{"R410A", value(rng) + 1}, {"R32", value(rng) + 1}};
    db.default_grid_factor_kgco2e_per_kwh = value(rng) / 1000 + 1e-3;
    const auto merged = merge_factors(db);
    EXPECT_EQ(load_factor_db(render_factor_file(merged)), merged);
  }
}

TEST(RenderFactorFileTest, RejectsUnrepresentableNames) {
  FactorDatabase db;
  db.factors = {factor(Category::laptop, source("a,b", 2019, SourceKind::public_base, true, false))};
  EXPECT_THROW(render_factor_file(db), InvariantError);
}

}  // namespace
}  // namespace ecodiag
