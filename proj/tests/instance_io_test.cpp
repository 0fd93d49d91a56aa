#include "adslate/instance_io.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "adslate/generator.hpp"

namespace adslate {
namespace {

const std::filesystem::path kFixtures = ADSLATE_FIXTURES;

std::string ErrorOf(std::string_view text) {
  try {
    ParseDocument(text, "doc.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseDocumentTest, MinimalInstanceUsesDefaults) {
  const Document doc = ParseDocument(R"({
    "positions": 1, "min_bid": 0.1,
    "bidders": [{"id": "a", "bid": 2.0}],
    "ctr": [[0.5]]
  })");
  const auto& instance = std::get<QueryInstance>(doc);
  ASSERT_EQ(instance.size(), 1u);
  EXPECT_EQ(instance.positions, 1);
  EXPECT_EQ(instance.min_bid, 0.1);
  EXPECT_EQ(instance.bidders[0].quality, 1.0);
  EXPECT_EQ(instance.bidders[0].utility_factor, 1.0);
  EXPECT_EQ(instance.bidders[0].hybrid_weight, 0.0);
  EXPECT_TRUE(instance.bidders[0].excludable);
  EXPECT_EQ(instance.Ctr(0, 1), 0.5);
}

TEST(ParseDocumentTest, CtrRowsFollowTheListedBidders) {
  const Document doc = ParseDocument(R"({
    "positions": 1, "min_bid": 0.1,
    "bidders": [{"id": "low", "bid": 1.0}, {"id": "high", "bid": 3.0}],
    "ctr": [[0.1], [0.4]]
  })");
  const auto& instance = std::get<QueryInstance>(doc);
  EXPECT_EQ(instance.bidders[0].id, "high");
  EXPECT_EQ(instance.Ctr(0, 1), 0.4);
  EXPECT_EQ(instance.Ctr(1, 1), 0.1);
}

TEST(ParseDocumentTest, MaskIsInRankOrder) {
  const Document doc = ParseDocument(R"({
    "positions": 1, "min_bid": 0.1, "mask": "10",
    "bidders": [{"id": "low", "bid": 1.0}, {"id": "high", "bid": 3.0}],
    "ctr": [[0.1], [0.4]]
  })");
  const auto& instance = std::get<QueryInstance>(doc);
  EXPECT_TRUE(instance.bidders[0].excludable);
  EXPECT_FALSE(instance.bidders[1].excludable);
}

TEST(ParseDocumentTest, OutOfRangeCtrNamesTheRange) {
  const std::string message = ErrorOf(R"({
    "positions": 1, "min_bid": 0.1,
    "bidders": [{"id": "a", "bid": 2.0}],
    "ctr": [[1.5]]
  })");
  EXPECT_NE(message.find("doc.json"), std::string::npos) << message;
  EXPECT_NE(message.find("[0,1]"), std::string::npos) << message;
}

TEST(ParseDocumentTest, FieldErrorsCarryAPointer) {
  EXPECT_NE(ErrorOf(R"({"positions": 1, "min_bid": 0.1, "ctr": [[0.5]]})").find("/bidders"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"positions": 1, "min_bid": 0.1,
                        "bidders": [{"id": "a", "bid": "x"}], "ctr": [[0.5]]})")
                .find("/bidders/0/bid: expected a number"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"positions": 1.5, "min_bid": 0.1,
                        "bidders": [{"id": "a", "bid": 1}], "ctr": [[0.5]]})")
                .find("/positions"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"positions": 1, "min_bid": 0.1, "mask": "1x",
                        "bidders": [{"id": "a", "bid": 1}], "ctr": [[0.5]]})")
                .find("/mask"),
            std::string::npos);
  EXPECT_NE(ErrorOf("[1, 2]").find("top-level object"), std::string::npos);
}

TEST(ParseDocumentTest, SyntaxErrorsCarryLineAndColumn) {
  const std::string message = ErrorOf("{\n  \"positions\": 1,\n  oops\n}");
  EXPECT_EQ(message.rfind("doc.json:3:", 0), 0u) << message;
  EXPECT_NE(message.find("syntax error"), std::string::npos);
}

TEST(ParseDocumentTest, InvalidInstancesAreRejected) {
  // Minimum bid above the lowest bid.
  EXPECT_FALSE(ErrorOf(R"({"positions": 1, "min_bid": 3,
                           "bidders": [{"id": "a", "bid": 2}], "ctr": [[0.5]]})")
                   .empty());
  // CTR column count disagrees with positions.
  EXPECT_FALSE(ErrorOf(R"({"positions": 2, "min_bid": 0.1,
                           "bidders": [{"id": "a", "bid": 2}], "ctr": [[0.5]]})")
                   .empty());
}

TEST(LoadDocumentTest, ColGenFixture) {
  const Document doc = LoadDocument(kFixtures / "three_queries.json");
  const auto& problem = std::get<ColGenProblem>(doc);
  EXPECT_EQ(problem.query_count(), 3u);
  EXPECT_EQ(problem.budget_count(), 3u);
  EXPECT_EQ(problem.objective, ColumnObjective::kRevenue);
  EXPECT_TRUE(std::isinf(problem.budgets[2].amount));
  // "hooli" has no budget; "acme" is slot 0 wherever it appears.
  EXPECT_EQ(problem.queries[0].budget_slot, (std::vector<int>{0, 1, -1}));
  EXPECT_EQ(problem.queries[2].volume, 15.0);
}

TEST(LoadDocumentTest, MissingFile) {
  EXPECT_THROW(LoadDocument(kFixtures / "no_such_file.json"), ParseError);
}

TEST(SerializeTest, InstancesRoundTrip) {
  InstanceGenerator gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    QueryInstance instance = gen.Next(GeneratorConfig{});
    const Mask mask = gen.NextMask(instance.size());
    for (std::size_t r = 0; r < instance.size(); ++r) {
      instance.bidders[r].excludable = mask.excludable[r];
    }
    const Document back = ParseDocument(SerializeInstance(instance));
    EXPECT_EQ(std::get<QueryInstance>(back), instance);
  }
}

TEST(SerializeTest, ProblemsRoundTrip) {
  const auto original = std::get<ColGenProblem>(LoadDocument(kFixtures / "three_queries.json"));
  const auto back = std::get<ColGenProblem>(ParseDocument(SerializeProblem(original)));
  ASSERT_EQ(back.query_count(), original.query_count());
  for (std::size_t q = 0; q < back.query_count(); ++q) {
    EXPECT_EQ(back.queries[q].instance, original.queries[q].instance);
    EXPECT_EQ(back.queries[q].volume, original.queries[q].volume);
    EXPECT_EQ(back.queries[q].budget_slot, original.queries[q].budget_slot);
  }
  ASSERT_EQ(back.budget_count(), original.budget_count());
  for (std::size_t b = 0; b < back.budget_count(); ++b) {
    EXPECT_EQ(back.budgets[b].bidder_id, original.budgets[b].bidder_id);
    EXPECT_EQ(back.budgets[b].amount, original.budgets[b].amount);
  }
  EXPECT_EQ(back.objective, original.objective);
  EXPECT_EQ(back.unbudgeted_excludable, original.unbudgeted_excludable);
}

}  // namespace
}  // namespace adslate
