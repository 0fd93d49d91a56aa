#include "adslate/colgen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "adslate/generator.hpp"
#include "adslate/path_solver.hpp"
#include "test_util.hpp"

namespace adslate {
namespace {

using testing::S;
using testing::Uniform;

constexpr double kInf = std::numeric_limits<double>::infinity();

ColGenProblem OneQuery(std::vector<double> bids, int positions, double volume,
                       std::vector<Budget> budgets,
                       ColumnObjective objective = ColumnObjective::kRevenue) {
  std::vector<ColGenQuery> queries(1);
  queries[0].instance = Uniform(std::move(bids), positions, 0.5, 0.1);
  queries[0].volume = volume;
  return MakeColGenProblem(std::move(queries), std::move(budgets), objective);
}

TEST(SlateColumnTest, SingleBidder) {
  const ColGenProblem revenue = OneQuery({2.0}, 1, 1.0, {{"ad1", 1.0}});
  const Column column = SlateColumn(revenue, 0, S({1}));
  EXPECT_DOUBLE_EQ(column.cost[0], 0.05);
  EXPECT_DOUBLE_EQ(column.objective, 0.05);

  const ColGenProblem bid_value =
      OneQuery({2.0}, 1, 1.0, {{"ad1", 1.0}}, ColumnObjective::kBidValue);
  EXPECT_DOUBLE_EQ(SlateColumn(bid_value, 0, S({1})).objective, 2.0 * 0.5);
}

TEST(SlateColumnTest, TwoBudgetedBidders) {
  const ColGenProblem problem = OneQuery({2.0, 1.0}, 2, 1.0, {{"ad1", 1.0}, {"ad2", 1.0}});
  const Column column = SlateColumn(problem, 0, S({1, 2}));
  EXPECT_DOUBLE_EQ(column.cost[0], 0.5);
  EXPECT_DOUBLE_EQ(column.cost[1], 0.05);
  EXPECT_DOUBLE_EQ(column.objective, 0.55);
}

TEST(SlateColumnTest, UnbudgetedPaymentsCountAsRevenue) {
  const ColGenProblem problem = OneQuery({2.0, 1.0}, 2, 1.0, {{"ad2", 1.0}});
  const Column column = SlateColumn(problem, 0, S({1, 2}));
  ASSERT_EQ(column.cost.size(), 1u);
  EXPECT_DOUBLE_EQ(column.cost[0], 0.05);
  EXPECT_DOUBLE_EQ(column.objective, 0.55);
}

TEST(MakeColGenProblemTest, Validation) {
  EXPECT_THROW(OneQuery({2.0}, 1, 1.0, {{"nobody", 1.0}}), ValidationError);
  EXPECT_THROW(OneQuery({2.0}, 1, -1.0, {{"ad1", 1.0}}), ValidationError);
  EXPECT_THROW(OneQuery({2.0}, 1, kInf, {{"ad1", 1.0}}), ValidationError);
  EXPECT_THROW(OneQuery({2.0}, 1, 1.0, {{"ad1", -1.0}}), ValidationError);
  EXPECT_THROW(OneQuery({2.0}, 1, 1.0, {{"ad1", 1.0}, {"ad1", 2.0}}), ValidationError);
  EXPECT_NO_THROW(OneQuery({2.0}, 1, 1.0, {{"ad1", kInf}}));
}

TEST(SolveMasterLpTest, BudgetBindsFirst) {
  const ColGenProblem problem = OneQuery({2.0}, 1, 10.0, {{"ad1", 1.0}});
  Column column{0, S({1}), {0.2}, 0.2};
  const MasterSolution master = SolveMasterLp({column}, problem);
  EXPECT_NEAR(master.x[0], 5.0, 1e-12);
  EXPECT_NEAR(master.objective, 1.0, 1e-12);
  EXPECT_NEAR(master.budget_duals[0], 1.0, 1e-12);
  EXPECT_NEAR(master.volume_duals[0], 0.0, 1e-12);
}

TEST(SolveMasterLpTest, UnlimitedBudgetFillsVolume) {
  const ColGenProblem problem = OneQuery({2.0}, 1, 10.0, {{"ad1", kInf}});
  const Column worse{0, S({1}), {0.1}, 0.1};
  const Column better{0, S({1}), {0.2}, 0.2};
  const MasterSolution master = SolveMasterLp({worse, better}, problem);
  EXPECT_NEAR(master.x[1], 10.0, 1e-12);
  EXPECT_NEAR(master.x[0], 0.0, 1e-12);
  EXPECT_EQ(master.budget_duals[0], 0.0);
  EXPECT_NEAR(master.volume_duals[0], 0.2, 1e-12);
}

TEST(SolveMasterLpTest, DominantColumnTakesAllVolume) {
  const ColGenProblem problem = OneQuery({2.0}, 1, 10.0, {{"ad1", 100.0}});
  const Column first{0, S({1}), {0.2}, 0.5};
  const Column second{0, S({1}), {0.2}, 0.3};
  const MasterSolution master = SolveMasterLp({first, second}, problem);
  EXPECT_NEAR(master.x[0], 10.0, 1e-12);
  EXPECT_NEAR(master.x[1], 0.0, 1e-12);
}

TEST(SolveMasterLpTest, QueryWithVolumeNeedsAColumn) {
  const ColGenProblem problem = OneQuery({2.0}, 1, 10.0, {{"ad1", 1.0}});
  EXPECT_THROW(SolveMasterLp({}, problem), ValidationError);
}

TEST(PriceColumnsTest, ZeroDualsGiveThePlainOptimum) {
  InstanceGenerator gen(2);
  const ColGenProblem problem =
      gen.NextColGenProblem(3, 4, 2, 0.5, ColumnObjective::kRevenue);
  MasterSolution master;
  master.budget_duals.assign(problem.budget_count(), 0.0);
  master.volume_duals.assign(problem.query_count(), 0.0);
  const PricingResult priced = PriceColumns(problem, master);
  for (const Column& column : priced.columns) {
    const PricingSubproblem sub = MakePricingSubproblem(problem, column.query, master.budget_duals);
    const SlateSolution best = SolveSlate(sub.instance, ObjectiveMode::kRevenueRanked, sub.mask);
    EXPECT_EQ(column.slate, best.slate);
    EXPECT_NEAR(column.objective, best.value, 1e-12);
  }
  // Raising gamma above every value suppresses all columns.
  master.volume_duals.assign(problem.query_count(), 1e6);
  EXPECT_TRUE(PriceColumns(problem, master).columns.empty());
}

TEST(PriceColumnsTest, UnitDualsZeroOutTheRevenueSubproblem) {
  std::vector<ColGenQuery> queries(1);
  queries[0].instance = Uniform({3.0, 2.0, 1.0}, 2, 0.5, 0.1);
  queries[0].volume = 5.0;
  const ColGenProblem problem = MakeColGenProblem(
      std::move(queries), {{"ad1", 1.0}, {"ad2", 1.0}, {"ad3", 1.0}},
      ColumnObjective::kRevenue);
  MasterSolution master;
  master.budget_duals.assign(3, 1.0);
  master.volume_duals.assign(1, 0.0);
  const PricingResult priced = PriceColumns(problem, master);
  EXPECT_TRUE(priced.columns.empty());
  EXPECT_EQ(priced.max_reduced_cost, 0.0);
}

TEST(PriceColumnsTest, BidValueSubproblemUsesUnitMuAndNegativeDuals) {
  std::vector<ColGenQuery> queries(1);
  queries[0].instance = Uniform({3.0, 2.0}, 2, 0.5, 0.1);
  queries[0].volume = 5.0;
  const ColGenProblem problem =
      MakeColGenProblem(std::move(queries), {{"ad1", 1.0}}, ColumnObjective::kBidValue);
  const PricingSubproblem sub = MakePricingSubproblem(problem, 0, {0.25});
  EXPECT_EQ(sub.mode, ObjectiveMode::kHybrid);
  EXPECT_EQ(sub.instance.bidders[0].hybrid_weight, 1.0);
  EXPECT_EQ(sub.instance.bidders[0].utility_factor, -0.25);
  EXPECT_EQ(sub.instance.bidders[1].hybrid_weight, 1.0);
  EXPECT_EQ(sub.instance.bidders[1].utility_factor, 0.0);
  EXPECT_TRUE(sub.mask.excludable[0]);
  EXPECT_FALSE(sub.mask.excludable[1]);
  // Subproblem value equals r - pi.a for the same slate.
  const SlateSolution best = SolveSlate(sub.instance, sub.mode, sub.mask);
  const Column column = SlateColumn(problem, 0, best.slate);
  EXPECT_NEAR(best.value, column.objective - 0.25 * column.cost[0], 1e-12);
}

TEST(PriceColumnsTest, ImprovingColumnsRaiseTheMaster) {
  int strict = 0;
  int emitted = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    InstanceGenerator gen(seed);
    const ColGenProblem problem =
        gen.NextColGenProblem(3, 4, 2, 0.3, ColumnObjective::kRevenue);
    const ColGenResult seeded = RunColGen(problem, 1);
    std::vector<Column> pool(seeded.pool.begin(), seeded.pool.begin() + problem.query_count());
    const MasterSolution before = SolveMasterLp(pool, problem);
    const PricingResult priced = PriceColumns(problem, before);
    if (priced.columns.empty()) continue;
    ++emitted;
    for (const Column& c : priced.columns) pool.push_back(c);
    const MasterSolution after = SolveMasterLp(pool, problem, &before);
    EXPECT_GE(after.objective, before.objective - 1e-12);
    if (after.objective > before.objective + 1e-12) ++strict;
  }
  EXPECT_GT(emitted, 0);
  EXPECT_EQ(strict, emitted);
}

TEST(RunColGenTest, SlackBudgetsConvergeImmediately) {
  InstanceGenerator gen(6);
  ColGenProblem problem = gen.NextColGenProblem(3, 5, 2, 1.0, ColumnObjective::kRevenue);
  for (Budget& b : problem.budgets) b.amount = kInf;
  const ColGenResult result = RunColGen(problem, 10);
  EXPECT_TRUE(result.converged);
  EXPECT_LE(result.log.size(), 2u);
  double expected = 0.0;
  for (std::size_t q = 0; q < problem.query_count(); ++q) {
    const PricingSubproblem sub = MakePricingSubproblem(problem, q, std::vector<double>(problem.budget_count(), 0.0));
    expected += problem.queries[q].volume * SolveSlate(sub.instance, sub.mode, sub.mask).value;
  }
  EXPECT_NEAR(result.master.objective, expected, 1e-9 * expected);
  for (double pi : result.master.budget_duals) EXPECT_EQ(pi, 0.0);
}

TEST(RunColGenTest, ZeroVolumesStopAfterOneIteration) {
  InstanceGenerator gen(7);
  ColGenProblem problem = gen.NextColGenProblem(3, 4, 2, 0.5, ColumnObjective::kRevenue);
  for (ColGenQuery& q : problem.queries) q.volume = 0.0;
  const ColGenResult result = RunColGen(problem, 10);
  EXPECT_TRUE(result.converged);
  EXPECT_EQ(result.log.size(), 1u);
  EXPECT_EQ(result.master.objective, 0.0);
}

void ExpectSound(const ColGenProblem& problem, const ColGenResult& result) {
  for (std::size_t t = 1; t < result.log.size(); ++t) {
    EXPECT_GE(result.log[t].objective, result.log[t - 1].objective);
  }
  std::vector<double> spend(problem.budget_count(), 0.0);
  std::vector<double> shown(problem.query_count(), 0.0);
  for (std::size_t c = 0; c < result.pool.size(); ++c) {
    EXPECT_GE(result.master.x[c], 0.0);
    for (std::size_t b = 0; b < spend.size(); ++b) spend[b] += result.pool[c].cost[b] * result.master.x[c];
    shown[result.pool[c].query] += result.master.x[c];
  }
  double dual = 0.0;
  for (std::size_t b = 0; b < spend.size(); ++b) {
    EXPECT_LE(spend[b], problem.budgets[b].amount + 1e-8);
    EXPECT_GE(result.master.budget_duals[b], 0.0);
    if (std::isfinite(problem.budgets[b].amount)) {
      dual += result.master.budget_duals[b] * problem.budgets[b].amount;
    }
  }
  for (std::size_t q = 0; q < shown.size(); ++q) {
    EXPECT_LE(shown[q], problem.queries[q].volume + 1e-8);
    EXPECT_GE(result.master.volume_duals[q], 0.0);
    dual += result.master.volume_duals[q] * problem.queries[q].volume;
  }
  EXPECT_TRUE(ApproxEqual(dual, result.master.objective, 1e-6));
}

TEST(RunColGenTest, TightBudgetsMatchFullEnumeration) {
  for (ColumnObjective objective : {ColumnObjective::kRevenue, ColumnObjective::kBidValue}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      InstanceGenerator gen(seed);
      const ColGenProblem problem = gen.NextColGenProblem(3, 4, 2, 0.4, objective);
      const ColGenResult result = RunColGen(problem, 200);
      ASSERT_TRUE(result.converged);
      const MasterSolution exact = SolveMasterLp(EnumerateAllColumns(problem), problem);
      EXPECT_TRUE(ApproxEqual(result.master.objective, exact.objective, 1e-6))
          << result.master.objective << " vs " << exact.objective;
      ExpectSound(problem, result);
    }
  }
}

TEST(RunColGenTest, IterationCapReturnsFlaggedFeasibleSolution) {
  InstanceGenerator gen(3);
  const ColGenProblem problem = gen.NextColGenProblem(5, 8, 3, 0.2, ColumnObjective::kRevenue);
  const ColGenResult full = RunColGen(problem, 500);
  ASSERT_TRUE(full.converged);
  ASSERT_GT(full.log.size(), 1u);
  const ColGenResult capped = RunColGen(problem, 1);
  EXPECT_FALSE(capped.converged);
  EXPECT_EQ(capped.master.x.size(), capped.pool.size());
  EXPECT_LE(capped.master.objective, full.master.objective + 1e-9);
  EXPECT_THROW(RunColGen(problem, 0), ValidationError);
}

TEST(RunColGenTest, UnbudgetedBiddersAreNeverDropped) {
  InstanceGenerator gen(12);
  const ColGenProblem problem = gen.NextColGenProblem(4, 6, 3, 0.3, ColumnObjective::kRevenue);
  const ColGenResult result = RunColGen(problem, 200);
  for (const Column& column : result.pool) {
    const ColGenQuery& q = problem.queries[column.query];
    Mask mask;
    for (int slot : q.budget_slot) mask.excludable.push_back(slot >= 0);
    EXPECT_TRUE(MaskAdmits(mask, column.slate, q.instance.positions));
  }
}

TEST(IterationLogTest, LineFormat) {
  std::ostringstream out;
  WriteIterationLog(out, {{1, 2.5, 3, 0.125}, {2, 3.0, 0, 0.0}});
  EXPECT_EQ(out.str(),
            "iter, objective, new_columns, max_reduced_cost\n"
            "1, 2.5, 3, 0.125\n"
            "2, 3, 0, 0\n");
}

}  // namespace
}  // namespace adslate
