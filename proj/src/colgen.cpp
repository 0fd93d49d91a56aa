#include "adslate/colgen.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>
#include <utility>

#include "adslate/oracle.hpp"
#include "adslate/path_solver.hpp"

namespace adslate {

std::string_view ToString(ColumnObjective objective) {
  return objective == ColumnObjective::kRevenue ? "revenue" : "bid_value";
}

ColumnObjective ParseColumnObjective(std::string_view text) {
  if (text == "revenue") return ColumnObjective::kRevenue;
  if (text == "bid_value") return ColumnObjective::kBidValue;
  throw ValidationError("unknown column objective '" + std::string(text) +
                        "' (expected revenue|bid_value)");
}

ColGenProblem MakeColGenProblem(std::vector<ColGenQuery> queries,
                                std::vector<Budget> budgets,
                                ColumnObjective objective,
                                bool unbudgeted_excludable) {
  std::unordered_map<std::string, int> slot_of;
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    const Budget& budget = budgets[b];
    if (std::isnan(budget.amount) || budget.amount < 0.0) {
      throw ValidationError("budget of '" + budget.bidder_id +
                            "' must be >= 0");
    }
    if (!slot_of.emplace(budget.bidder_id, static_cast<int>(b)).second) {
      throw ValidationError("duplicate budget for '" + budget.bidder_id + "'");
    }
  }
  std::vector<char> referenced(budgets.size(), 0);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    ColGenQuery& query = queries[q];
    if (!std::isfinite(query.volume) || query.volume < 0.0) {
      throw ValidationError("query " + std::to_string(q) +
                            ": volume must be finite and >= 0");
    }
    CheckInstance(query.instance);
    query.budget_slot.assign(query.instance.size(), -1);
    std::set<std::string> ids;
    for (std::size_t r = 0; r < query.instance.size(); ++r) {
      const std::string& id = query.instance.bidders[r].id;
      if (!ids.insert(id).second) {
        throw ValidationError("query " + std::to_string(q) +
                              ": duplicate bidder id '" + id + "'");
      }
      if (auto it = slot_of.find(id); it != slot_of.end()) {
        query.budget_slot[r] = it->second;
        referenced[it->second] = 1;
      }
    }
  }
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    if (!referenced[b]) {
      throw ValidationError("budgeted bidder '" + budgets[b].bidder_id +
                            "' appears in no query");
    }
  }
  ColGenProblem problem;
  problem.queries = std::move(queries);
  problem.budgets = std::move(budgets);
  problem.objective = objective;
  problem.unbudgeted_excludable = unbudgeted_excludable;
  return problem;
}

Column SlateColumn(const QueryInstance& instance, const Slate& slate,
                   const std::vector<int>& budget_slot,
                   std::size_t budget_count, ColumnObjective objective) {
  const std::vector<double> prices = SlatePrices(instance, slate);
  Column column;
  column.slate = slate;
  column.cost.assign(budget_count, 0.0);
  for (std::size_t p = 0; p < slate.size(); ++p) {
    const int rank = slate.ranks[p];
    const double ctr = instance.Ctr(rank, static_cast<int>(p) + 1);
    const double payment = ctr * prices[p];
    if (budget_slot[rank] >= 0) column.cost[budget_slot[rank]] += payment;
    column.objective += objective == ColumnObjective::kRevenue
                            ? payment
                            : instance.Bid(rank) * ctr;
  }
  return column;
}

Column SlateColumn(const ColGenProblem& problem, std::size_t query,
                   const Slate& slate) {
  const ColGenQuery& q = problem.queries.at(query);
  Column column = SlateColumn(q.instance, slate, q.budget_slot,
                              problem.budget_count(), problem.objective);
  column.query = query;
  return column;
}

MasterSolution SolveMasterLp(const std::vector<Column>& columns,
                             const ColGenProblem& problem,
                             const MasterSolution* previous) {
  const std::size_t budgets = problem.budget_count();
  const std::size_t queries = problem.query_count();
  std::vector<std::size_t> budget_row(budgets, SIZE_MAX);
  std::size_t rows = 0;
  for (std::size_t b = 0; b < budgets; ++b) {
    if (std::isfinite(problem.budgets[b].amount)) budget_row[b] = rows++;
  }
  const std::size_t first_volume_row = rows;
  rows += queries;

  std::vector<char> covered(queries, 0);
  LpProblem lp;
  lp.rows = rows;
  lp.cols = columns.size();
  lp.matrix.assign(rows * lp.cols, 0.0);
  lp.rhs.assign(rows, 0.0);
  lp.objective.resize(lp.cols);
  for (std::size_t b = 0; b < budgets; ++b) {
    if (budget_row[b] != SIZE_MAX) lp.rhs[budget_row[b]] = problem.budgets[b].amount;
  }
  for (std::size_t q = 0; q < queries; ++q) {
    lp.rhs[first_volume_row + q] = problem.queries[q].volume;
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Column& column = columns[c];
    if (column.query >= queries || column.cost.size() != budgets) {
      throw ValidationError("column " + std::to_string(c) +
                            " does not match the problem shape");
    }
    covered[column.query] = 1;
    lp.objective[c] = column.objective;
    for (std::size_t b = 0; b < budgets; ++b) {
      if (budget_row[b] != SIZE_MAX) {
        lp.matrix[budget_row[b] * lp.cols + c] = column.cost[b];
      }
    }
    lp.matrix[(first_volume_row + column.query) * lp.cols + c] = 1.0;
  }
  for (std::size_t q = 0; q < queries; ++q) {
    if (!covered[q] && problem.queries[q].volume > 0.0) {
      throw ValidationError("query " + std::to_string(q) +
                            " has positive volume but no column");
    }
  }

  // Slack indices shift by the number of columns added since `previous`.
  LpBasis warm;
  const LpBasis* warm_ptr = nullptr;
  if (previous != nullptr && previous->x.size() <= lp.cols &&
      previous->basis.basic.size() == rows) {
    const std::size_t old_cols = previous->x.size();
    for (std::size_t k : previous->basis.basic) {
      warm.basic.push_back(k < old_cols ? k : k - old_cols + lp.cols);
    }
    warm_ptr = &warm;
  }
  const LpResult lp_result = SolveLp(lp, warm_ptr);

  MasterSolution master;
  master.x = lp_result.x;
  master.objective = lp_result.objective;
  master.max_reduced_cost = lp_result.max_reduced_cost;
  master.basis = lp_result.basis;
  master.budget_duals.assign(budgets, 0.0);
  for (std::size_t b = 0; b < budgets; ++b) {
    if (budget_row[b] != SIZE_MAX) {
      master.budget_duals[b] = lp_result.duals[budget_row[b]];
    }
  }
  master.volume_duals.resize(queries);
  for (std::size_t q = 0; q < queries; ++q) {
    master.volume_duals[q] = lp_result.duals[first_volume_row + q];
  }
  return master;
}

PricingSubproblem MakePricingSubproblem(const ColGenProblem& problem,
                                        std::size_t query,
                                        const std::vector<double>& budget_duals) {
  const ColGenQuery& q = problem.queries.at(query);
  PricingSubproblem sub{q.instance, Mask{}, ObjectiveMode::kRevenueRanked};
  const bool bid_value = problem.objective == ColumnObjective::kBidValue;
  if (bid_value) sub.mode = ObjectiveMode::kHybrid;
  sub.mask.excludable.resize(q.instance.size());
  for (std::size_t r = 0; r < q.instance.size(); ++r) {
    Bidder& bidder = sub.instance.bidders[r];
    const int slot = q.budget_slot[r];
    const double dual = slot >= 0 ? budget_duals.at(slot) : 0.0;
    if (bid_value) {
      bidder.hybrid_weight = 1.0;
      bidder.utility_factor = -dual;
    } else {
      bidder.hybrid_weight = 0.0;
      bidder.utility_factor = 1.0 - dual;
    }
    bidder.excludable = slot >= 0 || problem.unbudgeted_excludable;
    sub.mask.excludable[r] = bidder.excludable;
  }
  return sub;
}

PricingResult PriceColumns(const ColGenProblem& problem,
                           const MasterSolution& master, double threshold) {
  PricingResult result;
  result.max_reduced_cost = -std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < problem.query_count(); ++q) {
    const PricingSubproblem sub =
        MakePricingSubproblem(problem, q, master.budget_duals);
    const SlateSolution best = SolveSlate(sub.instance, sub.mode, sub.mask);
    const double reduced = best.value - master.volume_duals.at(q);
    result.max_reduced_cost = std::max(result.max_reduced_cost, reduced);
    if (reduced > threshold) {
      result.columns.push_back(SlateColumn(problem, q, best.slate));
    }
  }
  if (problem.query_count() == 0) result.max_reduced_cost = 0.0;
  return result;
}

ColGenResult RunColGen(const ColGenProblem& problem, std::size_t max_iters,
                       double tolerance) {
  if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
  ColGenResult result;
  std::set<std::pair<std::size_t, std::vector<int>>> known;
  const std::vector<double> no_duals(problem.budget_count(), 0.0);
  for (std::size_t q = 0; q < problem.query_count(); ++q) {
    const PricingSubproblem sub = MakePricingSubproblem(problem, q, no_duals);
    const SlateSolution seed = SolveSlate(sub.instance, sub.mode, sub.mask);
    result.pool.push_back(SlateColumn(problem, q, seed.slate));
    known.emplace(q, seed.slate.ranks);
  }

  const MasterSolution* previous = nullptr;
  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    result.master = SolveMasterLp(result.pool, problem, previous);
    previous = &result.master;
    PricingResult priced = PriceColumns(problem, result.master, tolerance);

    IterationLog entry;
    entry.iteration = iter;
    entry.objective = result.master.objective;
    entry.max_reduced_cost = priced.max_reduced_cost;
    for (Column& column : priced.columns) {
      if (known.emplace(column.query, column.slate.ranks).second) {
        result.pool.push_back(std::move(column));
        ++entry.new_columns;
      }
    }
    result.log.push_back(entry);
    if (entry.new_columns == 0) {
      result.converged = true;
      break;
    }
  }
  // Columns priced on the final capped iteration enter at zero.
  result.master.x.resize(result.pool.size(), 0.0);
  return result;
}

std::vector<Column> EnumerateAllColumns(const ColGenProblem& problem) {
  std::vector<Column> columns;
  const std::vector<double> no_duals(problem.budget_count(), 0.0);
  for (std::size_t q = 0; q < problem.query_count(); ++q) {
    const PricingSubproblem sub = MakePricingSubproblem(problem, q, no_duals);
    for (const Slate& slate : EnumerateSlates(sub.instance, sub.mask)) {
      columns.push_back(SlateColumn(problem, q, slate));
    }
  }
  return columns;
}

void WriteIterationLog(std::ostream& out, const std::vector<IterationLog>& log) {
  out << "iter, objective, new_columns, max_reduced_cost\n";
  const auto old_precision = out.precision(12);
  for (const IterationLog& entry : log) {
    out << entry.iteration << ", " << entry.objective << ", "
        << entry.new_columns << ", " << entry.max_reduced_cost << '\n';
  }
  out.precision(old_precision);
}

}  // namespace adslate
