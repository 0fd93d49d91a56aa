#ifndef ADSLATE_COLGEN_HPP_
#define ADSLATE_COLGEN_HPP_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adslate/mask.hpp"
#include "adslate/model.hpp"
#include "adslate/simplex.hpp"

namespace adslate {

// How a slate column is scored in the master objective.
enum class ColumnObjective {
  kRevenue,   // expected payments of every positioned bidder
  kBidValue,  // sum of own bid times CTR over positions
};

std::string_view ToString(ColumnObjective objective);
ColumnObjective ParseColumnObjective(std::string_view text);

struct ColGenQuery {
  QueryInstance instance;
  double volume = 0.0;  // expected occurrences v_i
  // Per rank: index into ColGenProblem::budgets, or -1 if unbudgeted.
  std::vector<int> budget_slot;
};

struct Budget {
  std::string bidder_id;
  double amount = 0.0;  // d_j; +inf for an unconstrained bidder
};

struct ColGenProblem {
  std::vector<ColGenQuery> queries;
  std::vector<Budget> budgets;
  ColumnObjective objective = ColumnObjective::kRevenue;
  // Mask bit for bidders without a budget; budgeted bidders are always
  // excludable.
  bool unbudgeted_excludable = false;

  std::size_t query_count() const { return queries.size(); }
  std::size_t budget_count() const { return budgets.size(); }
};

// Resolves bidder ids against the budget list and checks volumes, budgets
// and that every budgeted bidder bids on at least one query.
ColGenProblem MakeColGenProblem(std::vector<ColGenQuery> queries,
                                std::vector<Budget> budgets,
                                ColumnObjective objective,
                                bool unbudgeted_excludable = false);

struct Column {
  std::size_t query = 0;
  Slate slate;
  std::vector<double> cost;  // a_ijk per budget row, expected per showing
  double objective = 0.0;    // r_ik
};

Column SlateColumn(const QueryInstance& instance, const Slate& slate,
                   const std::vector<int>& budget_slot,
                   std::size_t budget_count, ColumnObjective objective);
Column SlateColumn(const ColGenProblem& problem, std::size_t query,
                   const Slate& slate);

struct MasterSolution {
  std::vector<double> x;              // showings per column
  std::vector<double> budget_duals;   // pi_j, one per budget
  std::vector<double> volume_duals;   // gamma_i, one per query
  double objective = 0.0;
  double max_reduced_cost = 0.0;
  LpBasis basis;
};

// Solves max r'x over the column pool subject to the budget and
// inventory rows. Infinite budgets contribute no row and get pi = 0.
// `previous`, a solve over a prefix of the same pool, seeds the basis.
MasterSolution SolveMasterLp(const std::vector<Column>& columns,
                             const ColGenProblem& problem,
                             const MasterSolution* previous = nullptr);

// The query's instance re-weighted by budget duals, with the mask that
// column pricing applies, and the objective mode it is solved under.
struct PricingSubproblem {
  QueryInstance instance;
  Mask mask;
  ObjectiveMode mode;
};

PricingSubproblem MakePricingSubproblem(const ColGenProblem& problem,
                                        std::size_t query,
                                        const std::vector<double>& budget_duals);

struct PricingResult {
  std::vector<Column> columns;
  // Largest subproblem value minus gamma_i over all queries.
  double max_reduced_cost = 0.0;
};

// One subproblem per query; a column is returned iff its value exceeds
// gamma_i + threshold.
PricingResult PriceColumns(const ColGenProblem& problem,
                           const MasterSolution& master,
                           double threshold = 1e-9);

struct IterationLog {
  std::size_t iteration = 0;
  double objective = 0.0;
  std::size_t new_columns = 0;
  double max_reduced_cost = 0.0;
};

struct ColGenResult {
  MasterSolution master;
  std::vector<Column> pool;
  std::vector<IterationLog> log;
  bool converged = false;
};

ColGenResult RunColGen(const ColGenProblem& problem, std::size_t max_iters,
                       double tolerance = 1e-9);

// Every mask-admissible slate of every query as a column; the exact
// master LP for problems small enough to enumerate.
std::vector<Column> EnumerateAllColumns(const ColGenProblem& problem);

// "iter, objective, new_columns, max_reduced_cost" lines.
void WriteIterationLog(std::ostream& out, const std::vector<IterationLog>& log);

}  // namespace adslate

#endif  // ADSLATE_COLGEN_HPP_
