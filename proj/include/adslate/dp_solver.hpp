#ifndef ADSLATE_DP_SOLVER_HPP_
#define ADSLATE_DP_SOLVER_HPP_

#include <optional>
#include <vector>

#include "adslate/mask.hpp"
#include "adslate/model.hpp"

namespace adslate {

// Marginal-revenue-to-go table over n real plus m dummy bidders.
// Row r is a 0-based rank (rows n..n+m-1 are the dummies), column s-1 is
// position s. `choice` holds the successor row picked at (r, s); the
// dummy tail is always reported as row n.
struct ValueTable {
  int bidders = 0;
  int positions = 0;
  std::vector<double> value;
  std::vector<int> choice;

  int rows() const { return bidders + positions; }
  double F(int row, int position) const {
    return value[static_cast<std::size_t>(row) * positions + position - 1];
  }
  int Choice(int row, int position) const {
    return choice[static_cast<std::size_t>(row) * positions + position - 1];
  }
};

ValueTable BuildValueTable(const QueryInstance& instance, ObjectiveMode mode);

// Optimal slate by backward recursion in O(n^2 m). A mask with any clear
// bit is rejected; masked problems go through SolveSlate.
SlateSolution SolveBackward(const QueryInstance& instance, ObjectiveMode mode,
                            const std::optional<Mask>& mask = std::nullopt,
                            SolveOptions options = {});

}  // namespace adslate

#endif  // ADSLATE_DP_SOLVER_HPP_
