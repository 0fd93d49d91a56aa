#include "adslate/dp_solver.hpp"

#include <stdexcept>

#include "transition.hpp"

namespace adslate {

ValueTable BuildValueTable(const QueryInstance& instance, ObjectiveMode mode) {
  CheckMode(instance, mode);
  const internal::TransitionTable edges(instance, mode);
  const int n = edges.bidders();
  const int m = edges.positions();

  ValueTable table;
  table.bidders = n;
  table.positions = m;
  table.value.assign(static_cast<std::size_t>(n + m) * m, 0.0);
  table.choice.assign(static_cast<std::size_t>(n + m) * m, n);
  auto at = [m](int row, int s) {
    return static_cast<std::size_t>(row) * m + s - 1;
  };

  // The last position has no choice left: a full slate's final member is
  // priced by the next rank (or the minimum bid below rank n).
  for (int j = 0; j < n; ++j) {
    table.value[at(j, m)] = edges.Terminal(j);
    table.choice[at(j, m)] = j + 1 < n ? j + 1 : n;
  }
  for (int s = m - 1; s >= 1; --s) {
    for (int j = n - 1; j >= 0; --j) {
      double best = 0.0;
      int arg = -1;
      for (int next = j + 1; next < n; ++next) {
        const double candidate =
            edges.Interior(j, next, s) + table.value[at(next, s + 1)];
        if (arg < 0 || candidate > best) {
          best = candidate;
          arg = next;
        }
      }
      const double padded = edges.ToDummy(j, s);
      if (arg < 0 || padded > best) {
        best = padded;
        arg = n;
      }
      table.value[at(j, s)] = best;
      table.choice[at(j, s)] = arg;
    }
  }
  return table;
}

SlateSolution SolveBackward(const QueryInstance& instance, ObjectiveMode mode,
                            const std::optional<Mask>& mask,
                            SolveOptions options) {
  if (mask) {
    CheckMask(instance, *mask);
    if (!mask->Trivial()) {
      throw ValidationError(
          "backward recursion does not support exclusion masks; use the "
          "path solver");
    }
  }
  const ValueTable table = BuildValueTable(instance, mode);
  const int n = table.bidders;
  const int m = table.positions;

  int start = 0;
  for (int j = 1; j < n; ++j) {
    if (table.F(j, 1) > table.F(start, 1)) start = j;
  }
  Slate slate;
  double value = table.F(start, 1);
  if (options.allow_empty && value < 0.0) {
    value = 0.0;
  } else {
    int row = start;
    for (int s = 1; s <= m && row < n; ++s) {
      slate.ranks.push_back(row);
      row = table.Choice(row, s);
    }
  }

  SlateSolution solution = EvaluateSlate(instance, slate, mode);
  if (!ApproxEqual(solution.value, value, 1e-12)) {
    throw std::logic_error("backward recursion value does not match slate "
                           "re-evaluation");
  }
  solution.value = value;
  return solution;
}

}  // namespace adslate
