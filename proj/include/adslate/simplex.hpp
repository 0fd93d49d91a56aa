#ifndef ADSLATE_SIMPLEX_HPP_
#define ADSLATE_SIMPLEX_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace adslate {

// maximize c'x  subject to  A x <= b,  x >= 0,  with b >= 0.
// A is row-major, rows() x cols().
struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> matrix;
  std::vector<double> rhs;
  std::vector<double> objective;

  double A(std::size_t r, std::size_t c) const { return matrix[r * cols + c]; }
};

// Basic variable per row. Index k < cols is structural column k; index
// cols + r is the slack of row r.
struct LpBasis {
  std::vector<std::size_t> basic;
};

struct LpResult {
  std::vector<double> x;
  std::vector<double> duals;  // one per row, >= 0 at optimum
  double objective = 0.0;
  double max_reduced_cost = 0.0;
  std::size_t iterations = 0;
  LpBasis basis;
};

class SimplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimplexOptions {
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  // Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t bland_after = 50;
  std::size_t max_iterations = 100000;
};

// Dense revised simplex (Dantzig pricing with Bland fallback). A warm
// basis is used when it is nonsingular and primal feasible; otherwise the
// all-slack basis. Throws SimplexError on a singular basis, unbounded
// objective or iteration overrun.
LpResult SolveLp(const LpProblem& problem, const LpBasis* warm = nullptr,
                 const SimplexOptions& options = {});

}  // namespace adslate

#endif  // ADSLATE_SIMPLEX_HPP_
