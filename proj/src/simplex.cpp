#include "adslate/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace adslate {
namespace {

class Tableau {
 public:
  explicit Tableau(const LpProblem& lp) : lp_(lp) {}

  std::size_t Variables() const { return lp_.cols + lp_.rows; }
  bool IsSlack(std::size_t k) const { return k >= lp_.cols; }

  double Cost(std::size_t k) const {
    return IsSlack(k) ? 0.0 : lp_.objective[k];
  }

  Eigen::VectorXd Column(std::size_t k) const {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(lp_.rows);
    if (IsSlack(k)) {
      col(k - lp_.cols) = 1.0;
    } else {
      for (std::size_t r = 0; r < lp_.rows; ++r) col(r) = lp_.A(r, k);
    }
    return col;
  }

  // Returns false when the basis matrix is singular.
  bool Factor(const std::vector<std::size_t>& basic, Eigen::MatrixXd& inverse) const {
    Eigen::MatrixXd b(lp_.rows, lp_.rows);
    for (std::size_t r = 0; r < lp_.rows; ++r) b.col(r) = Column(basic[r]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return false;
    inverse = lu.inverse();
    return true;
  }

  Eigen::VectorXd Rhs() const {
    return Eigen::Map<const Eigen::VectorXd>(lp_.rhs.data(), lp_.rows);
  }

 private:
  const LpProblem& lp_;
};

bool UsableWarmBasis(const LpProblem& lp, const Tableau& tab,
                     const LpBasis* warm) {
  if (warm == nullptr || warm->basic.size() != lp.rows) return false;
  std::vector<char> seen(tab.Variables(), 0);
  for (std::size_t k : warm->basic) {
    if (k >= tab.Variables() || seen[k]) return false;
    seen[k] = 1;
  }
  Eigen::MatrixXd inverse;
  if (!tab.Factor(warm->basic, inverse)) return false;
  const Eigen::VectorXd x = inverse * tab.Rhs();
  return (x.array() >= -1e-9).all();
}

}  // namespace

LpResult SolveLp(const LpProblem& lp, const LpBasis* warm,
                 const SimplexOptions& options) {
  if (lp.matrix.size() != lp.rows * lp.cols || lp.rhs.size() != lp.rows ||
      lp.objective.size() != lp.cols) {
    throw SimplexError("LP dimensions are inconsistent");
  }
  for (double b : lp.rhs) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw SimplexError("LP right-hand side must be finite and >= 0");
    }
  }
  const Tableau tab(lp);
  const std::size_t vars = tab.Variables();

  std::vector<std::size_t> basic(lp.rows);
  if (UsableWarmBasis(lp, tab, warm)) {
    basic = warm->basic;
  } else {
    for (std::size_t r = 0; r < lp.rows; ++r) basic[r] = lp.cols + r;
  }
  std::vector<char> in_basis(vars, 0);
  for (std::size_t k : basic) in_basis[k] = 1;

  LpResult result;
  Eigen::MatrixXd inverse;
  Eigen::VectorXd x_basic;
  Eigen::VectorXd duals;
  std::size_t degenerate_run = 0;
  for (;;) {
    if (result.iterations > options.max_iterations) {
      throw SimplexError("simplex iteration limit exceeded");
    }
    if (!tab.Factor(basic, inverse)) {
      throw SimplexError("singular basis after " +
                         std::to_string(result.iterations) + " pivots");
    }
    x_basic = inverse * tab.Rhs();
    Eigen::VectorXd cost_basic(lp.rows);
    for (std::size_t r = 0; r < lp.rows; ++r) cost_basic(r) = tab.Cost(basic[r]);
    duals = inverse.transpose() * cost_basic;

    const bool bland = degenerate_run >= options.bland_after;
    std::size_t entering = vars;
    double best = options.optimality_tol;
    double max_reduced = 0.0;
    for (std::size_t k = 0; k < vars; ++k) {
      if (in_basis[k]) continue;
      const double reduced = tab.Cost(k) - duals.dot(tab.Column(k));
      max_reduced = std::max(max_reduced, reduced);
      if (reduced > best) {
        entering = k;
        if (bland) break;
        best = reduced;
      }
    }
    result.max_reduced_cost = max_reduced;
    if (entering == vars) break;

    const Eigen::VectorXd direction = inverse * tab.Column(entering);
    std::size_t leaving = lp.rows;
    double step = 0.0;
    for (std::size_t r = 0; r < lp.rows; ++r) {
      if (direction(r) <= options.pivot_tol) continue;
      const double ratio = std::max(x_basic(r), 0.0) / direction(r);
      const bool better = leaving == lp.rows || ratio < step - 1e-15 ||
                          (ratio <= step + 1e-15 && basic[r] < basic[leaving]);
      if (better) {
        leaving = r;
        step = ratio;
      }
    }
    if (leaving == lp.rows) throw SimplexError("LP is unbounded");

    degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
    in_basis[basic[leaving]] = 0;
    in_basis[entering] = 1;
    basic[leaving] = entering;
    ++result.iterations;
  }

  result.x.assign(lp.cols, 0.0);
  result.objective = 0.0;
  for (std::size_t r = 0; r < lp.rows; ++r) {
    if (!tab.IsSlack(basic[r])) {
      result.x[basic[r]] = std::max(x_basic(r), 0.0);
    }
  }
  for (std::size_t c = 0; c < lp.cols; ++c) {
    result.objective += lp.objective[c] * result.x[c];
  }
  result.duals.resize(lp.rows);
  for (std::size_t r = 0; r < lp.rows; ++r) {
    // Optimality leaves slack reduced costs -y_r <= tol; snap the noise.
    result.duals[r] = std::max(duals(r), 0.0);
  }
  result.basis.basic = std::move(basic);
  return result;
}

}  // namespace adslate
