#ifndef ADSLATE_MODEL_HPP_
#define ADSLATE_MODEL_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adslate {

// Raised for any instance, slate, mask or problem that violates its
// documented invariants. The message names the violated rule.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Bidder {
  std::string id;
  double bid = 0.0;             // A_j, currency per click
  double quality = 1.0;         // Q_j
  double utility_factor = 1.0;  // rho_j, any sign
  double hybrid_weight = 0.0;   // mu_j, any sign
  bool excludable = true;       // mask bit: may be omitted for non-rank reasons

  bool operator==(const Bidder&) const = default;
};

// Row-major n x m click-through-rate matrix.
class CtrMatrix {
 public:
  CtrMatrix() = default;
  CtrMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static CtrMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  bool operator==(const CtrMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// One query's auction context. Bidders are held in rank order
// (descending bid * quality); construct through ValidateAndRank.
struct QueryInstance {
  std::vector<Bidder> bidders;
  CtrMatrix ctr;  // row r belongs to bidders[r]
  int positions = 0;
  double min_bid = 0.0;

  std::size_t size() const { return bidders.size(); }
  double Bid(std::size_t rank) const { return bidders[rank].bid; }
  double Quality(std::size_t rank) const { return bidders[rank].quality; }
  // Column index is 0-based: position p (1-based) lives in column p-1.
  double Ctr(std::size_t rank, int position) const {
    return ctr(rank, static_cast<std::size_t>(position - 1));
  }
  bool AllUnitQuality() const;

  bool operator==(const QueryInstance&) const = default;
};

enum class ObjectiveMode { kBidRanked, kRevenueRanked, kHybrid };

std::string_view ToString(ObjectiveMode mode);
// Accepts "bid", "revenue", "hybrid".
ObjectiveMode ParseObjectiveMode(std::string_view text);

// An ordered set of 0-based bidder ranks, strictly increasing.
struct Slate {
  std::vector<int> ranks;

  std::size_t size() const { return ranks.size(); }
  bool empty() const { return ranks.empty(); }
  bool operator==(const Slate&) const = default;
  auto operator<=>(const Slate&) const = default;
};

struct SolveOptions {
  // Admit the empty slate (show no ads) as a candidate.
  bool allow_empty = false;
};

struct SlateSolution {
  Slate slate;
  double value = 0.0;
  std::vector<double> prices;  // one per occupied position
  ObjectiveMode mode = ObjectiveMode::kRevenueRanked;
};

// Sorts bidders by descending bid * quality (stable on input order),
// permuting CTR rows alongside, and checks every instance invariant.
QueryInstance ValidateAndRank(std::vector<Bidder> bidders,
                              const CtrMatrix& ctr, int positions,
                              double min_bid);

// Re-checks the invariants of an already ranked instance.
void CheckInstance(const QueryInstance& instance);

void CheckSlate(const QueryInstance& instance, const Slate& slate);
void CheckMode(const QueryInstance& instance, ObjectiveMode mode);

// Per-position cost per click under generalized second price with
// quality-ratio adjustment. A slate that fills every position and whose
// last member has a lower-ranked bidder behind it pays that bidder's
// adjusted bid; any other final member pays the minimum bid.
std::vector<double> SlatePrices(const QueryInstance& instance,
                                const Slate& slate);

double SlateUtility(const QueryInstance& instance, const Slate& slate,
                    ObjectiveMode mode);

// Builds a full solution record for `slate` by direct evaluation.
SlateSolution EvaluateSlate(const QueryInstance& instance, const Slate& slate,
                            ObjectiveMode mode);

// |a - b| <= rel * max(|a|, |b|, 1).
bool ApproxEqual(double a, double b, double rel);

}  // namespace adslate

#endif  // ADSLATE_MODEL_HPP_
