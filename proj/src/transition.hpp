#ifndef ADSLATE_SRC_TRANSITION_HPP_
#define ADSLATE_SRC_TRANSITION_HPP_

#include <vector>

#include "adslate/model.hpp"

namespace adslate::internal {

// Value of placing rank i at position p followed by a given successor.
// Shared by the backward recursion and the layered network so both
// evaluate every transition with identical arithmetic. Ranks are 0-based,
// positions 1-based; successor `n` stands for the dummy/minimum-bid tail.
class TransitionTable {
 public:
  TransitionTable(const QueryInstance& instance, ObjectiveMode mode)
      : n_(static_cast<int>(instance.size())),
        m_(instance.positions),
        min_bid_(instance.min_bid),
        ctr_cols_(static_cast<int>(instance.ctr.cols())) {
    score_.reserve(n_);
    quality_.reserve(n_);
    rho_.reserve(n_);
    first_price_.reserve(n_);
    for (const Bidder& b : instance.bidders) {
      score_.push_back(b.bid * b.quality);
      quality_.push_back(b.quality);
      rho_.push_back(b.utility_factor);
      first_price_.push_back(mode == ObjectiveMode::kHybrid
                                 ? b.hybrid_weight * b.bid
                                 : 0.0);
    }
    ctr_.resize(static_cast<std::size_t>(n_) * ctr_cols_);
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < ctr_cols_; ++c) ctr_[r * ctr_cols_ + c] = instance.ctr(r, c);
    }
  }

  int bidders() const { return n_; }
  int positions() const { return m_; }

  double Ctr(int rank, int position) const {
    return ctr_[rank * ctr_cols_ + position - 1];
  }

  // Rank i at position p, followed by real rank j > i.
  double Interior(int i, int j, int p) const {
    return (first_price_[i] + rho_[i] * (score_[j] / quality_[i])) * Ctr(i, p);
  }

  // Rank i at position p, followed by padding (pays the minimum bid).
  double ToDummy(int i, int p) const {
    return (first_price_[i] + rho_[i] * min_bid_) * Ctr(i, p);
  }

  // Rank j in the last position m; pays the next-ranked adjusted bid, or
  // the minimum bid when j is the lowest ranked bidder.
  double Terminal(int j) const {
    return j + 1 < n_ ? Interior(j, j + 1, m_) : ToDummy(j, m_);
  }

 private:
  int n_;
  int m_;
  double min_bid_;
  int ctr_cols_;
  std::vector<double> score_;
  std::vector<double> quality_;
  std::vector<double> rho_;
  std::vector<double> first_price_;
  std::vector<double> ctr_;
};

}  // namespace adslate::internal

#endif  // ADSLATE_SRC_TRANSITION_HPP_
