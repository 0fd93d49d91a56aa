#include "adslate/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace adslate {
namespace {

template <typename... Args>
[[noreturn]] void Fail(Args&&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  throw ValidationError(out.str());
}

}  // namespace

CtrMatrix CtrMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  CtrMatrix matrix(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      Fail("ctr row ", r, " has ", rows[r].size(), " columns, expected ",
           cols);
    }
    for (std::size_t c = 0; c < cols; ++c) matrix(r, c) = rows[r][c];
  }
  return matrix;
}

bool QueryInstance::AllUnitQuality() const {
  return std::all_of(bidders.begin(), bidders.end(),
                     [](const Bidder& b) { return b.quality == 1.0; });
}

std::string_view ToString(ObjectiveMode mode) {
  switch (mode) {
    case ObjectiveMode::kBidRanked:
      return "bid";
    case ObjectiveMode::kRevenueRanked:
      return "revenue";
    case ObjectiveMode::kHybrid:
      return "hybrid";
  }
  return "unknown";
}

ObjectiveMode ParseObjectiveMode(std::string_view text) {
  if (text == "bid") return ObjectiveMode::kBidRanked;
  if (text == "revenue") return ObjectiveMode::kRevenueRanked;
  if (text == "hybrid") return ObjectiveMode::kHybrid;
  Fail("unknown objective mode '", text, "' (expected bid|revenue|hybrid)");
}

namespace {

void CheckBidderFields(const std::vector<Bidder>& bidders) {
  for (std::size_t j = 0; j < bidders.size(); ++j) {
    const Bidder& b = bidders[j];
    if (!(b.bid > 0.0) || !std::isfinite(b.bid)) {
      Fail("bidder ", j, " ('", b.id, "'): bid must be finite and > 0, got ",
           b.bid);
    }
    if (!(b.quality > 0.0) || !std::isfinite(b.quality)) {
      Fail("bidder ", j, " ('", b.id,
           "'): quality must be finite and > 0, got ", b.quality);
    }
    if (!std::isfinite(b.utility_factor) || !std::isfinite(b.hybrid_weight)) {
      Fail("bidder ", j, " ('", b.id, "'): rho and mu must be finite");
    }
  }
}

void CheckCtr(const CtrMatrix& ctr, std::size_t n, int positions) {
  if (ctr.rows() != n) {
    Fail("ctr has ", ctr.rows(), " rows, expected one per bidder (", n, ")");
  }
  if (ctr.cols() != static_cast<std::size_t>(positions)) {
    Fail("ctr has ", ctr.cols(), " columns, expected positions = ",
         positions);
  }
  for (std::size_t r = 0; r < ctr.rows(); ++r) {
    for (std::size_t c = 0; c < ctr.cols(); ++c) {
      const double t = ctr(r, c);
      if (!(t >= 0.0 && t <= 1.0)) {
        Fail("ctr[", r, "][", c, "] = ", t, " outside [0,1]");
      }
    }
  }
}

}  // namespace

QueryInstance ValidateAndRank(std::vector<Bidder> bidders,
                              const CtrMatrix& ctr, int positions,
                              double min_bid) {
  if (bidders.empty()) Fail("bidder list is empty");
  if (positions < 1) Fail("positions must be >= 1, got ", positions);
  if (!(min_bid > 0.0) || !std::isfinite(min_bid)) {
    Fail("min_bid must be finite and > 0, got ", min_bid);
  }
  CheckBidderFields(bidders);
  CheckCtr(ctr, bidders.size(), positions);

  std::vector<std::size_t> order(bidders.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return bidders[a].bid * bidders[a].quality >
                            bidders[b].bid * bidders[b].quality;
                   });

  QueryInstance instance;
  instance.positions = positions;
  instance.min_bid = min_bid;
  instance.ctr = CtrMatrix(bidders.size(), ctr.cols());
  instance.bidders.reserve(bidders.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    instance.bidders.push_back(std::move(bidders[order[r]]));
    for (std::size_t c = 0; c < ctr.cols(); ++c) {
      instance.ctr(r, c) = ctr(order[r], c);
    }
  }
  if (min_bid > instance.bidders.back().bid) {
    Fail("min_bid ", min_bid, " exceeds the lowest ranked bid ",
         instance.bidders.back().bid);
  }
  return instance;
}

void CheckInstance(const QueryInstance& instance) {
  if (instance.bidders.empty()) Fail("bidder list is empty");
  if (instance.positions < 1) Fail("positions must be >= 1");
  if (!(instance.min_bid > 0.0)) Fail("min_bid must be > 0");
  CheckBidderFields(instance.bidders);
  CheckCtr(instance.ctr, instance.size(), instance.positions);
  for (std::size_t j = 1; j < instance.size(); ++j) {
    const Bidder& hi = instance.bidders[j - 1];
    const Bidder& lo = instance.bidders[j];
    if (hi.bid * hi.quality < lo.bid * lo.quality) {
      Fail("bidders not in rank order at rank ", j);
    }
  }
  if (instance.min_bid > instance.bidders.back().bid) {
    Fail("min_bid exceeds the lowest ranked bid");
  }
}

void CheckSlate(const QueryInstance& instance, const Slate& slate) {
  if (slate.size() > static_cast<std::size_t>(instance.positions)) {
    Fail("slate has ", slate.size(), " members but only ",
         instance.positions, " positions");
  }
  const int n = static_cast<int>(instance.size());
  for (std::size_t p = 0; p < slate.size(); ++p) {
    const int r = slate.ranks[p];
    if (r < 0 || r >= n) Fail("slate rank ", r, " outside [0,", n, ")");
    if (p > 0 && r <= slate.ranks[p - 1]) {
      Fail("slate ranks must be strictly increasing");
    }
  }
}

void CheckMode(const QueryInstance& instance, ObjectiveMode mode) {
  if (mode == ObjectiveMode::kBidRanked && !instance.AllUnitQuality()) {
    Fail("bid-ranked objective requires every quality score to be 1");
  }
}

std::vector<double> SlatePrices(const QueryInstance& instance,
                                const Slate& slate) {
  CheckSlate(instance, slate);
  const std::size_t k = slate.size();
  const int n = static_cast<int>(instance.size());
  std::vector<double> prices(k, instance.min_bid);
  for (std::size_t p = 0; p + 1 < k; ++p) {
    const int self = slate.ranks[p];
    const int next = slate.ranks[p + 1];
    prices[p] = instance.Bid(next) * instance.Quality(next) /
                instance.Quality(self);
  }
  if (k == static_cast<std::size_t>(instance.positions)) {
    const int last = slate.ranks.back();
    if (last + 1 < n) {
      prices.back() = instance.Bid(last + 1) * instance.Quality(last + 1) /
                      instance.Quality(last);
    }
  }
  return prices;
}

double SlateUtility(const QueryInstance& instance, const Slate& slate,
                    ObjectiveMode mode) {
  CheckMode(instance, mode);
  const std::vector<double> prices = SlatePrices(instance, slate);
  double value = 0.0;
  for (std::size_t p = 0; p < slate.size(); ++p) {
    const Bidder& b = instance.bidders[slate.ranks[p]];
    const double ctr = instance.Ctr(slate.ranks[p], static_cast<int>(p) + 1);
    double weight = b.utility_factor * prices[p];
    if (mode == ObjectiveMode::kHybrid) weight += b.hybrid_weight * b.bid;
    value += weight * ctr;
  }
  return value;
}

SlateSolution EvaluateSlate(const QueryInstance& instance, const Slate& slate,
                            ObjectiveMode mode) {
  SlateSolution solution;
  solution.slate = slate;
  solution.value = SlateUtility(instance, slate, mode);
  solution.prices = SlatePrices(instance, slate);
  solution.mode = mode;
  return solution;
}

bool ApproxEqual(double a, double b, double rel) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return std::fabs(a - b) <= rel * scale;
}

}  // namespace adslate
