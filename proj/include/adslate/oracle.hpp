#ifndef ADSLATE_ORACLE_HPP_
#define ADSLATE_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "adslate/mask.hpp"
#include "adslate/model.hpp"

namespace adslate {

// Largest bidder count the exhaustive search accepts.
inline constexpr std::size_t kOracleMaxBidders = 14;

struct OracleResult {
  SlateSolution best;
  // Every slate whose value matches the optimum to 1e-12 relative, in
  // lexicographic order.
  std::vector<Slate> optimal;
  std::size_t candidates = 0;
};

// Every strictly increasing rank subset of size 1..min(n, m) that the
// mask admits, in lexicographic order; the empty slate is appended last
// when options.allow_empty is set and the mask admits it.
std::vector<Slate> EnumerateSlates(const QueryInstance& instance,
                                   const std::optional<Mask>& mask = std::nullopt,
                                   SolveOptions options = {});

// Brute-force optimum over EnumerateSlates. Ties resolve to the
// lexicographically smallest slate.
OracleResult EnumerateBest(const QueryInstance& instance, ObjectiveMode mode,
                           const std::optional<Mask>& mask = std::nullopt,
                           SolveOptions options = {});

}  // namespace adslate

#endif  // ADSLATE_ORACLE_HPP_
