#include "adslate/oracle.hpp"

#include <algorithm>
#include <string>

namespace adslate {
namespace {

void Extend(int n, int capacity, Slate& current, std::vector<Slate>& out) {
  const int start = current.empty() ? 0 : current.ranks.back() + 1;
  for (int r = start; r < n; ++r) {
    current.ranks.push_back(r);
    out.push_back(current);
    if (static_cast<int>(current.size()) < capacity) {
      Extend(n, capacity, current, out);
    }
    current.ranks.pop_back();
  }
}

}  // namespace

std::vector<Slate> EnumerateSlates(const QueryInstance& instance,
                                   const std::optional<Mask>& mask,
                                   SolveOptions options) {
  if (instance.size() > kOracleMaxBidders) {
    throw ValidationError("exhaustive enumeration is capped at " +
                          std::to_string(kOracleMaxBidders) + " bidders, got " +
                          std::to_string(instance.size()));
  }
  if (mask) CheckMask(instance, *mask);
  const int n = static_cast<int>(instance.size());
  std::vector<Slate> all;
  Slate scratch;
  Extend(n, std::min(n, instance.positions), scratch, all);
  if (options.allow_empty) all.emplace_back();
  if (mask) {
    std::erase_if(all, [&](const Slate& slate) {
      return !MaskAdmits(*mask, slate, instance.positions);
    });
  }
  return all;
}

OracleResult EnumerateBest(const QueryInstance& instance, ObjectiveMode mode,
                           const std::optional<Mask>& mask,
                           SolveOptions options) {
  CheckMode(instance, mode);
  const std::vector<Slate> candidates = EnumerateSlates(instance, mask, options);
  if (candidates.empty()) {
    throw ValidationError("no slate is admissible under the mask");
  }
  std::vector<double> values;
  values.reserve(candidates.size());
  std::size_t best = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    values.push_back(SlateUtility(instance, candidates[c], mode));
    if (values[c] > values[best]) best = c;
  }

  OracleResult result;
  result.candidates = candidates.size();
  result.best = EvaluateSlate(instance, candidates[best], mode);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (ApproxEqual(values[c], values[best], 1e-12)) {
      result.optimal.push_back(candidates[c]);
    }
  }
  std::sort(result.optimal.begin(), result.optimal.end());
  return result;
}

}  // namespace adslate
