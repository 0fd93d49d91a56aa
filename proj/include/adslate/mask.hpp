#ifndef ADSLATE_MASK_HPP_
#define ADSLATE_MASK_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adslate/model.hpp"

namespace adslate {

// Exclusion mask over bidder ranks. A set bit means the ad may be left
// out of the slate for reasons other than rank; a clear bit means it may
// only be cut because the slate ran out of positions.
struct Mask {
  std::vector<bool> excludable;

  // Bitstring of '0'/'1' in rank order, e.g. "10101".
  static Mask FromBitstring(std::string_view bits);
  // Collects Bidder::excludable in rank order.
  static Mask FromInstance(const QueryInstance& instance);
  static Mask AllExcludable(std::size_t n);

  std::size_t size() const { return excludable.size(); }
  // No clear bits: imposes no restriction beyond rank order.
  bool Trivial() const;
  std::string ToBitstring() const;

  bool operator==(const Mask&) const = default;
};

void CheckMask(const QueryInstance& instance, const Mask& mask);

// True iff `slate` honours the mask: no clear-bit ad ranked above the
// slate's last member is skipped, and a slate with spare positions leaves
// no clear-bit ad below it either.
bool MaskAdmits(const Mask& mask, const Slate& slate, int positions);

}  // namespace adslate

#endif  // ADSLATE_MASK_HPP_
