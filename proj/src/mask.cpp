#include "adslate/mask.hpp"

#include <algorithm>
#include <string>

namespace adslate {

Mask Mask::FromBitstring(std::string_view bits) {
  Mask mask;
  mask.excludable.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ValidationError("mask must contain only '0' and '1', got '" +
                            std::string(bits) + "'");
    }
    mask.excludable.push_back(c == '1');
  }
  return mask;
}

Mask Mask::FromInstance(const QueryInstance& instance) {
  Mask mask;
  mask.excludable.reserve(instance.size());
  for (const Bidder& b : instance.bidders) mask.excludable.push_back(b.excludable);
  return mask;
}

Mask Mask::AllExcludable(std::size_t n) {
  Mask mask;
  mask.excludable.assign(n, true);
  return mask;
}

bool Mask::Trivial() const {
  return std::all_of(excludable.begin(), excludable.end(),
                     [](bool bit) { return bit; });
}

std::string Mask::ToBitstring() const {
  std::string out;
  out.reserve(excludable.size());
  for (bool bit : excludable) out.push_back(bit ? '1' : '0');
  return out;
}

void CheckMask(const QueryInstance& instance, const Mask& mask) {
  if (mask.size() != instance.size()) {
    throw ValidationError("mask length " + std::to_string(mask.size()) +
                          " does not match bidder count " +
                          std::to_string(instance.size()));
  }
}

bool MaskAdmits(const Mask& mask, const Slate& slate, int positions) {
  const int n = static_cast<int>(mask.size());
  const int last = slate.empty() ? -1 : slate.ranks.back();
  std::size_t cursor = 0;
  for (int r = 0; r <= last; ++r) {
    const bool chosen =
        cursor < slate.size() && slate.ranks[cursor] == r;
    if (chosen) {
      ++cursor;
    } else if (!mask.excludable[r]) {
      return false;
    }
  }
  if (slate.size() < static_cast<std::size_t>(positions)) {
    for (int r = last + 1; r < n; ++r) {
      if (!mask.excludable[r]) return false;
    }
  }
  return true;
}

}  // namespace adslate
