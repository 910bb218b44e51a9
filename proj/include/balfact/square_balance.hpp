#ifndef BALFACT_SQUARE_BALANCE_HPP
#define BALFACT_SQUARE_BALANCE_HPP

#include "balfact/ring.hpp"

namespace balfact {

/// Result of the square-balance test: either a proper factor of the ring
/// modulus or the certified balanced polynomial h with deg h = t = (n-1)/2.
struct SBOutcome {
  std::optional<SplitCert> split;
  RPoly h;
  int t = 0;

  bool is_split() const { return split.has_value(); }
};

// Build S, form C = (X + Y + sigma((X - Y)^2))/2, take its characteristic
// polynomial over R and peel off (y - X) factors until the evaluation at X
// is invertible (balanced) or a zero divisor (split).
SBOutcome square_balance_test(const RingR& R);

}  // namespace balfact

#endif
