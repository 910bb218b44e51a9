#ifndef BALFACT_SELFTEST_HPP
#define BALFACT_SELFTEST_HPP

#include <ostream>

namespace balfact {

// Golden-instance smoke test across every layer; returns the failure count
// and prints one line per check.
int run_selftest(std::ostream& out);

}  // namespace balfact

#endif
