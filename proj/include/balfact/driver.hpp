#ifndef BALFACT_DRIVER_HPP
#define BALFACT_DRIVER_HPP

#include "balfact/cross_balance.hpp"

namespace balfact {

struct EndoResult {
  std::optional<SplitCert> split;
  std::uint64_t order = 0;  // order of the root permutation when stalled

  bool is_split() const { return split.has_value(); }
};

// Iterate the endomorphism X -> beta by self-composition; any iterate whose
// difference with X is a zero divisor yields a factor. A fixed-point-free
// permutation of prime order reaches the identity with nothing to split.
EndoResult endomorphism_split(const RingR& R, const RElem& beta);

// Seeded equal-degree splitting for completely splitting f: first proper
// gcd((x+a)^((p-1)/2) - 1, f) over random shifts a.
SplitCert cz_random_split(const DensePoly& f, std::uint64_t seed);

struct FactorReport {
  std::vector<std::pair<DensePoly, int>> linear_factors;  // monic linear, multiplicity
  DensePoly remainder;                                    // no roots in F_p
  std::vector<std::vector<RoundRecord>> trace;            // one stream per subproblem
  bool fallback_used = false;
  std::vector<std::string> notes;  // parameter-regime reroutes
};

/// Thrown when cross balance fails with the fallback disabled; carries the
/// trace of the stuck subproblem.
class FactoringStalled : public Error {
 public:
  FactoringStalled(std::vector<RoundRecord> trace, DensePoly stuck)
      : Error(Errc::ParameterRegime, "cross balance failed and the fallback is disabled"),
        trace_(std::move(trace)),
        stuck_(std::move(stuck)) {}
  const std::vector<RoundRecord>& trace() const { return trace_; }
  const DensePoly& stuck() const { return stuck_; }

 private:
  std::vector<RoundRecord> trace_;
  DensePoly stuck_;
};

FactorReport factor_driver(const DensePoly& f_raw, const CrossConfig& cfg, bool allow_fallback,
                           std::uint64_t seed = 0);

}  // namespace balfact

#endif
