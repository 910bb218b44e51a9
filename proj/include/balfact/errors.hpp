#ifndef BALFACT_ERRORS_HPP
#define BALFACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace balfact {

enum class Errc {
  NotPrime,
  OutOfRange,
  ZeroInput,
  NotASquare,
  CtxMismatch,
  DivisionByZeroPoly,
  DegreeTooLargeForP,
  DuplicateNode,
  TooFewPoints,
  ZeroElement,
  PTooSmall,
  PTooSmallForNodes,
  BothZero,
  NonMonicDivisor,
  InternalInconsistency,
  NotAProperFactor,
  NotAnEndomorphismRoot,
  IdentityEndomorphism,
  DegreeTooSmall,
  ParameterRegime,
  NotBalancedAtRound,
  TooLargeForExhaustive,
  InvalidInput,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

}  // namespace balfact

#endif
