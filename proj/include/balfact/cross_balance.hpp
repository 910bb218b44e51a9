#ifndef BALFACT_CROSS_BALANCE_HPP
#define BALFACT_CROSS_BALANCE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "balfact/ring.hpp"
#include "balfact/square_balance.hpp"

namespace balfact {

enum class AuxKind { Power, SeededRandom };

struct AuxProvider {
  AuxKind kind = AuxKind::Power;
  std::uint64_t seed = 0;
};

/// Emits the auxiliary polynomials p_1 = y, p_2, p_3, ...; the random
/// variant draws degree-(n-1) coefficient vectors from a counter-based
/// generator and resamples duplicates and degenerate draws.
class AuxStream {
 public:
  AuxStream(AuxProvider provider, const FieldCtx& ctx, std::size_t n);
  DensePoly next();

 private:
  AuxProvider provider_;
  FieldCtx ctx_;
  std::size_t n_;
  std::uint64_t l_ = 0;
  std::uint64_t counter_ = 0;
  std::vector<std::vector<Fp>> emitted_;
};

struct CrossConfig {
  int k = 0;  // 0: use the default 4*ceil(log2 n) + 4
  int c = 1;
  AuxProvider provider;
  bool modified_rule = true;
};

int default_round_budget(std::size_t n);

enum class RoundEvent {
  SplitFound,
  PowerFormViolation,
  NotSquareBalanced,
  Refined,
  Unchanged,
  InDegreeSplit,
  SmallDegree,
};

const char* round_event_name(RoundEvent e);

struct RoundRecord {
  int l = 0;
  std::string aux;  // text form of p_l
  RoundEvent event = RoundEvent::SplitFound;
  int degree = -1;  // new degree for Refined/Unchanged, t' for SmallDegree
};

struct CBOutcome {
  std::optional<SplitCert> split;
  std::vector<RoundRecord> trace;
  RPoly final_g;

  bool is_split() const { return split.has_value(); }
};

enum class HookDecision { Split, Stalled };

struct HookResult {
  HookDecision decision = HookDecision::Stalled;
  std::optional<SplitCert> cert;
};

using SplitterHook = std::function<HookResult(const RingR&, const RPoly&)>;

HookResult stalling_hook(const RingR&, const RPoly&);

// f_l = prod (x - p_l(xi_i)) as the characteristic polynomial of p_l(X).
DensePoly build_fl(const RingR& R, const DensePoly& pl);

// Either f_l = ftilde^d with ftilde squarefree, or a factor of f recovered
// from the gcd of p_l(y) - p_l(X) with f(y) in R[y].
Outcome<std::pair<DensePoly, std::uint64_t>> power_form_check(const RingR& R, const DensePoly& pl,
                                                              const DensePoly& fl);

// gcd(gtilde(p_l(x)) mod f, f) for a proper factor gtilde of ftilde_l.
SplitCert pullback_factor(const DensePoly& gtilde, const DensePoly& pl, const DensePoly& f);

// Substitute p_l into the coefficients of h_l (over F_p[x]/(ftilde_l)) to
// land in R[y].
RPoly lift_h(const RingR& Rl, const RPoly& hl, const DensePoly& pl, const RingR& R);

struct RefineResult {
  RPoly g;
  bool changed = false;
};

// g_new = gcd(g_prev, hprime(p_l(y))), or under the modified rule whichever
// of the gcd and the cofactor g_prev/gcd has the smaller nonzero degree.
Outcome<RefineResult> refine(const RingR& R, const RPoly& g_prev, const RPoly& hprime,
                             const DensePoly& pl, bool modified);

// Steps 9-11: interpolate r(x) = prod (x - xi_j)^(indeg j) from scalar
// evaluations of g and probe r/f^i for a proper factor.
Outcome<std::monostate> in_degree_check(const RingR& R, const RPoly& g);

CBOutcome cross_balance_run(const RingR& R, const CrossConfig& cfg, const SplitterHook& hook);

}  // namespace balfact

#endif
