#ifndef BALFACT_ORACLE_HPP
#define BALFACT_ORACLE_HPP

#include "balfact/cross_balance.hpp"

namespace balfact {

/// A completely splitting squarefree modulus given by its explicit roots.
/// Everything in this header is brute force over the roots and never touches
/// the algebra layer, so agreement with the engine is a genuine cross-check.
struct RootedInstance {
  FieldCtx ctx;
  std::vector<Fp> roots;  // pairwise distinct, n >= 2

  std::size_t n() const { return roots.size(); }
  DensePoly modulus() const { return DensePoly::from_roots(ctx, roots); }
};

RootedInstance make_rooted(const FieldCtx& ctx, std::vector<Fp> roots);

struct DeltaSets {
  // 0-based index sets: delta[i] = { j : p(xi_i) != p(xi_j) and the canonical
  // square root of (p(xi_i) - p(xi_j))^2 is the negative of the difference }.
  std::vector<std::vector<std::size_t>> delta;
  std::vector<std::vector<std::size_t>> delta_bar;  // {j != i} minus delta[i]
};

DeltaSets delta_sets(const RootedInstance& inst, const DensePoly& pl);

struct GraphSnapshot {
  int l = 0;
  std::vector<std::vector<std::size_t>> d_sets;
  bool regular = false;     // all out-degrees and in-degrees equal
  int regularity = -1;      // the common degree when regular
  bool equals_previous = false;
  RoundEvent event = RoundEvent::Refined;  // what the engine reports this round
};

// Iterate the D-set recurrence D_i <- D_i intersect Delta_i round by round,
// with the smaller-nonzero-size complement rule when modified is set. Stops
// at the first round whose event is terminal for the engine. aux[0] must be y.
std::vector<GraphSnapshot> d_set_sequence(const RootedInstance& inst,
                                          const std::vector<DensePoly>& aux, bool modified,
                                          int c = 1);

// The exact RoundRecord stream cross_balance_run emits with a stalling
// splitter hook, reproduced from root arithmetic alone.
std::vector<RoundRecord> expected_records(const RootedInstance& inst,
                                          const std::vector<DensePoly>& aux, bool modified,
                                          int c = 1);

// Assemble per-root component polynomials in y into a single polynomial over
// R = F_p[x]/(prod (x - xi_i)) through the Lagrange idempotent basis.
RPoly crt_assemble(const RingR& R, const std::vector<DensePoly>& components,
                   const std::vector<Fp>& roots);

// Component of a polynomial over R at the root xi: evaluate each coefficient.
DensePoly rp_component(const RingR& R, const RPoly& g, Fp xi);

// The balanced polynomial the engine lifts at round l: component at xi_i is
// prod over the Delta-neighbours w of p_l(xi_i) of (y - w).
RPoly expected_h(const RootedInstance& inst, int l, const std::vector<DensePoly>& aux);

// The refined polynomial after round l: component at xi_i is
// prod_{j in D_i^(l)} (y - xi_j).
RPoly expected_g(const RootedInstance& inst, int l, const std::vector<DensePoly>& aux,
                 bool modified);

struct SurveyResult {
  std::uint64_t total = 0;
  std::uint64_t balanced = 0;
};

bool is_square_balanced(const FieldCtx& ctx, const std::vector<Fp>& roots);

// Count n-subsets of F_p whose canonical-square-root tournament is regular.
// Guarded by C(p, n) <= 10^7.
SurveyResult survey_exhaustive(const FieldCtx& ctx, std::size_t n);

// Sampled variant: uniform distinct-root draws from a seeded generator.
SurveyResult survey_sampled(const FieldCtx& ctx, std::size_t n, std::uint64_t trials,
                            std::uint64_t seed);

}  // namespace balfact

#endif
