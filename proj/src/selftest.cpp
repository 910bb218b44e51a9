#include "balfact/selftest.hpp"

#include <functional>
#include <string>

#include "balfact/driver.hpp"
#include "balfact/oracle.hpp"

namespace balfact {

namespace {

struct Runner {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
      ok = body();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    if (!ok) ++failures;
    out << (ok ? "ok   " : "FAIL ") << name << note << "\n";
  }
};

}  // namespace

int run_selftest(std::ostream& out) {
  Runner r{out};

  r.check("field context decomposition", [] {
    auto c7 = FieldCtx::make(7);
    auto c13 = FieldCtx::make(13);
    return c7.e == 1 && c7.w == 3 && c7.q0 == 3 && c7.eta == 6 && c13.e == 2 && c13.w == 3 &&
           c13.q0 == 2 && c13.eta == 8;
  });

  r.check("canonical square roots", [] {
    auto c7 = FieldCtx::make(7);
    auto c13 = FieldCtx::make(13);
    return sigma_field(c7, 2) == 4 && sigma_field(c7, 4) == 2 && sigma_field(c13, 3) == 9 &&
           sigma_field(c13, 4) == 11 && sigma_field(c7, 0) == 0;
  });

  r.check("balance test: x^3 - 1 over F_7 balanced with t = 1", [] {
    auto F = FieldCtx::make(7);
    RingR R(DensePoly::from_coeffs(F, {6, 0, 0, 1}));
    SBOutcome sb = square_balance_test(R);
    if (sb.is_split() || sb.t != 1 || sb.h.degree() != 1) return false;
    return rp_component(R, sb.h, 1) == DensePoly::from_coeffs(F, {5, 1}) &&
           rp_component(R, sb.h, 2) == DensePoly::from_coeffs(F, {3, 1}) &&
           rp_component(R, sb.h, 4) == DensePoly::from_coeffs(F, {6, 1});
  });

  r.check("balance test: x^3 + x^2 + 4x + 1 over F_7 splits", [] {
    auto F = FieldCtx::make(7);
    RingR R(DensePoly::from_coeffs(F, {1, 4, 1, 1}));
    SBOutcome sb = square_balance_test(R);
    return sb.is_split() && sb.split->factor == DensePoly::from_coeffs(F, {6, 2, 1});
  });

  r.check("balance test: even degree always splits", [] {
    auto F = FieldCtx::make(7);
    RingR R(DensePoly::from_coeffs(F, {6, 0, 1}));  // (x-1)(x+1)
    return square_balance_test(R).is_split();
  });

  r.check("delta sets of the residue tournament", [] {
    auto F = FieldCtx::make(7);
    auto y = DensePoly::x(F);
    auto d1 = delta_sets(make_rooted(F, {1, 2, 4}), y).delta;
    auto d2 = delta_sets(make_rooted(F, {1, 2, 3}), y).delta;
    using S = std::vector<std::vector<std::size_t>>;
    return d1 == S{{1}, {2}, {0}} && d2 == S{{1, 2}, {2}, {}};
  });

  r.check("two-round refinement over F_11", [] {
    auto F = FieldCtx::make(11);
    RootedInstance inst = make_rooted(F, {1, 3, 4, 5, 9});
    std::vector<DensePoly> aux = {DensePoly::x(F), DensePoly::from_coeffs(F, {0, 0, 1})};
    auto snaps = d_set_sequence(inst, aux, true);
    if (snaps.size() != 2) return false;
    if (!(snaps[0].regular && snaps[0].regularity == 2)) return false;
    if (!(snaps[1].regularity == 1 && !snaps[1].equals_previous)) return false;
    // traced map 1->4, 3->1, 4->5, 5->9, 9->3 as root indices
    using S = std::vector<std::vector<std::size_t>>;
    return snaps[1].d_sets == S{{2}, {0}, {3}, {4}, {1}};
  });

  r.check("in-degree interpolation split", [] {
    auto F = FieldCtx::make(7);
    RingR R(DensePoly::from_roots(F, {1, 2, 4}));
    RPoly g = crt_assemble(R,
                           {DensePoly::from_coeffs(F, {5, 1}),    // y - 2
                            DensePoly::from_coeffs(F, {6, 1}),    // y - 1
                            DensePoly::from_coeffs(F, {6, 1})},   // y - 1
                           {1, 2, 4});
    auto out = in_degree_check(R, g);
    return out.is_split() && out.cert().factor == DensePoly::from_coeffs(F, {2, 4, 1});
  });

  r.check("cross balance stalls on the 3-cycle x^3 - 1 over F_7", [] {
    auto F = FieldCtx::make(7);
    RingR R(DensePoly::from_coeffs(F, {6, 0, 0, 1}));
    CBOutcome cb = cross_balance_run(R, CrossConfig{}, stalling_hook);
    return !cb.is_split() && cb.trace.size() == 2 &&
           cb.trace[1].event == RoundEvent::SmallDegree && cb.trace[1].degree == 1;
  });

  r.check("fixed-point-free 3-cycle endomorphism stalls with order 3", [] {
    auto F = FieldCtx::make(7);
    RingR R(DensePoly::from_coeffs(F, {6, 0, 0, 1}));
    RElem beta = R.from_poly(DensePoly::from_coeffs(F, {0, 2}));  // 2x: 1 -> 2 -> 4 -> 1
    EndoResult er = endomorphism_split(R, beta);
    return !er.is_split() && er.order == 3;
  });

  r.check("factor x^3 + x^2 + 4x + 1 over F_7 without fallback", [] {
    auto F = FieldCtx::make(7);
    auto rep = factor_driver(DensePoly::from_coeffs(F, {1, 4, 1, 1}), CrossConfig{}, false);
    if (rep.fallback_used || rep.linear_factors.size() != 3) return false;
    return rep.linear_factors[0].first == DensePoly::from_coeffs(F, {4, 1}) &&
           rep.linear_factors[1].first == DensePoly::from_coeffs(F, {5, 1}) &&
           rep.linear_factors[2].first == DensePoly::from_coeffs(F, {6, 1}) &&
           rep.remainder == DensePoly::one(F);
  });

  r.check("factor x^3 - 1 over F_7 via the fallback", [] {
    auto F = FieldCtx::make(7);
    auto rep = factor_driver(DensePoly::from_coeffs(F, {6, 0, 0, 1}), CrossConfig{}, true);
    if (!rep.fallback_used || rep.linear_factors.size() != 3) return false;
    return rep.linear_factors[0].first == DensePoly::from_coeffs(F, {3, 1}) &&
           rep.linear_factors[1].first == DensePoly::from_coeffs(F, {5, 1}) &&
           rep.linear_factors[2].first == DensePoly::from_coeffs(F, {6, 1});
  });

  r.check("x^2 + 1 over F_7 has no roots", [] {
    auto F = FieldCtx::make(7);
    auto rep = factor_driver(DensePoly::from_coeffs(F, {1, 0, 1}), CrossConfig{}, true);
    return rep.linear_factors.empty() && rep.remainder == DensePoly::from_coeffs(F, {1, 0, 1});
  });

  r.check("survey counts", [] {
    auto s7 = survey_exhaustive(FieldCtx::make(7), 3);
    auto s5 = survey_exhaustive(FieldCtx::make(5), 3);
    auto s7e = survey_exhaustive(FieldCtx::make(7), 2);
    return s7.total == 35 && s7.balanced == 14 && s5.total == 10 && s5.balanced == 5 &&
           s7e.total == 21 && s7e.balanced == 0;
  });

  out << (r.failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return r.failures;
}

}  // namespace balfact
