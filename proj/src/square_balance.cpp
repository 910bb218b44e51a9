#include "balfact/square_balance.hpp"

namespace balfact {

SBOutcome square_balance_test(const RingR& R) {
  SAlg S(R);
  SAlg::Elem x = S.x_elem();
  SAlg::Elem y = S.y_class();
  SAlg::Elem d = S.sub(x, y);
  SAlg::Elem c = S.scale_fp(S.add(S.add(x, y), S.sigma(S.mul(d, d))), R.ctx().inv(2));
  RPoly cy = S.char_poly_over_R(c);

  // Peel (y - X)^t; the stopping evaluation doubles as the zero-divisor test.
  RPoly ymx;
  ymx.c = {R.neg(R.x_class()), R.one()};
  RPoly h = cy;
  int t = 0;
  for (;;) {
    RElem hx = rp_eval(R, h, R.x_class());
    if (R.is_zero(hx)) {
      h = rp_divrem_monic(R, h, ymx).first;
      ++t;
      continue;
    }
    auto inv = R.invert(hx);
    if (inv.is_split()) return SBOutcome{inv.cert(), rp_zero(), 0};
    return SBOutcome{std::nullopt, h, t};
  }
}

}  // namespace balfact
