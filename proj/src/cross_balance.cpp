#include "balfact/cross_balance.hpp"

#include <cmath>

namespace balfact {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

AuxStream::AuxStream(AuxProvider provider, const FieldCtx& ctx, std::size_t n)
    : provider_(provider), ctx_(ctx), n_(n) {}

DensePoly AuxStream::next() {
  ++l_;
  if (l_ == 1) return DensePoly::x(ctx_);
  if (provider_.kind == AuxKind::Power) {
    std::vector<Fp> c(l_ + 1, 0);
    c[l_] = 1;
    return DensePoly{ctx_, std::move(c)};
  }
  for (;;) {
    std::vector<Fp> c(n_);
    for (auto& v : c) v = splitmix64(provider_.seed ^ splitmix64(counter_++)) % ctx_.p;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 3) continue;  // degree at least 2
    bool dup = false;
    for (const auto& prev : emitted_)
      if (prev == c) dup = true;
    if (dup) continue;
    emitted_.push_back(c);
    return DensePoly{ctx_, std::move(c)};
  }
}

int default_round_budget(std::size_t n) {
  int lg = 0;
  while ((std::size_t{1} << lg) < n) ++lg;
  return 4 * lg + 4;
}

const char* round_event_name(RoundEvent e) {
  switch (e) {
    case RoundEvent::SplitFound: return "SplitFound";
    case RoundEvent::PowerFormViolation: return "PowerFormViolation";
    case RoundEvent::NotSquareBalanced: return "NotSquareBalanced";
    case RoundEvent::Refined: return "Refined";
    case RoundEvent::Unchanged: return "Unchanged";
    case RoundEvent::InDegreeSplit: return "InDegreeSplit";
    case RoundEvent::SmallDegree: return "SmallDegree";
  }
  return "Unknown";
}

HookResult stalling_hook(const RingR&, const RPoly&) { return HookResult{HookDecision::Stalled, std::nullopt}; }

DensePoly build_fl(const RingR& R, const DensePoly& pl) {
  if (pl.degree() < 1) throw Error(Errc::InvalidInput, "auxiliary polynomial must be nonconstant");
  return R.char_poly(R.eval_poly(pl, R.x_class()));
}

Outcome<std::pair<DensePoly, std::uint64_t>> power_form_check(const RingR& R, const DensePoly& pl,
                                                              const DensePoly& fl) {
  auto pp = perfect_power_decompose(fl);
  if (pp) return Outcome<std::pair<DensePoly, std::uint64_t>>::ok(*pp);
  // Unequal multiplicity profile: the componentwise gcd of p_l(y) - p_l(X)
  // and f(y) must expose a zero divisor along the Euclidean sequence.
  RPoly lhs = rp_sub(R, rp_from_scalar_poly(R, pl),
                     rp_constant(R, R.eval_poly(pl, R.x_class())));
  RPoly fy = rp_from_scalar_poly(R, R.modulus());
  auto g = rp_gcd(R, lhs, fy);
  if (g.is_split()) return Outcome<std::pair<DensePoly, std::uint64_t>>::split(g.cert());
  throw Error(Errc::InternalInconsistency,
              "f_l not a perfect power yet the multiplicity gcd stayed invertible");
}

SplitCert pullback_factor(const DensePoly& gtilde, const DensePoly& pl, const DensePoly& f) {
  if (!gtilde.is_monic() || gtilde.degree() < 1)
    throw Error(Errc::NotAProperFactor, "pullback needs a monic proper factor");
  DensePoly comp = compose_mod(gtilde, pl, f);
  DensePoly g = poly_gcd(comp, f);
  if (g.degree() <= 0 || g.degree() >= f.degree())
    throw Error(Errc::NotAProperFactor, "pullback did not produce a proper factor");
  return SplitCert{g, f};
}

RPoly lift_h(const RingR& Rl, const RPoly& hl, const DensePoly& pl, const RingR& R) {
  RPoly out;
  for (const RElem& coeff : hl.c) {
    DensePoly a = Rl.to_poly(coeff);
    out.c.push_back(R.from_poly(compose_mod(a, pl, R.modulus())));
  }
  rp_trim(R, out);
  return out;
}

Outcome<RefineResult> refine(const RingR& R, const RPoly& g_prev, const RPoly& hprime,
                             const DensePoly& pl, bool modified) {
  if (g_prev.degree() < 1) throw Error(Errc::InvalidInput, "refine needs deg g_prev >= 1");
  RPoly comp = rp_compose_scalar(R, hprime, pl);
  if (comp.is_zero()) return Outcome<RefineResult>::ok(RefineResult{g_prev, false});
  auto gout = rp_gcd(R, g_prev, comp);
  if (gout.is_split()) return Outcome<RefineResult>::split(gout.cert());
  RPoly g = gout.value();
  if (!modified) {
    if (g.degree() == 0 || rp_equal(g, g_prev)) return Outcome<RefineResult>::ok(RefineResult{g_prev, false});
    return Outcome<RefineResult>::ok(RefineResult{g, true});
  }
  RPoly quot = rp_divrem_monic(R, g_prev, g).first;
  // Pick the smaller nonzero degree; ties go to the gcd.
  const RPoly* sel = nullptr;
  if (g.degree() >= 1) sel = &g;
  if (quot.degree() >= 1 && (!sel || quot.degree() < sel->degree())) sel = &quot;
  if (!sel || rp_equal(*sel, g_prev)) return Outcome<RefineResult>::ok(RefineResult{g_prev, false});
  return Outcome<RefineResult>::ok(RefineResult{*sel, true});
}

Outcome<std::monostate> in_degree_check(const RingR& R, const RPoly& g) {
  const FieldCtx& F = R.ctx();
  std::size_t n = R.n();
  std::size_t tprime = static_cast<std::size_t>(g.degree());
  if (tprime < 1) throw Error(Errc::InvalidInput, "in_degree_check needs deg g >= 1");
  std::size_t m = n * tprime;
  if (F.p <= m) throw Error(Errc::PTooSmallForNodes, "in_degree_check needs p > n*t'");
  std::vector<std::pair<Fp, Fp>> points;
  points.reserve(m);
  for (Fp node = 0; node < m; ++node) {
    DensePoly cs = R.char_poly(rp_eval_scalar(R, g, node));
    points.emplace_back(node, F.neg(cs.coeffs[0]));
  }
  DensePoly r = interpolate_monic(F, points, m);
  DensePoly cur = r;
  for (std::size_t i = 0; i < tprime; ++i) {
    DensePoly g0 = poly_gcd(cur, R.modulus());
    if (g0.degree() > 0 && g0.degree() < static_cast<int>(n))
      return Outcome<std::monostate>::split(SplitCert{g0, R.modulus()});
    if (g0.degree() != static_cast<int>(n)) break;  // f no longer divides
    cur = divrem(cur, R.modulus()).first;
  }
  return Outcome<std::monostate>::ok({});
}

CBOutcome cross_balance_run(const RingR& R, const CrossConfig& cfg, const SplitterHook& hook) {
  const std::size_t n = R.n();
  const FieldCtx& F = R.ctx();
  if (n % 2 == 0 || n < 3) throw Error(Errc::InvalidInput, "cross balance needs odd degree >= 3");
  // The analysis assumes p > n^2, but the mechanics only need p > n (ring
  // construction) plus p > n*t' at each in-degree interpolation; small-p runs
  // surface PTooSmallForNodes if and when that bound actually bites.
  if (cfg.c < 1 || (cfg.k != 0 && cfg.k < 1)) throw Error(Errc::InvalidInput, "bad cross-balance config");
  const int k = cfg.k > 0 ? cfg.k : default_round_budget(n);

  CBOutcome out;
  AuxStream aux(cfg.provider, F, n);
  RPoly g;
  for (int l = 1; l <= k; ++l) {
    DensePoly pl = aux.next();
    RoundRecord rec;
    rec.l = l;
    rec.aux = to_text(pl);
    DensePoly fl = build_fl(R, pl);
    auto pf = power_form_check(R, pl, fl);
    if (pf.is_split()) {
      rec.event = RoundEvent::PowerFormViolation;
      out.trace.push_back(rec);
      out.split = pf.cert();
      out.final_g = g;
      return out;
    }
    const DensePoly& ftilde = pf.value().first;
    RPoly hprime;
    if (ftilde.degree() == 1) {
      // All root images coincide; h is the empty product.
      hprime = rp_one(R);
    } else {
      RingR Rl(ftilde);
      SBOutcome sb = square_balance_test(Rl);
      if (sb.is_split()) {
        rec.event = RoundEvent::NotSquareBalanced;
        out.trace.push_back(rec);
        out.split = pullback_factor(sb.split->factor, pl, R.modulus());
        out.final_g = g;
        return out;
      }
      hprime = lift_h(Rl, sb.h, pl, R);
    }

    bool changed;
    if (l == 1) {
      g = hprime;
      changed = true;
    } else {
      auto rr = refine(R, g, hprime, pl, cfg.modified_rule);
      if (rr.is_split()) {
        rec.event = RoundEvent::SplitFound;
        out.trace.push_back(rec);
        out.split = rr.cert();
        out.final_g = g;
        return out;
      }
      g = rr.value().g;
      changed = rr.value().changed;
    }
    if (!changed) {
      rec.event = RoundEvent::Unchanged;
      rec.degree = g.degree();
      out.trace.push_back(rec);
      continue;
    }
    rec.event = RoundEvent::Refined;
    rec.degree = g.degree();
    out.trace.push_back(rec);

    int tprime = g.degree();
    if (tprime <= cfg.c) {
      HookResult hr = hook(R, g);
      RoundRecord hrec{l, rec.aux, RoundEvent::SmallDegree, tprime};
      if (hr.decision == HookDecision::Split) {
        hrec.event = RoundEvent::SplitFound;
        out.trace.push_back(hrec);
        out.split = hr.cert;
        out.final_g = g;
        return out;
      }
      out.trace.push_back(hrec);
      out.final_g = g;
      return out;  // refinement cannot continue below the cutoff
    }
    auto idc = in_degree_check(R, g);
    if (idc.is_split()) {
      RoundRecord irec{l, rec.aux, RoundEvent::InDegreeSplit, tprime};
      out.trace.push_back(irec);
      out.split = idc.cert();
      out.final_g = g;
      return out;
    }
  }
  out.final_g = g;
  return out;
}

}  // namespace balfact
