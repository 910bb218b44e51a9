#include "balfact/driver.hpp"

#include <algorithm>

namespace balfact {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    out.push_back(q);
    while (m % q == 0) m /= q;
  }
  if (m > 1) out.push_back(m);
  return out;
}

// gcd(a - X, f) when a - X is a nonzero zero divisor, else nothing.
std::optional<SplitCert> fixed_point_factor(const RingR& R, const RElem& a) {
  DensePoly d = R.to_poly(R.sub(a, R.x_class()));
  if (d.is_zero()) return std::nullopt;
  DensePoly g = poly_gcd(d, R.modulus());
  if (g.degree() > 0 && g.degree() < static_cast<int>(R.n()))
    return SplitCert{g, R.modulus()};
  return std::nullopt;
}

}  // namespace

EndoResult endomorphism_split(const RingR& R, const RElem& beta) {
  if (!R.is_zero(R.eval_poly(R.modulus(), beta)))
    throw Error(Errc::NotAnEndomorphismRoot, "beta is not a root of the modulus");
  if (R.to_poly(beta) == DensePoly::x(R.ctx()))
    throw Error(Errc::IdentityEndomorphism, "beta is the identity endomorphism");

  const std::uint64_t n = R.n();
  const std::uint64_t bound = n * n * n;
  RElem x = R.x_class();
  RElem cur = beta;
  std::uint64_t order = 0;
  for (std::uint64_t m = 1; m <= bound; ++m) {
    if (auto c = fixed_point_factor(R, cur)) return EndoResult{*c, 0};
    if (R.to_poly(cur) == DensePoly::x(R.ctx())) {
      order = m;
      break;
    }
    cur = R.compose(cur, beta);
  }
  if (order == 0) return EndoResult{std::nullopt, bound};  // bound hit: treat as stalled
  for (std::uint64_t q : prime_divisors(order)) {
    RElem gamma = beta;
    for (std::uint64_t i = 1; i < order / q; ++i) gamma = R.compose(gamma, beta);
    if (auto c = fixed_point_factor(R, gamma)) return EndoResult{*c, 0};
  }
  return EndoResult{std::nullopt, order};
}

SplitCert cz_random_split(const DensePoly& f, std::uint64_t seed) {
  if (f.degree() < 2) throw Error(Errc::DegreeTooSmall, "splitting needs degree >= 2");
  const FieldCtx& F = f.ctx;
  DensePoly one = DensePoly::one(F);
  for (std::uint64_t t = 0; t < 4096; ++t) {
    Fp a = splitmix64(seed ^ splitmix64(t)) % F.p;
    DensePoly shift = DensePoly::from_coeffs(F, {a, 1});
    DensePoly chi = pow_mod(shift, (F.p - 1) / 2, f);
    DensePoly g = poly_gcd(chi - one, f);
    if (g.degree() > 0 && g.degree() < f.degree()) return SplitCert{g, f};
  }
  throw Error(Errc::InternalInconsistency, "random splitting exhausted its draw budget");
}

namespace {

struct DriverState {
  const CrossConfig& cfg;
  bool allow_fallback;
  std::uint64_t seed;
  std::uint64_t subcounter = 0;
  FactorReport& report;
};

void split_completely(DriverState& st, const DensePoly& f, int mult);

SplitCert split_via_fallback(DriverState& st, const DensePoly& f) {
  st.report.fallback_used = true;
  return cz_random_split(f, splitmix64(st.seed ^ splitmix64(st.subcounter++)));
}

// f monic squarefree and completely splitting; emit its linear factors.
void split_completely(DriverState& st, const DensePoly& f, int mult) {
  const std::size_t n = static_cast<std::size_t>(f.degree());
  if (n == 1) {
    st.report.linear_factors.emplace_back(f, mult);
    return;
  }
  SplitCert cert{DensePoly::zero(f.ctx), f};
  if (n % 2 == 0) {
    if (f.ctx.p <= n) {
      if (!st.allow_fallback)
        throw Error(Errc::ParameterRegime, "square balance needs p > deg f");
      st.report.notes.push_back("p <= deg f: rerouted degree-" + std::to_string(n) +
                                " piece to the randomized fallback");
      cert = split_via_fallback(st, f);
    } else {
      SBOutcome sb = square_balance_test(RingR(f));
      if (!sb.is_split())
        throw Error(Errc::InternalInconsistency,
                    "even-degree completely splitting input passed the balance test");
      cert = *sb.split;
    }
  } else {
    if (f.ctx.p <= n) {
      if (!st.allow_fallback)
        throw Error(Errc::ParameterRegime, "cross balance needs p > deg f");
      st.report.notes.push_back("p <= deg f: rerouted degree-" + std::to_string(n) +
                                " piece to the randomized fallback");
      cert = split_via_fallback(st, f);
    } else {
      RingR R(f);
      SplitterHook hook = [](const RingR& Rr, const RPoly& g) -> HookResult {
        if (g.degree() != 1) return HookResult{HookDecision::Stalled, std::nullopt};
        RElem beta = Rr.neg(g.c[0]);
        try {
          EndoResult er = endomorphism_split(Rr, beta);
          if (er.is_split()) return HookResult{HookDecision::Split, er.split};
        } catch (const Error&) {
          // not a usable endomorphism; fall through to the stall path
        }
        return HookResult{HookDecision::Stalled, std::nullopt};
      };
      std::optional<CBOutcome> cb;
      try {
        cb = cross_balance_run(R, st.cfg, hook);
      } catch (const Error& e) {
        if (e.code() != Errc::PTooSmallForNodes || !st.allow_fallback) throw;
        st.report.notes.push_back("p <= n*t' in the in-degree check: rerouted degree-" +
                                  std::to_string(n) + " piece to the randomized fallback");
      }
      if (cb) {
        st.report.trace.push_back(cb->trace);
        if (cb->is_split()) {
          cert = *cb->split;
        } else if (st.allow_fallback) {
          cert = split_via_fallback(st, f);
        } else {
          throw FactoringStalled(cb->trace, f);
        }
      } else {
        cert = split_via_fallback(st, f);
      }
    }
  }
  DensePoly cofactor = divrem(f, cert.factor).first;
  split_completely(st, cert.factor, mult);
  split_completely(st, cofactor, mult);
}

}  // namespace

FactorReport factor_driver(const DensePoly& f_raw, const CrossConfig& cfg, bool allow_fallback,
                           std::uint64_t seed) {
  if (f_raw.degree() < 1) throw Error(Errc::InvalidInput, "factoring needs degree >= 1");
  const FieldCtx& F = f_raw.ctx;
  FactorReport report;
  report.remainder = DensePoly::one(F);
  DriverState st{cfg, allow_fallback, seed, 0, report};

  DensePoly f = monic(f_raw);
  for (const auto& [part, mult] : squarefree_decompose(f)) {
    if (part.degree() < 1) continue;
    auto [lin, rest] = split_part(part);
    for (int i = 0; i < mult; ++i) report.remainder = report.remainder * rest;
    if (lin.degree() >= 1) split_completely(st, lin, mult);
  }
  std::sort(report.linear_factors.begin(), report.linear_factors.end(),
            [](const auto& a, const auto& b) {
              return a.first.coeffs[0] < b.first.coeffs[0];
            });
  return report;
}

}  // namespace balfact
