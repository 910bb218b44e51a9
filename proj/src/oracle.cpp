#include "balfact/oracle.hpp"

#include <algorithm>
#include <map>

namespace balfact {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Edge orientation of the canonical-square-root tournament: j points at i
// when the canonical root of (a - b)^2 is b - a.
bool in_delta(const FieldCtx& F, Fp a, Fp b) {
  if (a == b) return false;
  Fp d = F.sub(a, b);
  return sigma_field(F, F.mul(d, d)) == F.neg(d);
}

struct Sim {
  std::vector<GraphSnapshot> snaps;
  std::vector<RoundRecord> records;
  // Per completed balance test: for each root index, the image values w with
  // an edge into p_l(xi_i); empty list of lists when the round never got there.
  std::vector<std::vector<std::vector<Fp>>> h_neighbours;
  // D sets after each completed refine.
  std::vector<std::vector<std::vector<std::size_t>>> d_after;
};

Sim simulate(const RootedInstance& inst, const std::vector<DensePoly>& aux, bool modified,
             int c) {
  const FieldCtx& F = inst.ctx;
  const std::size_t n = inst.n();
  if (aux.empty() || !(aux[0] == DensePoly::x(F)))
    throw Error(Errc::InvalidInput, "auxiliary sequence must start with y");

  Sim sim;
  std::vector<std::vector<std::size_t>> D;
  for (std::size_t li = 0; li < aux.size(); ++li) {
    const int l = static_cast<int>(li) + 1;
    const DensePoly& pl = aux[li];
    RoundRecord rec;
    rec.l = l;
    rec.aux = to_text(pl);
    GraphSnapshot snap;
    snap.l = l;

    std::vector<Fp> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = pl.eval(inst.roots[i]);
    std::map<Fp, std::size_t> mult;
    for (Fp x : v) ++mult[x];
    bool uniform_mult = true;
    for (const auto& [val, cnt] : mult) uniform_mult &= cnt == mult.begin()->second;
    if (!uniform_mult) {
      rec.event = snap.event = RoundEvent::PowerFormViolation;
      snap.d_sets = D;
      sim.records.push_back(rec);
      sim.snaps.push_back(snap);
      return sim;
    }

    std::vector<std::vector<Fp>> hn(n);
    if (mult.size() > 1) {
      std::vector<Fp> distinct;
      for (const auto& [val, cnt] : mult) distinct.push_back(val);
      std::vector<std::size_t> tilde_deg;
      for (Fp a : distinct) {
        std::size_t d = 0;
        for (Fp b : distinct) d += in_delta(F, a, b);
        tilde_deg.push_back(d);
      }
      if (!std::all_of(tilde_deg.begin(), tilde_deg.end(),
                       [&](std::size_t d) { return d == tilde_deg[0]; })) {
        rec.event = snap.event = RoundEvent::NotSquareBalanced;
        snap.d_sets = D;
        sim.records.push_back(rec);
        sim.snaps.push_back(snap);
        return sim;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (Fp b : distinct)
          if (in_delta(F, v[i], b)) hn[i].push_back(b);
    }
    sim.h_neighbours.push_back(hn);

    std::vector<std::vector<std::size_t>> delta(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (in_delta(F, v[i], v[j])) delta[i].push_back(j);

    bool changed;
    if (l == 1) {
      D = delta;
      changed = true;
    } else {
      std::vector<std::vector<std::size_t>> T(n), C(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : D[i])
          (std::binary_search(delta[i].begin(), delta[i].end(), j) ? T[i] : C[i]).push_back(j);
      bool t_uniform = std::all_of(T.begin(), T.end(),
                                   [&](const auto& s) { return s.size() == T[0].size(); });
      if (!t_uniform) {
        rec.event = snap.event = RoundEvent::SplitFound;
        snap.d_sets = D;
        sim.records.push_back(rec);
        sim.snaps.push_back(snap);
        return sim;
      }
      std::size_t a = T[0].size();
      std::size_t b = D[0].size() - a;
      const std::vector<std::vector<std::size_t>>* sel = nullptr;
      if (modified) {
        if (a >= 1) sel = &T;
        if (b >= 1 && (!sel || b < a)) sel = &C;
      } else {
        if (a >= 1) sel = &T;
      }
      if (!sel || (*sel)[0].size() == D[0].size()) {
        changed = false;
      } else {
        D = *sel;
        changed = true;
      }
    }
    sim.d_after.push_back(D);

    std::size_t tprime = D[0].size();
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& s : D)
      for (std::size_t j : s) ++indeg[j];
    bool in_uniform = std::all_of(indeg.begin(), indeg.end(),
                                  [&](std::size_t d) { return d == indeg[0]; });
    snap.d_sets = D;
    snap.regular = in_uniform;
    snap.regularity = in_uniform ? static_cast<int>(tprime) : -1;
    snap.equals_previous = !changed;

    if (!changed) {
      rec.event = snap.event = RoundEvent::Unchanged;
      rec.degree = static_cast<int>(tprime);
      sim.records.push_back(rec);
      sim.snaps.push_back(snap);
      continue;
    }
    rec.event = RoundEvent::Refined;
    rec.degree = static_cast<int>(tprime);
    sim.records.push_back(rec);
    if (static_cast<int>(tprime) <= c) {
      snap.event = RoundEvent::SmallDegree;
      sim.records.push_back(RoundRecord{l, rec.aux, RoundEvent::SmallDegree,
                                        static_cast<int>(tprime)});
      sim.snaps.push_back(snap);
      return sim;
    }
    if (!in_uniform) {
      snap.event = RoundEvent::InDegreeSplit;
      sim.records.push_back(RoundRecord{l, rec.aux, RoundEvent::InDegreeSplit,
                                        static_cast<int>(tprime)});
      sim.snaps.push_back(snap);
      return sim;
    }
    snap.event = RoundEvent::Refined;
    sim.snaps.push_back(snap);
  }
  return sim;
}

}  // namespace

RootedInstance make_rooted(const FieldCtx& ctx, std::vector<Fp> roots) {
  if (roots.size() < 2) throw Error(Errc::InvalidInput, "rooted instance needs n >= 2");
  for (auto& r : roots) r %= ctx.p;
  auto sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::InvalidInput, "rooted instance needs distinct roots");
  return RootedInstance{ctx, std::move(roots)};
}

DeltaSets delta_sets(const RootedInstance& inst, const DensePoly& pl) {
  const FieldCtx& F = inst.ctx;
  const std::size_t n = inst.n();
  std::vector<Fp> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = pl.eval(inst.roots[i]);
  DeltaSets out;
  out.delta.resize(n);
  out.delta_bar.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      (in_delta(F, v[i], v[j]) ? out.delta[i] : out.delta_bar[i]).push_back(j);
    }
  return out;
}

std::vector<GraphSnapshot> d_set_sequence(const RootedInstance& inst,
                                          const std::vector<DensePoly>& aux, bool modified,
                                          int c) {
  return simulate(inst, aux, modified, c).snaps;
}

std::vector<RoundRecord> expected_records(const RootedInstance& inst,
                                          const std::vector<DensePoly>& aux, bool modified,
                                          int c) {
  return simulate(inst, aux, modified, c).records;
}

RPoly crt_assemble(const RingR& R, const std::vector<DensePoly>& components,
                   const std::vector<Fp>& roots) {
  const FieldCtx& F = R.ctx();
  const std::size_t n = roots.size();
  if (components.size() != n || n != R.n())
    throw Error(Errc::InvalidInput, "component count must match the root count");
  std::vector<DensePoly> chi;
  chi.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Fp> others;
    Fp denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      others.push_back(roots[j]);
      denom = F.mul(denom, F.sub(roots[i], roots[j]));
    }
    chi.push_back(scalar_mul(DensePoly::from_roots(F, others), F.inv(denom)));
  }
  std::size_t len = 0;
  for (const auto& q : components) len = std::max(len, q.coeffs.size());
  RPoly out;
  for (std::size_t k = 0; k < len; ++k) {
    DensePoly ck = DensePoly::zero(F);
    for (std::size_t i = 0; i < n; ++i) ck = ck + scalar_mul(chi[i], components[i].at(k));
    out.c.push_back(R.from_poly(ck));
  }
  rp_trim(R, out);
  return out;
}

DensePoly rp_component(const RingR& R, const RPoly& g, Fp xi) {
  std::vector<Fp> c;
  for (const RElem& coeff : g.c) c.push_back(R.to_poly(coeff).eval(xi));
  return DensePoly::from_coeffs(R.ctx(), std::move(c));
}

RPoly expected_h(const RootedInstance& inst, int l, const std::vector<DensePoly>& aux) {
  Sim sim = simulate(inst, aux, true, 0);  // c=0: never stall on small degree
  if (static_cast<int>(sim.h_neighbours.size()) < l)
    throw Error(Errc::NotBalancedAtRound, "instance is not balanced through round " +
                                              std::to_string(l));
  RingR R(inst.modulus());
  std::vector<DensePoly> comps;
  for (const auto& ws : sim.h_neighbours[l - 1])
    comps.push_back(DensePoly::from_roots(inst.ctx, ws));
  return crt_assemble(R, comps, inst.roots);
}

RPoly expected_g(const RootedInstance& inst, int l, const std::vector<DensePoly>& aux,
                 bool modified) {
  Sim sim = simulate(inst, aux, modified, 0);
  if (static_cast<int>(sim.d_after.size()) < l)
    throw Error(Errc::NotBalancedAtRound, "instance is not balanced through round " +
                                              std::to_string(l));
  RingR R(inst.modulus());
  std::vector<DensePoly> comps;
  for (const auto& s : sim.d_after[l - 1]) {
    std::vector<Fp> rs;
    for (std::size_t j : s) rs.push_back(inst.roots[j]);
    comps.push_back(DensePoly::from_roots(inst.ctx, rs));
  }
  return crt_assemble(R, comps, inst.roots);
}

bool is_square_balanced(const FieldCtx& ctx, const std::vector<Fp>& roots) {
  const std::size_t n = roots.size();
  std::size_t first = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n; ++j) d += in_delta(ctx, roots[i], roots[j]);
    if (i == 0)
      first = d;
    else if (d != first)
      return false;
  }
  return true;
}

SurveyResult survey_exhaustive(const FieldCtx& ctx, std::size_t n) {
  if (n < 2 || n > ctx.p) throw Error(Errc::InvalidInput, "survey needs 2 <= n <= p");
  long double binom = 1;
  for (std::size_t i = 0; i < n; ++i) binom = binom * static_cast<long double>(ctx.p - i) / (i + 1);
  if (binom > 1e7L) throw Error(Errc::TooLargeForExhaustive, "C(p, n) exceeds 10^7");

  SurveyResult out;
  std::vector<Fp> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    ++out.total;
    out.balanced += is_square_balanced(ctx, idx);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == ctx.p - n + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

SurveyResult survey_sampled(const FieldCtx& ctx, std::size_t n, std::uint64_t trials,
                            std::uint64_t seed) {
  if (n < 2 || n > ctx.p) throw Error(Errc::InvalidInput, "survey needs 2 <= n <= p");
  SurveyResult out;
  std::uint64_t ctr = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<Fp> roots;
    while (roots.size() < n) {
      Fp r = mix64(seed ^ mix64(ctr++)) % ctx.p;
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    ++out.total;
    out.balanced += is_square_balanced(ctx, roots);
  }
  return out;
}

}  // namespace balfact
