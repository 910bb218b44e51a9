// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier statistical sweeps live here rather than in the unit
// suites so their budgets are explicit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "balfact/driver.hpp"
#include "balfact/oracle.hpp"
#include "../tests/support.hpp"

using namespace balfact;
using testsupport::Rng;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail = "") {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << what;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
}

bool run_guarded(const std::function<bool()>& body, std::string& detail) {
  try {
    return body();
  } catch (const std::exception& e) {
    detail = e.what();
    return false;
  }
}

void criterion(int idx, const std::string& what, const std::function<bool()>& body) {
  std::string detail;
  bool ok = run_guarded(body, detail);
  report(idx, what, ok, detail);
}

std::vector<DensePoly> power_aux(const FieldCtx& F, std::size_t n, int k) {
  AuxStream s({AuxKind::Power, 0}, F, n);
  std::vector<DensePoly> aux;
  for (int l = 0; l < k; ++l) aux.push_back(s.next());
  return aux;
}

int ceil_log2(std::size_t n) {
  int lg = 0;
  while ((std::size_t{1} << lg) < n) ++lg;
  return lg;
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(BALFACT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  pclose(pipe);
  return out;
}

std::string strip_timing(const std::string& json) {
  std::istringstream is(json);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.find("\"timing_ms\"") == std::string::npos) os << line << "\n";
  return os.str();
}

}  // namespace

int main() {
  criterion(1, "golden balance-test instances over F_7", [] {
    auto t0 = std::chrono::steady_clock::now();
    FieldCtx F = FieldCtx::make(7);
    RingR R1(DensePoly::from_coeffs(F, {6, 0, 0, 1}));
    SBOutcome a = square_balance_test(R1);
    bool ok = !a.is_split() && a.t == 1 &&
              rp_component(R1, a.h, 1) == DensePoly::from_roots(F, {2}) &&
              rp_component(R1, a.h, 2) == DensePoly::from_roots(F, {4}) &&
              rp_component(R1, a.h, 4) == DensePoly::from_roots(F, {1});
    SBOutcome b = square_balance_test(RingR(DensePoly::from_coeffs(F, {1, 4, 1, 1})));
    ok = ok && b.is_split() && b.split->factor == DensePoly::from_coeffs(F, {6, 2, 1});
    SBOutcome c = square_balance_test(RingR(DensePoly::from_coeffs(F, {6, 0, 1})));
    ok = ok && c.is_split();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    return ok && ms < 1000;
  });

  criterion(2, "canonical square root vs brute force and random spot checks", [] {
    for (Fp p = 3; p < 1000; p += 2) {
      if (!is_prime_u64(p)) continue;
      FieldCtx F = FieldCtx::make(p);
      for (Fp a = 1; a < p; ++a) {
        if (!is_qr(F, a)) continue;
        Fp root = 0;
        for (Fp r = 1; r < p; ++r)
          if (F.mul(r, r) == a) {
            root = r;
            break;
          }
        Fp canonical = 0;
        for (Fp r : {root, F.neg(root)}) {
          Fp z = F.pow(r, F.w), g = F.pow(F.eta, F.w), acc = 1, u = 0;
          while (acc != z) {
            acc = F.mul(acc, g);
            ++u;
          }
          if (u < (Fp{1} << (F.e - 1))) {
            canonical = r;
            break;
          }
        }
        if (sigma_field(F, a) != canonical) return false;
      }
    }
    Rng rng{424242};
    for (int t = 0; t < 100000; ++t) {
      Fp p = testsupport::random_prime(rng, 32 + static_cast<unsigned>(rng.below(29)));
      FieldCtx F = FieldCtx::make(p);
      Fp a = 1 + rng.below(p - 1);
      Fp sq = F.mul(a, a);
      Fp s = sigma_field(F, sq);
      if (s != a && s != F.neg(a)) return false;
      if (two_adic_split(F, s).u >= (Fp{1} << (F.e - 1))) return false;
    }
    return true;
  });

  criterion(3, "algebra sigma equals componentwise scalar sigma on 200 instances", [] {
    Rng rng{333};
    const std::size_t ns[] = {3, 5, 7, 9};
    for (int t = 0; t < 200; ++t) {
      FieldCtx F = FieldCtx::make(testsupport::random_prime(rng, 32));
      std::size_t n = ns[t % 4];
      std::vector<Fp> roots = testsupport::random_roots(rng, F, n);
      RingR R(DensePoly::from_roots(F, roots));
      SAlg S(R);
      SAlg::Elem d = S.sub(S.x_elem(), S.y_class());
      SAlg::Elem s = S.sigma(S.mul(d, d));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          Fp acc = 0;
          for (std::size_t k = S.rank(); k-- > 0;)
            acc = F.add(F.mul(acc, roots[j]), R.to_poly(s[k]).eval(roots[i]));
          Fp diff = F.sub(roots[i], roots[j]);
          if (acc != sigma_field(F, F.mul(diff, diff))) return false;
        }
    }
    return true;
  });

  criterion(4, "engine trace and h/g equal the root-level simulation on 200 instances", [] {
    Rng rng{444};
    const std::size_t ns[] = {3, 5, 7, 9};
    for (int t = 0; t < 200; ++t) {
      FieldCtx F = FieldCtx::make(testsupport::random_prime(rng, 32));
      std::size_t n = ns[t % 4];
      RootedInstance inst = make_rooted(F, testsupport::random_roots(rng, F, n));
      CrossConfig cfg;
      int k = default_round_budget(n);
      std::vector<DensePoly> aux = power_aux(F, n, k);
      RingR R(inst.modulus());
      CBOutcome cb = cross_balance_run(R, cfg, stalling_hook);
      auto expected = expected_records(inst, aux, cfg.modified_rule, cfg.c);
      if (cb.trace.size() != expected.size()) return false;
      for (std::size_t i = 0; i < expected.size(); ++i)
        if (cb.trace[i].l != expected[i].l || cb.trace[i].event != expected[i].event ||
            cb.trace[i].degree != expected[i].degree || cb.trace[i].aux != expected[i].aux)
          return false;
      // Balanced round 1: engine h equals the simulated h.
      if (!expected.empty() && expected[0].event == RoundEvent::Refined) {
        SBOutcome sb = square_balance_test(R);
        if (sb.is_split()) return false;
        if (!rp_equal(sb.h, expected_h(inst, 1, aux))) return false;
      }
      // Last completed refinement: engine g equals the simulated g.
      int last_refine = 0;
      for (const auto& r : cb.trace)
        if (r.event == RoundEvent::Refined || r.event == RoundEvent::Unchanged)
          last_refine = r.l;
      if (last_refine >= 1 &&
          !rp_equal(cb.final_g, expected_g(inst, last_refine, aux, cfg.modified_rule)))
        return false;
    }
    return true;
  });

  criterion(5, "multi-round golden instance over F_11", [] {
    FieldCtx F = FieldCtx::make(11);
    RootedInstance inst = make_rooted(F, {1, 3, 4, 5, 9});
    std::vector<DensePoly> aux = {DensePoly::x(F), DensePoly::from_coeffs(F, {0, 0, 1})};
    RingR R(inst.modulus());
    RPoly g1 = expected_g(inst, 1, aux, true);
    if (g1.degree() != 2 || in_degree_check(R, g1).is_split()) return false;
    auto rr = refine(R, g1, expected_h(inst, 2, aux), aux[1], true);
    if (rr.is_split() || !rr.value().changed || rr.value().g.degree() != 1) return false;
    if (2 * rr.value().g.degree() > g1.degree()) return false;  // halving observed
    const std::pair<Fp, Fp> map[] = {{1, 4}, {3, 1}, {4, 5}, {5, 9}, {9, 3}};
    for (const auto& [from, to] : map)
      if (rp_component(R, rr.value().g, from) != DensePoly::from_roots(F, {to})) return false;
    return true;
  });

  criterion(6, "in-degree split golden instance over F_7", [] {
    FieldCtx F = FieldCtx::make(7);
    RingR R(DensePoly::from_roots(F, {1, 2, 4}));
    RPoly g = crt_assemble(R,
                           {DensePoly::from_roots(F, {2}), DensePoly::from_roots(F, {1}),
                            DensePoly::from_roots(F, {1})},
                           {1, 2, 4});
    // r(x) = (x-1)^2 (x-2) = x^3 + 3x^2 + 5x + 5 over F_7; probe i=0 splits.
    std::vector<std::pair<Fp, Fp>> pts;
    for (Fp node = 0; node < 3; ++node)
      pts.emplace_back(node, F.neg(R.char_poly(rp_eval_scalar(R, g, node)).coeffs[0]));
    if (!(interpolate_monic(F, pts, 3) == DensePoly::from_coeffs(F, {5, 5, 3, 1}))) return false;
    auto out = in_degree_check(R, g);
    return out.is_split() && out.cert().factor == DensePoly::from_coeffs(F, {2, 4, 1});
  });

  // Criteria 7 and 9 share one sweep.
  static std::vector<std::pair<std::size_t, std::vector<std::vector<RoundRecord>>>> sweep_traces;
  criterion(7, "1000 random instances fully factored within budget", [] {
    Rng rng{777};
    const std::size_t ns[] = {3, 5, 7, 9, 11};
    auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < 1000; ++t) {
      FieldCtx F =
          FieldCtx::make(testsupport::random_prime(rng, 32 + static_cast<unsigned>(rng.below(29))));
      std::size_t n = ns[t % 5];
      std::vector<Fp> roots = testsupport::random_roots(rng, F, n);
      auto rep = factor_driver(DensePoly::from_roots(F, roots), CrossConfig{}, true, rng.next());
      if (rep.linear_factors.size() != n) return false;
      std::vector<Fp> found;
      DensePoly prod = rep.remainder;
      for (const auto& [lf, mult] : rep.linear_factors) {
        if (mult != 1) return false;
        found.push_back(F.neg(lf.coeffs[0]));
        prod = prod * lf;
      }
      std::sort(found.begin(), found.end());
      std::sort(roots.begin(), roots.end());
      if (found != roots) return false;
      if (!(prod == DensePoly::from_roots(F, found))) return false;
      sweep_traces.emplace_back(n, rep.trace);
    }
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    return secs < 120;
  });

  criterion(8, "200 even-degree completely splitting instances split by the balance test", [] {
    Rng rng{888};
    for (int t = 0; t < 200; ++t) {
      FieldCtx F = FieldCtx::make(testsupport::random_prime(rng, 32));
      std::size_t n = 2 + 2 * rng.below(5);
      RingR R(DensePoly::from_roots(F, testsupport::random_roots(rng, F, n)));
      SBOutcome sb = square_balance_test(R);
      if (!sb.is_split()) return false;
      if (!divrem(R.modulus(), sb.split->factor).second.is_zero()) return false;
    }
    return true;
  });

  criterion(9, "degree decreases halve and refined rounds stay within the log bound", [] {
    if (sweep_traces.empty()) return false;
    for (const auto& [n, streams] : sweep_traces)
      for (const auto& stream : streams) {
        int prev = -1, refined = 0;
        for (const auto& r : stream) {
          if (r.event == RoundEvent::Refined) ++refined;
          if (r.event != RoundEvent::Refined && r.event != RoundEvent::Unchanged) continue;
          if (prev >= 0) {
            if (r.degree > prev) return false;
            if (r.degree < prev && 2 * r.degree > prev) return false;
          }
          prev = r.degree;
        }
        if (refined > ceil_log2(n) + 1) return false;
      }
    return true;
  });

  criterion(10, "survey counts exact, with an independent recount for (11,5)", [] {
    auto s7 = survey_exhaustive(FieldCtx::make(7), 3);
    auto s5 = survey_exhaustive(FieldCtx::make(5), 3);
    if (s7.total != 35 || s7.balanced != 14) return false;
    if (s5.total != 10 || s5.balanced != 5) return false;
    // Independent recount over F_11 (p = 3 mod 4, so the edge j -> i exists
    // exactly when xi_i - xi_j is a nonresidue) via bitmask enumeration.
    auto legendre_qr = [](Fp d) { // Euler's criterion mod 11, spelled out
      Fp acc = 1;
      for (int i = 0; i < 5; ++i) acc = acc * d % 11;
      return acc == 1;
    };
    std::uint64_t total = 0, balanced = 0;
    for (unsigned mask = 0; mask < (1u << 11); ++mask) {
      if (__builtin_popcount(mask) != 5) continue;
      ++total;
      std::vector<Fp> roots;
      for (Fp v = 0; v < 11; ++v)
        if (mask & (1u << v)) roots.push_back(v);
      bool reg = true;
      for (Fp a : roots) {
        int out_deg = 0;
        for (Fp b : roots)
          if (a != b && !legendre_qr((a + 11 - b) % 11)) ++out_deg;
        reg = reg && out_deg == 2;
      }
      balanced += reg;
    }
    auto s11 = survey_exhaustive(FieldCtx::make(11), 5);
    return total == 462 && s11.total == 462 && s11.balanced == balanced && balanced == 22;
  });

  criterion(11, "random auxiliaries keep unchanged rounds rare on balanced instances", [] {
    const struct {
      Fp n;
      double bound;
    } cases[] = {{5, 0.25}, {9, 0.05}};
    for (const auto& c : cases) {
      FieldCtx F = testsupport::balanced_field(c.n, 1000);
      RootedInstance inst = make_rooted(F, testsupport::roots_of_unity(F, c.n));
      RingR R(inst.modulus());
      std::uint64_t rounds = 0, unchanged = 0;
      for (std::uint64_t seed = 1; rounds < 500; ++seed) {
        CrossConfig cfg;
        cfg.provider = {AuxKind::SeededRandom, seed};
        CBOutcome cb = cross_balance_run(R, cfg, stalling_hook);
        for (const auto& r : cb.trace) {
          if (r.l < 2) continue;  // round 1 is always the identity auxiliary
          if (r.event == RoundEvent::SmallDegree || r.event == RoundEvent::InDegreeSplit)
            continue;  // second record of an already counted round
          ++rounds;
          if (r.event == RoundEvent::Unchanged) ++unchanged;
        }
      }
      if (static_cast<double>(unchanged) > c.bound * static_cast<double>(rounds)) return false;
    }
    return true;
  });

  criterion(12, "repeated CLI runs are byte-identical once timing is stripped", [] {
    std::string a1 = run_cli("factor --modulus 7 --coeffs 1,4,1,1 --format json");
    std::string a2 = run_cli("factor --modulus 7 --coeffs 1,4,1,1 --format json");
    if (a1.empty() || strip_timing(a1) != strip_timing(a2)) return false;
    if (a1.find("\"schema_version\": 1") == std::string::npos) return false;
    std::string b1 = run_cli("factor --modulus 7 --coeffs 6,0,0,1 --seed 99 --format json");
    std::string b2 = run_cli("factor --modulus 7 --coeffs 6,0,0,1 --seed 99 --format json");
    if (b1.empty() || strip_timing(b1) != strip_timing(b2)) return false;
    if (b1.find("\"fallback_used\": true") == std::string::npos) return false;
    return true;
  });

  std::cout << (failures == 0 ? "acceptance: all criteria satisfied"
                              : "acceptance: FAILURES PRESENT")
            << "\n";
  return failures == 0 ? 0 : 1;
}
