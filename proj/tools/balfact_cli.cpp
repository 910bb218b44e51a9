#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "balfact/driver.hpp"
#include "balfact/oracle.hpp"
#include "balfact/selftest.hpp"

using nlohmann::ordered_json;
using namespace balfact;

namespace {

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::ParameterRegime:
    case Errc::PTooSmallForNodes:
    case Errc::DegreeTooLargeForP:
      return 4;
    case Errc::InternalInconsistency:
      return 5;
    default:
      return 3;
  }
}

struct CommonArgs {
  std::uint64_t modulus = 0;
  std::string coeffs;
  std::string roots;
  int k = 0;
  int c = 1;
  std::string aux = "power";
  std::uint64_t seed = 0;
  bool allow_fallback = true;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_input = true) {
  cmd->add_option("--modulus", a.modulus, "prime modulus p")->required();
  if (with_input) {
    cmd->add_option("--coeffs", a.coeffs, "comma-separated coefficients, lowest degree first");
    cmd->add_option("--roots", a.roots, "comma-separated roots (builds the polynomial)");
  }
  cmd->add_option("--k", a.k, "round budget (0 = default)");
  cmd->add_option("--c", a.c, "small-degree cutoff");
  cmd->add_option("--aux", a.aux, "auxiliary provider")->check(CLI::IsMember({"power", "random"}));
  cmd->add_option("--seed", a.seed, "seed for random draws");
  cmd->add_option("--allow-fallback", a.allow_fallback, "use the randomized fallback on stalls");
  cmd->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "text"}));
}

std::vector<Fp> parse_list(const std::string& text) {
  std::vector<Fp> out;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (cur.empty()) throw Error(Errc::InvalidInput, "empty entry in list");
      out.push_back(std::stoull(cur));
      cur.clear();
    } else if (ch == ' ') {
      continue;
    } else if (ch >= '0' && ch <= '9') {
      cur += ch;
    } else {
      throw Error(Errc::InvalidInput, std::string("bad character in list: ") + ch);
    }
  }
  return out;
}

struct ProblemInput {
  FieldCtx ctx;
  DensePoly f;
  std::vector<Fp> roots;  // empty unless --roots given
};

ProblemInput build_input(const CommonArgs& a) {
  FieldCtx ctx = FieldCtx::make(a.modulus);
  if (a.coeffs.empty() == a.roots.empty())
    throw Error(Errc::InvalidInput, "provide exactly one of --coeffs and --roots");
  if (!a.coeffs.empty()) {
    std::vector<Fp> c = parse_list(a.coeffs);
    for (auto& v : c) v %= ctx.p;
    return {ctx, DensePoly::from_coeffs(ctx, std::move(c)), {}};
  }
  std::vector<Fp> roots = parse_list(a.roots);
  for (auto& v : roots) v %= ctx.p;
  RootedInstance inst = make_rooted(ctx, roots);
  return {ctx, inst.modulus(), std::move(roots)};
}

CrossConfig build_config(const CommonArgs& a) {
  CrossConfig cfg;
  cfg.k = a.k;
  cfg.c = a.c;
  cfg.provider = {a.aux == "random" ? AuxKind::SeededRandom : AuxKind::Power, a.seed};
  return cfg;
}

ordered_json poly_json(const DensePoly& f) { return ordered_json(f.coeffs); }

ordered_json rpoly_json(const RingR& R, const RPoly& g) {
  ordered_json out = ordered_json::array();
  for (const auto& c : g.c) out.push_back(R.to_poly(c).coeffs);
  return out;
}

ordered_json record_json(const RoundRecord& r) {
  return ordered_json{{"l", r.l},
                      {"aux", r.aux},
                      {"event", round_event_name(r.event)},
                      {"degree", r.degree}};
}

ordered_json artifact_header(const CommonArgs& a, const ProblemInput& in) {
  ordered_json art;
  art["schema_version"] = 1;
  art["input"] = {{"p", in.ctx.p}, {"coeffs", in.f.coeffs}};
  if (!in.roots.empty()) art["input"]["roots"] = in.roots;
  art["config"] = {{"k", a.k},
                   {"c", a.c},
                   {"aux", a.aux},
                   {"seed", a.seed},
                   {"allow_fallback", a.allow_fallback}};
  return art;
}

void emit(const CommonArgs& a, const ordered_json& art, const std::string& text) {
  if (a.format == "json")
    std::cout << art.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_factor(const CommonArgs& a) {
  ProblemInput in = build_input(a);
  CrossConfig cfg = build_config(a);
  ordered_json art = artifact_header(a, in);

  auto t0 = std::chrono::steady_clock::now();
  FactorReport rep;
  bool stalled = false;
  try {
    rep = factor_driver(in.f, cfg, a.allow_fallback, a.seed);
  } catch (const FactoringStalled& e) {
    stalled = true;
    rep.trace.push_back(e.trace());
    rep.remainder = e.stuck();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();

  bool product_ok = true;
  if (!stalled) {
    DensePoly prod = rep.remainder;
    for (const auto& [lf, mult] : rep.linear_factors)
      for (int i = 0; i < mult; ++i) prod = prod * lf;
    product_ok = prod == monic(in.f);
    if (!product_ok) {
      std::cerr << "defect: factor product does not reproduce the input\n";
      return 5;
    }
  }

  ordered_json factors = ordered_json::array();
  for (const auto& [lf, mult] : rep.linear_factors)
    factors.push_back({{"coeffs", lf.coeffs}, {"multiplicity", mult}});
  art["outcome"] = {{"complete", !stalled},
                    {"factors", factors},
                    {"remainder", rep.remainder.coeffs}};
  ordered_json trace = ordered_json::array();
  for (const auto& stream : rep.trace) {
    ordered_json s = ordered_json::array();
    for (const auto& r : stream) s.push_back(record_json(r));
    trace.push_back(s);
  }
  art["trace"] = trace;
  art["fallback_used"] = rep.fallback_used;
  art["notes"] = rep.notes;
  art["seed"] = a.seed;
  art["product_check"] = product_ok;
  art["timing_ms"] = ms;

  std::string text;
  for (const auto& [lf, mult] : rep.linear_factors)
    text += "factor " + to_text(lf) + " multiplicity " + std::to_string(mult) + "\n";
  text += "remainder " + to_text(rep.remainder) + "\n";
  if (stalled) text += "stalled: cross balance failed and the fallback is disabled\n";
  emit(a, art, text);
  return stalled ? 2 : 0;
}

int cmd_sb_test(const CommonArgs& a) {
  ProblemInput in = build_input(a);
  ordered_json art = artifact_header(a, in);
  RingR R(in.f);
  SBOutcome sb = square_balance_test(R);
  std::string text;
  if (sb.is_split()) {
    art["outcome"] = {{"result", "Split"}, {"factor", sb.split->factor.coeffs}};
    text = "Split " + to_text(sb.split->factor) + "\n";
  } else {
    art["outcome"] = {{"result", "Balanced"}, {"t", sb.t}, {"h", rpoly_json(R, sb.h)}};
    text = "Balanced t=" + std::to_string(sb.t) + "\n";
    for (std::size_t i = 0; i < sb.h.c.size(); ++i)
      text += "h[" + std::to_string(i) + "] = " + to_text(R.to_poly(sb.h.c[i])) + "\n";
  }
  emit(a, art, text);
  return 0;
}

int cmd_cb_test(const CommonArgs& a) {
  ProblemInput in = build_input(a);
  CrossConfig cfg = build_config(a);
  ordered_json art = artifact_header(a, in);
  RingR R(in.f);
  CBOutcome cb = cross_balance_run(R, cfg, stalling_hook);
  ordered_json trace = ordered_json::array();
  std::string text;
  for (const auto& r : cb.trace) {
    trace.push_back(record_json(r));
    text += "round " + std::to_string(r.l) + ": " + round_event_name(r.event);
    if (r.degree >= 0) text += "(" + std::to_string(r.degree) + ")";
    text += " aux=" + r.aux + "\n";
  }
  art["trace"] = trace;
  if (cb.is_split()) {
    art["outcome"] = {{"result", "Split"}, {"factor", cb.split->factor.coeffs}};
    text += "Split " + to_text(cb.split->factor) + "\n";
  } else {
    art["outcome"] = {{"result", "Failure"}, {"final_g", rpoly_json(R, cb.final_g)}};
    text += "Failure\n";
  }
  emit(a, art, text);
  return 0;
}

int cmd_oracle(const CommonArgs& a, int rounds, bool check) {
  if (a.roots.empty()) throw Error(Errc::InvalidInput, "oracle requires --roots");
  ProblemInput in = build_input(a);
  RootedInstance inst = make_rooted(in.ctx, in.roots);
  CrossConfig cfg = build_config(a);
  AuxStream stream(cfg.provider, in.ctx, inst.n());
  std::vector<DensePoly> aux;
  for (int l = 0; l < rounds; ++l) aux.push_back(stream.next());

  auto snaps = d_set_sequence(inst, aux, cfg.modified_rule, cfg.c);
  ordered_json art = artifact_header(a, in);
  ordered_json jsnaps = ordered_json::array();
  std::string text;
  for (const auto& s : snaps) {
    ordered_json js{{"l", s.l},
                    {"regular", s.regular},
                    {"regularity", s.regularity},
                    {"equals_previous", s.equals_previous},
                    {"event", round_event_name(s.event)}};
    ordered_json ds = ordered_json::array();
    for (const auto& d : s.d_sets) ds.push_back(d);
    js["d_sets"] = ds;
    jsnaps.push_back(js);
    text += "G" + std::to_string(s.l) + ": ";
    text += s.regular ? std::to_string(s.regularity) + "-regular" : "irregular";
    text += s.equals_previous ? ", unchanged" : ", changed";
    text += std::string(" [") + round_event_name(s.event) + "]\n";
  }
  art["snapshots"] = jsnaps;

  int rc = 0;
  if (check) {
    auto expected = expected_records(inst, aux, cfg.modified_rule, cfg.c);
    CrossConfig ecfg = cfg;
    ecfg.k = rounds;
    CBOutcome cb = cross_balance_run(RingR(in.f), ecfg, stalling_hook);
    bool same = cb.trace.size() == expected.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i)
      same = cb.trace[i].l == expected[i].l && cb.trace[i].event == expected[i].event &&
             cb.trace[i].degree == expected[i].degree && cb.trace[i].aux == expected[i].aux;
    art["engine_matches"] = same;
    text += same ? "engine matches oracle\n" : "ENGINE/ORACLE MISMATCH\n";
    if (!same) rc = 1;
  }
  emit(a, art, text);
  return rc;
}

int cmd_survey(std::uint64_t p, std::uint64_t n, const std::string& mode, std::uint64_t trials,
               std::uint64_t seed) {
  FieldCtx ctx = FieldCtx::make(p);
  SurveyResult s = mode == "exhaustive" ? survey_exhaustive(ctx, n)
                                        : survey_sampled(ctx, n, trials, seed);
  double freq = s.total ? static_cast<double>(s.balanced) / static_cast<double>(s.total) : 0.0;
  std::cout << p << "," << n << "," << mode << "," << s.total << "," << s.balanced << ","
            << freq << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factoring over prime fields via balance tests"};
  app.require_subcommand(1);

  CommonArgs fa, sa, ca, oa;
  auto* factor = app.add_subcommand("factor", "fully factor a polynomial");
  add_common(factor, fa);
  auto* sb = app.add_subcommand("sb-test", "run the square-balance test once");
  add_common(sb, sa);
  auto* cb = app.add_subcommand("cb-test", "run the cross-balance rounds (no fallback)");
  add_common(cb, ca);

  int rounds = 2;
  bool check = false;
  auto* orc = app.add_subcommand("oracle", "brute-force reference trace from explicit roots");
  add_common(orc, oa);
  orc->add_option("--rounds", rounds, "number of rounds to simulate");
  orc->add_flag("--check", check, "diff the engine trace against the oracle");

  std::uint64_t sp = 0, sn = 0, strials = 1000, sseed = 0;
  std::string smode = "exhaustive";
  auto* survey = app.add_subcommand("survey", "count square-balanced root sets");
  survey->add_option("--p", sp, "prime")->required();
  survey->add_option("--n", sn, "root-set size")->required();
  survey->add_option("--mode", smode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  survey->add_option("--trials", strials, "sample count in sampled mode");
  survey->add_option("--seed", sseed, "sampling seed");

  auto* selftest = app.add_subcommand("selftest", "run the built-in golden checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 3;
  }

  try {
    if (factor->parsed()) return cmd_factor(fa);
    if (sb->parsed()) return cmd_sb_test(sa);
    if (cb->parsed()) return cmd_cb_test(ca);
    if (orc->parsed()) return cmd_oracle(oa, rounds, check);
    if (survey->parsed()) return cmd_survey(sp, sn, smode, strials, sseed);
    if (selftest->parsed()) return run_selftest(std::cout) == 0 ? 0 : 1;
  } catch (const FactoringStalled& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
