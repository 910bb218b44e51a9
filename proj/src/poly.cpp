#include "balfact/poly.hpp"

#include <sstream>

namespace balfact {

namespace {

void check_ctx(const DensePoly& a, const DensePoly& b) {
  if (a.ctx.p != b.ctx.p) throw Error(Errc::CtxMismatch, "polynomials over different fields");
}

}  // namespace

void DensePoly::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

Fp DensePoly::eval(Fp x) const {
  Fp r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = ctx.add(ctx.mul(r, x), coeffs[i]);
  return r;
}

DensePoly DensePoly::constant(const FieldCtx& ctx, Fp c) {
  DensePoly r{ctx, {c % ctx.p}};
  r.trim();
  return r;
}

DensePoly DensePoly::from_coeffs(const FieldCtx& ctx, std::vector<Fp> c) {
  for (auto& v : c) v %= ctx.p;
  DensePoly r{ctx, std::move(c)};
  r.trim();
  return r;
}

DensePoly DensePoly::from_roots(const FieldCtx& ctx, const std::vector<Fp>& roots) {
  DensePoly r = one(ctx);
  for (Fp root : roots) r = r * DensePoly{ctx, {ctx.neg(root % ctx.p), 1}};
  return r;
}

DensePoly operator+(const DensePoly& a, const DensePoly& b) {
  check_ctx(a, b);
  DensePoly r{a.ctx, {}};
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = a.ctx.add(a.at(i), b.at(i));
  r.trim();
  return r;
}

DensePoly operator-(const DensePoly& a, const DensePoly& b) {
  check_ctx(a, b);
  DensePoly r{a.ctx, {}};
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = a.ctx.sub(a.at(i), b.at(i));
  r.trim();
  return r;
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  check_ctx(a, b);
  if (a.is_zero() || b.is_zero()) return DensePoly::zero(a.ctx);
  DensePoly r{a.ctx, std::vector<Fp>(a.coeffs.size() + b.coeffs.size() - 1, 0)};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r.coeffs[i + j] = a.ctx.add(r.coeffs[i + j], a.ctx.mul(a.coeffs[i], b.coeffs[j]));
  }
  r.trim();
  return r;
}

DensePoly scalar_mul(const DensePoly& a, Fp c) {
  DensePoly r = a;
  for (auto& v : r.coeffs) v = a.ctx.mul(v, c);
  r.trim();
  return r;
}

std::pair<DensePoly, DensePoly> divrem(const DensePoly& a, const DensePoly& b) {
  check_ctx(a, b);
  if (b.is_zero()) throw Error(Errc::DivisionByZeroPoly, "division by zero polynomial");
  if (a.degree() < b.degree()) return {DensePoly::zero(a.ctx), a};
  const FieldCtx& F = a.ctx;
  Fp lcinv = F.inv(b.leading());
  std::vector<Fp> rem = a.coeffs;
  std::vector<Fp> quot(a.coeffs.size() - b.coeffs.size() + 1, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    Fp c = F.mul(rem[i + b.coeffs.size() - 1], lcinv);
    quot[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      rem[i + j] = F.sub(rem[i + j], F.mul(c, b.coeffs[j]));
  }
  DensePoly q{F, std::move(quot)}, r{F, std::move(rem)};
  q.trim();
  r.trim();
  return {q, r};
}

DensePoly monic(const DensePoly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scalar_mul(a, a.ctx.inv(a.leading()));
}

DensePoly poly_gcd(const DensePoly& a, const DensePoly& b) {
  check_ctx(a, b);
  if (a.is_zero() && b.is_zero()) throw Error(Errc::BothZero, "gcd of two zero polynomials");
  DensePoly x = a, y = b;
  while (!y.is_zero()) {
    DensePoly r = divrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

DensePoly derivative(const DensePoly& a) {
  DensePoly r{a.ctx, {}};
  for (std::size_t i = 1; i < a.coeffs.size(); ++i)
    r.coeffs.push_back(a.ctx.mul(a.coeffs[i], i % a.ctx.p));
  r.trim();
  return r;
}

DensePoly pow_mod(const DensePoly& base, std::uint64_t exp, const DensePoly& mod) {
  DensePoly r = DensePoly::one(base.ctx);
  DensePoly b = divrem(base, mod).second;
  while (exp) {
    if (exp & 1) r = divrem(r * b, mod).second;
    b = divrem(b * b, mod).second;
    exp >>= 1;
  }
  return r;
}

DensePoly compose_mod(const DensePoly& g, const DensePoly& h, const DensePoly& mod) {
  DensePoly r = DensePoly::zero(g.ctx);
  for (std::size_t i = g.coeffs.size(); i-- > 0;)
    r = divrem(r * h + DensePoly::constant(g.ctx, g.coeffs[i]), mod).second;
  return r;
}

DensePoly squarefree_part(const DensePoly& f) {
  if (!f.is_monic() || f.degree() < 1) throw Error(Errc::InvalidInput, "squarefree_part wants a monic nonconstant");
  if (f.ctx.p <= static_cast<Fp>(f.degree()))
    throw Error(Errc::DegreeTooLargeForP, "squarefree_part requires p > deg f");
  DensePoly g = poly_gcd(f, derivative(f));
  if (g.degree() == 0) return f;
  return divrem(f, g).first;
}

std::vector<std::pair<DensePoly, int>> squarefree_decompose(const DensePoly& f) {
  if (!f.is_monic() || f.degree() < 1) throw Error(Errc::InvalidInput, "squarefree_decompose wants a monic nonconstant");
  if (f.ctx.p <= static_cast<Fp>(f.degree()))
    throw Error(Errc::DegreeTooLargeForP, "squarefree_decompose requires p > deg f");
  // Yun's algorithm; valid since p > deg f.
  std::vector<std::pair<DensePoly, int>> out;
  DensePoly fprime = derivative(f);
  DensePoly a = poly_gcd(f, fprime);
  DensePoly b = divrem(f, a).first;
  DensePoly c = divrem(fprime, a).first;
  DensePoly d = c - derivative(b);
  int i = 1;
  while (b.degree() > 0) {
    DensePoly ai = poly_gcd(b, d);
    if (ai.degree() > 0) out.emplace_back(ai, i);
    b = divrem(b, ai).first;
    c = divrem(d, ai).first;
    d = c - derivative(b);
    ++i;
  }
  return out;
}

std::optional<std::pair<DensePoly, std::uint64_t>> perfect_power_decompose(const DensePoly& g) {
  DensePoly s = squarefree_part(g);
  if (g.degree() % s.degree() != 0) return std::nullopt;
  std::uint64_t d = static_cast<std::uint64_t>(g.degree() / s.degree());
  DensePoly acc = DensePoly::one(g.ctx);
  for (std::uint64_t i = 0; i < d; ++i) acc = acc * s;
  if (!(acc == g)) return std::nullopt;
  return std::make_pair(s, d);
}

std::pair<DensePoly, DensePoly> split_part(const DensePoly& f) {
  if (!f.is_monic() || f.degree() < 1) throw Error(Errc::InvalidInput, "split_part wants a monic nonconstant");
  DensePoly xp = pow_mod(DensePoly::x(f.ctx), f.ctx.p, f);
  DensePoly split = poly_gcd(xp - DensePoly::x(f.ctx), f);
  DensePoly rest = divrem(f, split).first;
  return {split, rest};
}

DensePoly interpolate_monic(const FieldCtx& ctx, const std::vector<std::pair<Fp, Fp>>& points,
                            std::size_t m) {
  if (points.size() != m) throw Error(Errc::TooFewPoints, "interpolate_monic needs exactly m points");
  if (m >= ctx.p) throw Error(Errc::TooFewPoints, "interpolate_monic requires m < p");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw Error(Errc::DuplicateNode, "interpolate_monic duplicate node");
  // Lagrange-interpolate v_s - y_s^m, then add back x^m.
  DensePoly acc = DensePoly::zero(ctx);
  DensePoly master = DensePoly::one(ctx);
  for (const auto& pt : points) master = master * DensePoly{ctx, {ctx.neg(pt.first), 1}};
  for (const auto& pt : points) {
    Fp target = ctx.sub(pt.second, ctx.pow(pt.first, m));
    if (target == 0) continue;
    DensePoly num = divrem(master, DensePoly{ctx, {ctx.neg(pt.first), 1}}).first;
    Fp denom = num.eval(pt.first);
    acc = acc + scalar_mul(num, ctx.mul(target, ctx.inv(denom)));
  }
  std::vector<Fp> xm(m + 1, 0);
  xm[m] = 1;
  return acc + DensePoly{ctx, std::move(xm)};
}

std::string to_text(const DensePoly& a) {
  std::ostringstream os;
  if (a.is_zero()) return "0";
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (i) os << ',';
    os << a.coeffs[i];
  }
  return os.str();
}

DensePoly parse_poly(const FieldCtx& ctx, const std::string& text) {
  std::vector<Fp> c;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw Error(Errc::InvalidInput, "empty coefficient in polynomial text");
    try {
      c.push_back(std::stoull(tok) % ctx.p);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "bad coefficient: " + tok);
    }
  }
  if (c.empty()) throw Error(Errc::InvalidInput, "empty polynomial text");
  return DensePoly::from_coeffs(ctx, std::move(c));
}

}  // namespace balfact
