#include "balfact/ring.hpp"

namespace balfact {

RingR::RingR(DensePoly f) : f_(std::move(f)), n_(static_cast<std::size_t>(f_.degree())) {
  if (!f_.is_monic() || f_.degree() < 2) throw Error(Errc::InvalidInput, "ring modulus must be monic of degree >= 2");
  if (static_cast<Fp>(f_.degree()) >= f_.ctx.p) throw Error(Errc::ParameterRegime, "ring modulus degree must be < p");
  if (poly_gcd(f_, derivative(f_)).degree() != 0)
    throw Error(Errc::InvalidInput, "ring modulus must be squarefree");
}

RElem RingR::one() const { return constant(1); }

RElem RingR::constant(Fp c) const {
  RElem r(n_, 0);
  r[0] = c % ctx().p;
  return r;
}

RElem RingR::x_class() const {
  RElem r(n_, 0);
  r[1] = 1;
  return r;
}

RElem RingR::from_poly(const DensePoly& g) const {
  DensePoly r = divrem(g, f_).second;
  RElem out(n_, 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) out[i] = r.coeffs[i];
  return out;
}

DensePoly RingR::to_poly(const RElem& a) const {
  DensePoly r{ctx(), a};
  r.trim();
  return r;
}

bool RingR::is_zero(const RElem& a) const {
  for (Fp v : a)
    if (v != 0) return false;
  return true;
}

RElem RingR::add(const RElem& a, const RElem& b) const {
  RElem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = ctx().add(a[i], b[i]);
  return r;
}

RElem RingR::sub(const RElem& a, const RElem& b) const {
  RElem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = ctx().sub(a[i], b[i]);
  return r;
}

RElem RingR::neg(const RElem& a) const {
  RElem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = ctx().neg(a[i]);
  return r;
}

RElem RingR::mul(const RElem& a, const RElem& b) const {
  const FieldCtx& F = ctx();
  std::vector<Fp> t(2 * n_ - 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      t[i + j] = F.add(t[i + j], F.mul(a[i], b[j]));
  }
  for (std::size_t i = 2 * n_ - 2; i >= n_; --i) {
    Fp c = t[i];
    if (c == 0) continue;
    t[i] = 0;
    for (std::size_t j = 0; j < n_; ++j)
      t[i - n_ + j] = F.sub(t[i - n_ + j], F.mul(c, f_.coeffs[j]));
  }
  t.resize(n_);
  return t;
}

RElem RingR::scalar_mul(const RElem& a, Fp c) const {
  RElem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = ctx().mul(a[i], c);
  return r;
}

RElem RingR::pow(const RElem& a, std::uint64_t exp) const {
  RElem r = one(), b = a;
  while (exp) {
    if (exp & 1) r = mul(r, b);
    b = mul(b, b);
    exp >>= 1;
  }
  return r;
}

Outcome<RElem> RingR::invert(const RElem& a) const {
  if (is_zero(a)) throw Error(Errc::ZeroElement, "inversion of zero in R");
  // Extended Euclid in F_p[x] on (a, f).
  DensePoly r0 = f_, r1 = to_poly(a);
  DensePoly s0 = DensePoly::zero(ctx()), s1 = DensePoly::one(ctx());
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    DensePoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() == 0) {
    return Outcome<RElem>::ok(from_poly(balfact::scalar_mul(s0, ctx().inv(r0.leading()))));
  }
  return Outcome<RElem>::split(SplitCert{monic(r0), f_});
}

DensePoly RingR::char_poly(const RElem& alpha) const {
  const FieldCtx& F = ctx();
  if (F.p <= n_) throw Error(Errc::PTooSmall, "char_poly needs p > n scalar nodes");
  // Multiplication matrix in the basis 1, X, ..., X^(n-1); column j holds
  // alpha * X^j.
  std::vector<RElem> cols(n_);
  cols[0] = alpha;
  for (std::size_t j = 1; j < n_; ++j) cols[j] = mul(cols[j - 1], x_class());
  std::vector<std::pair<Fp, Fp>> points;
  points.reserve(n_);
  for (Fp node = 0; node < n_; ++node) {
    // det(node*I - M) by Gaussian elimination over F_p.
    std::vector<std::vector<Fp>> m(n_, std::vector<Fp>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        m[i][j] = F.sub(i == j ? node : 0, cols[j][i]);
    Fp det = 1;
    bool zero = false;
    for (std::size_t col = 0; col < n_ && !zero; ++col) {
      std::size_t piv = col;
      while (piv < n_ && m[piv][col] == 0) ++piv;
      if (piv == n_) {
        zero = true;
        break;
      }
      if (piv != col) {
        std::swap(m[piv], m[col]);
        det = F.neg(det);
      }
      det = F.mul(det, m[col][col]);
      Fp pivinv = F.inv(m[col][col]);
      for (std::size_t row = col + 1; row < n_; ++row) {
        if (m[row][col] == 0) continue;
        Fp fac = F.mul(m[row][col], pivinv);
        for (std::size_t j = col; j < n_; ++j) m[row][j] = F.sub(m[row][j], F.mul(fac, m[col][j]));
      }
    }
    points.emplace_back(node, zero ? 0 : det);
  }
  return interpolate_monic(F, points, n_);
}

RElem RingR::eval_poly(const DensePoly& g, const RElem& a) const {
  RElem r = zero();
  for (std::size_t i = g.coeffs.size(); i-- > 0;) {
    r = mul(r, a);
    r[0] = ctx().add(r[0], g.coeffs[i]);
  }
  return r;
}

RElem RingR::compose(const RElem& a, const RElem& b) const { return eval_poly(to_poly(a), b); }

// ---------------------------------------------------------------------------
// R[y]

RPoly rp_zero() { return RPoly{}; }

RPoly rp_one(const RingR& R) { return RPoly{{R.one()}}; }

RPoly rp_constant(const RingR& R, RElem a) {
  RPoly r{{std::move(a)}};
  rp_trim(R, r);
  return r;
}

RPoly rp_from_scalar_poly(const RingR& R, const DensePoly& g) {
  RPoly r;
  for (Fp c : g.coeffs) r.c.push_back(R.constant(c));
  return r;
}

void rp_trim(const RingR& R, RPoly& a) {
  while (!a.c.empty() && R.is_zero(a.c.back())) a.c.pop_back();
}

bool rp_equal(const RPoly& a, const RPoly& b) { return a.c == b.c; }

bool rp_is_monic(const RingR& R, const RPoly& a) {
  return !a.c.empty() && a.c.back() == R.one();
}

RPoly rp_add(const RingR& R, const RPoly& a, const RPoly& b) {
  RPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), R.zero());
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] = a.c[i];
    if (i < b.c.size()) r.c[i] = R.add(r.c[i], b.c[i]);
  }
  rp_trim(R, r);
  return r;
}

RPoly rp_sub(const RingR& R, const RPoly& a, const RPoly& b) {
  RPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), R.zero());
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    RElem av = i < a.c.size() ? a.c[i] : R.zero();
    RElem bv = i < b.c.size() ? b.c[i] : R.zero();
    r.c[i] = R.sub(av, bv);
  }
  rp_trim(R, r);
  return r;
}

RPoly rp_mul(const RingR& R, const RPoly& a, const RPoly& b) {
  if (a.is_zero() || b.is_zero()) return rp_zero();
  RPoly r;
  r.c.resize(a.c.size() + b.c.size() - 1, R.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (R.is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = R.add(r.c[i + j], R.mul(a.c[i], b.c[j]));
  }
  rp_trim(R, r);
  return r;
}

RPoly rp_scale(const RingR& R, const RPoly& a, const RElem& c) {
  RPoly r;
  for (const RElem& v : a.c) r.c.push_back(R.mul(v, c));
  rp_trim(R, r);
  return r;
}

std::pair<RPoly, RPoly> rp_divrem_monic(const RingR& R, const RPoly& a, const RPoly& b) {
  if (!rp_is_monic(R, b)) throw Error(Errc::NonMonicDivisor, "divrem over R needs a monic divisor");
  if (a.degree() < b.degree()) return {rp_zero(), a};
  RPoly rem = a;
  RPoly quot;
  quot.c.resize(a.c.size() - b.c.size() + 1, R.zero());
  for (std::size_t i = quot.c.size(); i-- > 0;) {
    RElem c = rem.c[i + b.c.size() - 1];
    quot.c[i] = c;
    if (R.is_zero(c)) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      rem.c[i + j] = R.sub(rem.c[i + j], R.mul(c, b.c[j]));
  }
  rem.c.resize(b.c.size() - 1, R.zero());
  rp_trim(R, rem);
  rp_trim(R, quot);
  return {quot, rem};
}

RElem rp_eval(const RingR& R, const RPoly& g, const RElem& s) {
  RElem r = R.zero();
  for (std::size_t i = g.c.size(); i-- > 0;) r = R.add(R.mul(r, s), g.c[i]);
  return r;
}

RElem rp_eval_scalar(const RingR& R, const RPoly& g, Fp y) {
  RElem r = R.zero();
  for (std::size_t i = g.c.size(); i-- > 0;) r = R.add(R.scalar_mul(r, y), g.c[i]);
  return r;
}

RPoly rp_compose_scalar(const RingR& R, const RPoly& g, const DensePoly& pl) {
  RPoly plR = rp_from_scalar_poly(R, pl);
  RPoly r = rp_zero();
  for (std::size_t i = g.c.size(); i-- > 0;)
    r = rp_add(R, rp_mul(R, r, plR), rp_constant(R, g.c[i]));
  return r;
}

Outcome<RPoly> rp_gcd(const RingR& R, const RPoly& g, const RPoly& h) {
  if (g.is_zero() && h.is_zero()) throw Error(Errc::BothZero, "gcd of two zero polynomials");
  RPoly a = g, b = h;
  while (!b.is_zero()) {
    auto inv = R.invert(b.c.back());
    if (inv.is_split()) return Outcome<RPoly>::split(inv.cert());
    RPoly bm = rp_scale(R, b, inv.value());
    RPoly r = rp_divrem_monic(R, a, bm).second;
    a = std::move(bm);
    b = std::move(r);
  }
  auto inv = R.invert(a.c.back());
  if (inv.is_split()) return Outcome<RPoly>::split(inv.cert());
  return Outcome<RPoly>::ok(rp_scale(R, a, inv.value()));
}

RPoly rp_interpolate_monic(const RingR& R, const std::vector<Fp>& nodes,
                           const std::vector<RElem>& values, std::size_t m) {
  const FieldCtx& F = R.ctx();
  if (nodes.size() != m || values.size() != m)
    throw Error(Errc::TooFewPoints, "monic interpolation over R needs exactly m nodes");
  if (m >= F.p) throw Error(Errc::TooFewPoints, "monic interpolation over R requires m < p");
  DensePoly master = DensePoly::one(F);
  for (Fp y : nodes) master = master * DensePoly{F, {F.neg(y), 1}};
  RPoly acc;
  acc.c.resize(m + 1, R.zero());
  for (std::size_t s = 0; s < m; ++s) {
    RElem target = R.sub(values[s], R.constant(F.pow(nodes[s], m)));
    if (R.is_zero(target)) continue;
    DensePoly num = divrem(master, DensePoly{F, {F.neg(nodes[s]), 1}}).first;
    Fp denom = num.eval(nodes[s]);
    RElem wgt = R.scalar_mul(target, F.inv(denom));
    for (std::size_t i = 0; i < num.coeffs.size(); ++i)
      acc.c[i] = R.add(acc.c[i], R.scalar_mul(wgt, num.coeffs[i]));
  }
  acc.c[m] = R.one();
  return acc;
}

// ---------------------------------------------------------------------------
// S = R[y]/(f')

SAlg::SAlg(RingR base) : base_(std::move(base)), rank_(base_.n() - 1) {
  // Synthetic division of f(y) by (y - X) over R; the remainder is f(X) = 0.
  const DensePoly& f = base_.modulus();
  std::size_t n = base_.n();
  std::vector<RElem> b(n);  // quotient coefficients, lowest first
  RElem carry = base_.constant(1);
  b[n - 1] = carry;
  for (std::size_t k = n - 1; k-- > 0;) {
    carry = base_.add(base_.constant(f.coeffs[k + 1]), base_.mul(base_.x_class(), carry));
    b[k] = carry;
  }
  fprime_low_.assign(b.begin(), b.begin() + (n - 1));
}

SAlg::Elem SAlg::zero() const { return Elem(rank_, base_.zero()); }

SAlg::Elem SAlg::one() const {
  Elem r = zero();
  r[0] = base_.one();
  return r;
}

SAlg::Elem SAlg::from_R(const RElem& a) const {
  Elem r = zero();
  r[0] = a;
  return r;
}

SAlg::Elem SAlg::x_elem() const { return from_R(base_.x_class()); }

SAlg::Elem SAlg::y_class() const {
  Elem r = zero();
  if (rank_ >= 2) {
    r[1] = base_.one();
  } else {
    // rank 1: y == -f'_0
    r[0] = base_.neg(fprime_low_[0]);
  }
  return r;
}

bool SAlg::is_zero(const Elem& a) const {
  for (const RElem& v : a)
    if (!base_.is_zero(v)) return false;
  return true;
}

SAlg::Elem SAlg::add(const Elem& a, const Elem& b) const {
  Elem r(rank_);
  for (std::size_t i = 0; i < rank_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

SAlg::Elem SAlg::sub(const Elem& a, const Elem& b) const {
  Elem r(rank_);
  for (std::size_t i = 0; i < rank_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

SAlg::Elem SAlg::mul(const Elem& a, const Elem& b) const {
  std::vector<RElem> t(2 * rank_ - 1, base_.zero());
  for (std::size_t i = 0; i < rank_; ++i) {
    if (base_.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < rank_; ++j)
      t[i + j] = base_.add(t[i + j], base_.mul(a[i], b[j]));
  }
  for (std::size_t i = 2 * rank_ - 2; i >= rank_ && i < t.size(); --i) {
    RElem c = t[i];
    if (base_.is_zero(c)) continue;
    t[i] = base_.zero();
    for (std::size_t j = 0; j < rank_; ++j)
      t[i - rank_ + j] = base_.sub(t[i - rank_ + j], base_.mul(c, fprime_low_[j]));
  }
  t.resize(rank_);
  return t;
}

SAlg::Elem SAlg::scale(const Elem& a, const RElem& c) const {
  Elem r(rank_);
  for (std::size_t i = 0; i < rank_; ++i) r[i] = base_.mul(a[i], c);
  return r;
}

SAlg::Elem SAlg::scale_fp(const Elem& a, Fp c) const {
  Elem r(rank_);
  for (std::size_t i = 0; i < rank_; ++i) r[i] = base_.scalar_mul(a[i], c);
  return r;
}

SAlg::Elem SAlg::pow(const Elem& a, std::uint64_t exp) const {
  Elem r = one(), b = a;
  while (exp) {
    if (exp & 1) r = mul(r, b);
    b = mul(b, b);
    exp >>= 1;
  }
  return r;
}

SAlg::Elem SAlg::sigma(const Elem& a) const {
  const FieldCtx& F = base_.ctx();
  const Fp inv2 = F.inv(2);
  // Candidate root and 2-part error term: r^2 = a * t componentwise, with t
  // in the group generated by eta^w.
  Elem r = pow(a, (F.w + 1) >> 1);
  Elem t = pow(a, F.w);
  // e-1 masked correction steps; tau has components in {+-1} (0 where a is 0).
  for (unsigned k = F.e - 1; k >= 1; --k) {
    Elem tau = t;
    for (unsigned s = 0; s + 1 < k; ++s) tau = mul(tau, tau);
    // mask = (1 - tau)/2: 1 where correction is needed, 0 where not.
    Elem mask = scale_fp(sub(one(), tau), inv2);
    Fp cr = F.pow(F.eta, Fp{1} << (F.e - 1 - k));
    Fp ct = F.pow(F.eta, Fp{1} << (F.e - k));
    // x <- x * (1 + mask*(c - 1)) applies the eta-power only under the mask.
    r = mul(r, add(one(), scale_fp(mask, F.sub(cr, 1))));
    t = mul(t, add(one(), scale_fp(mask, F.sub(ct, 1))));
  }
  // Canonicalization: flip the components whose 2-adic exponent has its top
  // bit set, read off from the masked discrete log of r^w.
  Elem z = pow(r, F.w);
  Elem top_mask = zero();
  for (unsigned j = 0; j < F.e; ++j) {
    Elem tau = z;
    for (unsigned s = 0; s < F.e - 1 - j; ++s) tau = mul(tau, tau);
    Elem mask = scale_fp(sub(one(), tau), inv2);
    if (j + 1 == F.e) {
      top_mask = mask;
      break;
    }
    Fp gj = F.pow(F.pow(F.eta, F.w), Fp{1} << j);
    Fp gj_inv = F.inv(gj);
    z = mul(z, add(one(), scale_fp(mask, F.sub(gj_inv, 1))));
  }
  // r * (1 - 2*top_mask)
  return mul(r, sub(one(), scale_fp(top_mask, 2)));
}

namespace {

// Bird's division-free determinant over R; returns det of an m x m matrix.
RElem det_over_R(const RingR& R, std::vector<std::vector<RElem>> a) {
  std::size_t m = a.size();
  if (m == 1) return a[0][0];
  auto matmul = [&](const std::vector<std::vector<RElem>>& x,
                    const std::vector<std::vector<RElem>>& y) {
    std::vector<std::vector<RElem>> z(m, std::vector<RElem>(m, R.zero()));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        if (R.is_zero(x[i][k])) continue;
        for (std::size_t j = 0; j < m; ++j)
          z[i][j] = R.add(z[i][j], R.mul(x[i][k], y[k][j]));
      }
    return z;
  };
  auto mu = [&](const std::vector<std::vector<RElem>>& x) {
    std::vector<std::vector<RElem>> y(m, std::vector<RElem>(m, R.zero()));
    RElem tail = R.zero();
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t j = i + 1; j < m; ++j) y[i][j] = x[i][j];
      y[i][i] = R.neg(tail);
      tail = R.add(tail, x[i][i]);
    }
    return y;
  };
  std::vector<std::vector<RElem>> x = a;
  for (std::size_t step = 0; step + 1 < m; ++step) x = matmul(mu(x), a);
  RElem det = x[0][0];
  if (m % 2 == 0) det = R.neg(det);
  return det;
}

}  // namespace

RPoly SAlg::char_poly_over_R(const Elem& c) const {
  const FieldCtx& F = base_.ctx();
  std::size_t m = rank_;
  if (F.p <= m) throw Error(Errc::PTooSmall, "char_poly over R needs p > n-1 scalar nodes");
  // Columns of the multiplication matrix: c * Y^j.
  std::vector<Elem> cols(m);
  cols[0] = c;
  for (std::size_t j = 1; j < m; ++j) cols[j] = mul(cols[j - 1], y_class());
  std::vector<Fp> nodes;
  std::vector<RElem> values;
  for (Fp node = 0; node < m; ++node) {
    std::vector<std::vector<RElem>> mat(m, std::vector<RElem>(m, base_.zero()));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        RElem v = base_.neg(cols[j][i]);
        if (i == j) v = base_.add(v, base_.constant(node));
        mat[i][j] = v;
      }
    nodes.push_back(node);
    values.push_back(det_over_R(base_, std::move(mat)));
  }
  return rp_interpolate_monic(base_, nodes, values, m);
}

}  // namespace balfact
