#include "balfact/field.hpp"

namespace balfact {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::NotASquare: return "NotASquare";
    case Errc::CtxMismatch: return "CtxMismatch";
    case Errc::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case Errc::DegreeTooLargeForP: return "DegreeTooLargeForP";
    case Errc::DuplicateNode: return "DuplicateNode";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::PTooSmall: return "PTooSmall";
    case Errc::PTooSmallForNodes: return "PTooSmallForNodes";
    case Errc::BothZero: return "BothZero";
    case Errc::NonMonicDivisor: return "NonMonicDivisor";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::NotAProperFactor: return "NotAProperFactor";
    case Errc::NotAnEndomorphismRoot: return "NotAnEndomorphismRoot";
    case Errc::IdentityEndomorphism: return "IdentityEndomorphism";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::ParameterRegime: return "ParameterRegime";
    case Errc::NotBalancedAtRound: return "NotBalancedAtRound";
    case Errc::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

Fp mulmod(Fp a, Fp b, Fp p) {
  return static_cast<Fp>(static_cast<unsigned __int128>(a) * b % p);
}

Fp powmod(Fp a, std::uint64_t exp, Fp p) {
  Fp r = 1 % p;
  while (exp) {
    if (exp & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Base set covering all 64-bit integers (Sinclair).
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldCtx FieldCtx::make(Fp p) {
  if (p < 3 || p >= (Fp{1} << 62)) throw Error(Errc::OutOfRange, "modulus out of range [3, 2^62)");
  if (!is_prime_u64(p)) throw Error(Errc::NotPrime, "modulus is not an odd prime");
  FieldCtx ctx;
  ctx.p = p;
  ctx.w = p - 1;
  ctx.e = 0;
  while ((ctx.w & 1) == 0) {
    ctx.w >>= 1;
    ++ctx.e;
  }
  Fp q = 2;
  while (powmod(q, (p - 1) / 2, p) != p - 1) ++q;
  ctx.q0 = q;
  ctx.eta = powmod(q, ctx.w, p);
  return ctx;
}

Fp FieldCtx::pow(Fp a, std::uint64_t exp) const { return powmod(a, exp, p); }

Fp FieldCtx::inv(Fp a) const {
  if (a == 0) throw Error(Errc::ZeroInput, "inverse of zero");
  return powmod(a, p - 2, p);
}

Fp FieldCtx::half(Fp a) const { return (a & 1) ? (a >> 1) + ((p + 1) >> 1) : a >> 1; }

bool is_qr(const FieldCtx& ctx, Fp a) {
  if (a == 0) throw Error(Errc::ZeroInput, "quadratic residue test of zero");
  return ctx.pow(a, (ctx.p - 1) / 2) == 1;
}

TwoAdicSplit two_adic_split(const FieldCtx& ctx, Fp a) {
  if (a == 0) throw Error(Errc::ZeroInput, "two_adic_split of zero");
  // a^w lies in the 2-Sylow subgroup generated by eta^w; read off the
  // exponent u bit by bit (Pohlig-Hellman for the 2-part).
  const Fp g2 = ctx.pow(ctx.eta, ctx.w);
  const Fp order = Fp{1} << ctx.e;
  Fp z = ctx.pow(a, ctx.w);
  Fp u = 0;
  for (unsigned j = 0; j < ctx.e; ++j) {
    if (ctx.pow(z, Fp{1} << (ctx.e - 1 - j)) == ctx.p - 1) {
      u |= Fp{1} << j;
      z = ctx.mul(z, ctx.pow(g2, order - (Fp{1} << j)));
    }
  }
  Fp theta = ctx.mul(a, ctx.pow(ctx.eta, (order - u) % order));
  return {u, theta};
}

Fp sigma_field(const FieldCtx& ctx, Fp a) {
  if (a == 0) return 0;
  TwoAdicSplit s = two_adic_split(ctx, a);
  if (s.u & 1) throw Error(Errc::NotASquare, "sigma of a quadratic nonresidue");
  // eta^(u/2) * theta^((w+1)/2) squares to a and has 2-adic exponent
  // u/2 < 2^(e-1).
  return ctx.mul(ctx.pow(ctx.eta, s.u >> 1), ctx.pow(s.theta, (ctx.w + 1) >> 1));
}

}  // namespace balfact
