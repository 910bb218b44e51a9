#ifndef BALFACT_FIELD_HPP
#define BALFACT_FIELD_HPP

#include <cstdint>

#include "balfact/errors.hpp"

namespace balfact {

using Fp = std::uint64_t;

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// A prime p together with the 2-adic structure of p-1 = 2^e * w:
/// eta is a primitive 2^e-th root of unity and q0 the least quadratic
/// nonresidue. Immutable after construction.
struct FieldCtx {
  Fp p = 0;
  unsigned e = 0;   // 2-adicity of p-1
  Fp w = 0;         // odd cofactor, p-1 = 2^e * w
  Fp eta = 0;       // primitive 2^e-th root of unity (= q0^w)
  Fp q0 = 0;        // least quadratic nonresidue

  static FieldCtx make(Fp p);

  Fp add(Fp a, Fp b) const {
    Fp s = a + b;
    return (s >= p || s < a) ? s - p : s;
  }
  Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p - b; }
  Fp neg(Fp a) const { return a == 0 ? 0 : p - a; }
  Fp mul(Fp a, Fp b) const {
    return static_cast<Fp>(static_cast<unsigned __int128>(a) * b % p);
  }
  Fp pow(Fp a, std::uint64_t exp) const;
  Fp inv(Fp a) const;   // a != 0
  Fp half(Fp a) const;  // a / 2

  bool operator==(const FieldCtx& o) const { return p == o.p; }
};

bool is_qr(const FieldCtx& ctx, Fp a);

struct TwoAdicSplit {
  Fp u;      // 0 <= u < 2^e
  Fp theta;  // theta^w = 1
};

// Unique decomposition a = eta^u * theta with theta of odd order.
TwoAdicSplit two_adic_split(const FieldCtx& ctx, Fp a);

// Canonical square root: the root b of a with two_adic_split(b).u < 2^(e-1).
// sigma_field(0) = 0.
Fp sigma_field(const FieldCtx& ctx, Fp a);

}  // namespace balfact

#endif
