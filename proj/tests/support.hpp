#ifndef BALFACT_TESTS_SUPPORT_HPP
#define BALFACT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "balfact/field.hpp"

namespace testsupport {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Deterministic stream of pseudo-random 64-bit values.
struct Rng {
  std::uint64_t seed;
  std::uint64_t ctr = 0;
  std::uint64_t next() { return mix64(seed ^ mix64(ctr++)); }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline balfact::Fp random_prime(Rng& rng, unsigned bits) {
  for (;;) {
    balfact::Fp c = (rng.next() >> (64 - bits)) | (balfact::Fp{1} << (bits - 1)) | 1;
    if (balfact::is_prime_u64(c)) return c;
  }
}

inline std::vector<balfact::Fp> random_roots(Rng& rng, const balfact::FieldCtx& ctx,
                                             std::size_t n) {
  std::vector<balfact::Fp> roots;
  while (roots.size() < n) {
    balfact::Fp r = rng.below(ctx.p);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  return roots;
}

inline balfact::Fp element_of_order(const balfact::FieldCtx& ctx, balfact::Fp n) {
  std::vector<balfact::Fp> qs;
  balfact::Fp m = n;
  for (balfact::Fp q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      qs.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) qs.push_back(m);
  for (balfact::Fp g = 2; g < ctx.p; ++g) {
    balfact::Fp h = ctx.pow(g, (ctx.p - 1) / n);
    bool exact = h != 1;
    for (balfact::Fp q : qs) exact = exact && ctx.pow(h, n / q) != 1;
    if (exact) return h;
  }
  return 0;  // unreachable for n | p-1, n > 1
}

// A prime p = 3 mod 4 with n | p-1, at least `minimum`; the n-th roots of
// unity over such p form a square-balanced root set.
inline balfact::FieldCtx balanced_field(balfact::Fp n, balfact::Fp minimum) {
  balfact::Fp p = minimum / (4 * n) * (4 * n) + 1;
  for (;; p += n) {
    if (p < minimum || p % 4 != 3 || (p - 1) % n != 0) continue;
    if (balfact::is_prime_u64(p)) return balfact::FieldCtx::make(p);
  }
}

inline std::vector<balfact::Fp> roots_of_unity(const balfact::FieldCtx& ctx, balfact::Fp n) {
  balfact::Fp h = element_of_order(ctx, n);
  std::vector<balfact::Fp> roots(n);
  roots[0] = 1;
  for (balfact::Fp i = 1; i < n; ++i) roots[i] = ctx.mul(roots[i - 1], h);
  return roots;
}

}  // namespace testsupport

#endif
