#ifndef BALFACT_POLY_HPP
#define BALFACT_POLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "balfact/field.hpp"

namespace balfact {

/// Dense univariate polynomial over F_p, coefficients lowest degree first,
/// never a trailing zero. The zero polynomial has an empty coefficient list.
struct DensePoly {
  FieldCtx ctx;
  std::vector<Fp> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  Fp leading() const { return coeffs.empty() ? 0 : coeffs.back(); }
  Fp at(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
  Fp eval(Fp x) const;

  void trim();

  static DensePoly zero(const FieldCtx& ctx) { return {ctx, {}}; }
  static DensePoly one(const FieldCtx& ctx) { return {ctx, {1}}; }
  static DensePoly constant(const FieldCtx& ctx, Fp c);
  static DensePoly x(const FieldCtx& ctx) { return {ctx, {0, 1}}; }
  static DensePoly from_coeffs(const FieldCtx& ctx, std::vector<Fp> c);
  static DensePoly from_roots(const FieldCtx& ctx, const std::vector<Fp>& roots);

  bool operator==(const DensePoly& o) const { return ctx.p == o.ctx.p && coeffs == o.coeffs; }
};

DensePoly operator+(const DensePoly& a, const DensePoly& b);
DensePoly operator-(const DensePoly& a, const DensePoly& b);
DensePoly operator*(const DensePoly& a, const DensePoly& b);
DensePoly scalar_mul(const DensePoly& a, Fp c);

// a = q*b + r with deg r < deg b; b's leading coefficient must be invertible.
std::pair<DensePoly, DensePoly> divrem(const DensePoly& a, const DensePoly& b);

DensePoly poly_gcd(const DensePoly& a, const DensePoly& b);  // monic
DensePoly derivative(const DensePoly& a);
DensePoly monic(const DensePoly& a);

DensePoly pow_mod(const DensePoly& base, std::uint64_t exp, const DensePoly& mod);
DensePoly compose_mod(const DensePoly& g, const DensePoly& h, const DensePoly& mod);  // g(h) mod

// Radical of a monic polynomial; requires p > deg f.
DensePoly squarefree_part(const DensePoly& f);

// f = prod a_i^i with the a_i squarefree and pairwise coprime (Yun).
std::vector<std::pair<DensePoly, int>> squarefree_decompose(const DensePoly& f);

// g = s^d with s = squarefree_part(g), if such d exists.
std::optional<std::pair<DensePoly, std::uint64_t>> perfect_power_decompose(const DensePoly& g);

// (product of linear factors of f, cofactor with no roots in F_p).
std::pair<DensePoly, DensePoly> split_part(const DensePoly& f);

// Unique monic polynomial of degree m through m distinct nodes.
DensePoly interpolate_monic(const FieldCtx& ctx, const std::vector<std::pair<Fp, Fp>>& points,
                            std::size_t m);

// Text form: comma-separated coefficients, lowest degree first.
std::string to_text(const DensePoly& a);
DensePoly parse_poly(const FieldCtx& ctx, const std::string& text);

}  // namespace balfact

#endif
