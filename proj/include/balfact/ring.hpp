#ifndef BALFACT_RING_HPP
#define BALFACT_RING_HPP

#include <utility>
#include <variant>
#include <vector>

#include "balfact/poly.hpp"

namespace balfact {

/// A proper monic factor of the ambient modulus. Every zero divisor the
/// algebra layer encounters is converted into one of these.
struct SplitCert {
  DensePoly factor;
  DensePoly modulus;
};

/// Either a computed value or a factoring success that preempted it.
template <typename T>
class Outcome {
 public:
  static Outcome ok(T v) { return Outcome(std::variant<T, SplitCert>(std::in_place_index<0>, std::move(v))); }
  static Outcome split(SplitCert c) { return Outcome(std::variant<T, SplitCert>(std::in_place_index<1>, std::move(c))); }

  bool is_split() const { return v_.index() == 1; }
  const T& value() const { return std::get<0>(v_); }
  T& value() { return std::get<0>(v_); }
  const SplitCert& cert() const { return std::get<1>(v_); }

 private:
  explicit Outcome(std::variant<T, SplitCert> v) : v_(std::move(v)) {}
  std::variant<T, SplitCert> v_;
};

/// Element of R = F_p[x]/(f): exactly n coefficients, lowest degree first.
using RElem = std::vector<Fp>;

/// The quotient ring R = F_p[x]/(f) for f monic, squarefree and completely
/// splitting of degree n >= 2. Arithmetic never divides by ring elements;
/// inversion either succeeds or certifies a factor of f.
class RingR {
 public:
  explicit RingR(DensePoly f);

  const FieldCtx& ctx() const { return f_.ctx; }
  const DensePoly& modulus() const { return f_; }
  std::size_t n() const { return n_; }

  RElem zero() const { return RElem(n_, 0); }
  RElem one() const;
  RElem constant(Fp c) const;
  RElem x_class() const;
  RElem from_poly(const DensePoly& g) const;  // g mod f
  DensePoly to_poly(const RElem& a) const;

  bool is_zero(const RElem& a) const;
  RElem add(const RElem& a, const RElem& b) const;
  RElem sub(const RElem& a, const RElem& b) const;
  RElem neg(const RElem& a) const;
  RElem mul(const RElem& a, const RElem& b) const;
  RElem scalar_mul(const RElem& a, Fp c) const;
  RElem pow(const RElem& a, std::uint64_t exp) const;

  // Inverse when gcd(a, f) = 1, else the gcd as a split certificate.
  Outcome<RElem> invert(const RElem& a) const;

  // prod_i (x - a(xi_i)): multiplication matrix, determinant at n scalar
  // nodes, monic interpolation. Requires p > n.
  DensePoly char_poly(const RElem& alpha) const;

  RElem eval_poly(const DensePoly& g, const RElem& a) const;  // g(a) in R
  RElem compose(const RElem& a, const RElem& b) const;        // a, read as a polynomial, at b

 private:
  DensePoly f_;
  std::size_t n_;
};

/// Polynomial over R, lowest degree first, leading coefficient a nonzero
/// element of R (possibly a zero divisor).
struct RPoly {
  std::vector<RElem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

RPoly rp_zero();
RPoly rp_one(const RingR& R);
RPoly rp_constant(const RingR& R, RElem a);
RPoly rp_from_scalar_poly(const RingR& R, const DensePoly& g);  // F_p[y] -> R[y]
void rp_trim(const RingR& R, RPoly& a);
bool rp_equal(const RPoly& a, const RPoly& b);
bool rp_is_monic(const RingR& R, const RPoly& a);

RPoly rp_add(const RingR& R, const RPoly& a, const RPoly& b);
RPoly rp_sub(const RingR& R, const RPoly& a, const RPoly& b);
RPoly rp_mul(const RingR& R, const RPoly& a, const RPoly& b);
RPoly rp_scale(const RingR& R, const RPoly& a, const RElem& c);

std::pair<RPoly, RPoly> rp_divrem_monic(const RingR& R, const RPoly& a, const RPoly& b);
RElem rp_eval(const RingR& R, const RPoly& g, const RElem& s);
RElem rp_eval_scalar(const RingR& R, const RPoly& g, Fp y);
RPoly rp_compose_scalar(const RingR& R, const RPoly& g, const DensePoly& pl);  // y <- pl(y)

// Componentwise monic gcd via the Euclidean sequence; the moment a leading
// coefficient is a nonzero zero divisor, its gcd with f is returned instead.
Outcome<RPoly> rp_gcd(const RingR& R, const RPoly& g, const RPoly& h);

// Unique monic degree-m polynomial over R through m scalar nodes.
RPoly rp_interpolate_monic(const RingR& R, const std::vector<Fp>& nodes,
                           const std::vector<RElem>& values, std::size_t m);

/// S = R[y]/(f') where f(y) = (y - X) f'(y) over R; a free R-module of rank
/// n-1 with basis 1, Y, ..., Y^(n-2).
class SAlg {
 public:
  using Elem = std::vector<RElem>;  // exactly n-1 R-coefficients

  explicit SAlg(RingR base);  // computes f' by synthetic division

  const RingR& base() const { return base_; }
  std::size_t rank() const { return rank_; }
  const std::vector<RElem>& fprime_low() const { return fprime_low_; }  // below-leading coeffs

  Elem zero() const;
  Elem one() const;
  Elem from_R(const RElem& a) const;
  Elem x_elem() const;  // X as an S-constant
  Elem y_class() const;

  bool is_zero(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const RElem& c) const;
  Elem scale_fp(const Elem& a, Fp c) const;
  Elem pow(const Elem& a, std::uint64_t exp) const;

  // Componentwise canonical square root (masked Tonelli-Shanks; total, no
  // inversions). Meaningful only when every component is a square in F_p.
  Elem sigma(const Elem& a) const;

  // Characteristic polynomial of multiplication-by-C over R: division-free
  // determinants at rank() scalar nodes, then monic interpolation over R.
  RPoly char_poly_over_R(const Elem& c) const;

 private:
  RingR base_;
  std::size_t rank_;
  std::vector<RElem> fprime_low_;
};

}  // namespace balfact

#endif
