#include "doctest.h"

#include "balfact/poly.hpp"
#include "support.hpp"

using namespace balfact;

namespace {

DensePoly rand_poly(testsupport::Rng& rng, const FieldCtx& F, int deg) {
  std::vector<Fp> c(deg + 1);
  for (auto& v : c) v = rng.below(F.p);
  if (c.back() == 0) c.back() = 1;
  return DensePoly::from_coeffs(F, std::move(c));
}

}  // namespace

TEST_CASE("construction, trimming and evaluation") {
  FieldCtx F = FieldCtx::make(7);
  DensePoly f = DensePoly::from_coeffs(F, {8, 0, 1, 0, 0});
  CHECK(f.degree() == 2);
  CHECK(f.coeffs == std::vector<Fp>{1, 0, 1});
  CHECK(f.eval(2) == 5);
  CHECK(DensePoly::zero(F).is_zero());
  CHECK(DensePoly::one(F).degree() == 0);
  DensePoly g = DensePoly::from_roots(F, {1, 2, 4});
  CHECK(g == DensePoly::from_coeffs(F, {6, 0, 0, 1}));  // x^3 - 1 mod 7
  CHECK(g.is_monic());
}

TEST_CASE("ring operations agree with direct evaluation") {
  testsupport::Rng rng{5};
  FieldCtx F = FieldCtx::make(1000003);
  for (int t = 0; t < 50; ++t) {
    DensePoly a = rand_poly(rng, F, static_cast<int>(rng.below(8)));
    DensePoly b = rand_poly(rng, F, static_cast<int>(rng.below(8)));
    Fp x = rng.below(F.p);
    CHECK((a + b).eval(x) == F.add(a.eval(x), b.eval(x)));
    CHECK((a - b).eval(x) == F.sub(a.eval(x), b.eval(x)));
    CHECK((a * b).eval(x) == F.mul(a.eval(x), b.eval(x)));
    CHECK(scalar_mul(a, 5).eval(x) == F.mul(5, a.eval(x)));
  }
}

TEST_CASE("division round-trip and gcd properties") {
  testsupport::Rng rng{6};
  FieldCtx F = FieldCtx::make(10007);
  for (int t = 0; t < 100; ++t) {
    DensePoly a = rand_poly(rng, F, 2 + static_cast<int>(rng.below(8)));
    DensePoly b = rand_poly(rng, F, 1 + static_cast<int>(rng.below(5)));
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());

    DensePoly g = poly_gcd(a, b);
    CHECK(g.is_monic());
    CHECK(divrem(a, g).second.is_zero());
    CHECK(divrem(b, g).second.is_zero());
  }
  CHECK_THROWS_AS(divrem(rand_poly(rng, F, 3), DensePoly::zero(F)), Error);
}

TEST_CASE("gcd of shared-root products is the shared part") {
  FieldCtx F = FieldCtx::make(101);
  DensePoly a = DensePoly::from_roots(F, {1, 2, 3, 4});
  DensePoly b = DensePoly::from_roots(F, {3, 4, 5});
  CHECK(poly_gcd(a, b) == DensePoly::from_roots(F, {3, 4}));
  CHECK_THROWS_AS(poly_gcd(DensePoly::zero(F), DensePoly::zero(F)), Error);
}

TEST_CASE("derivative and monic normalization") {
  FieldCtx F = FieldCtx::make(7);
  DensePoly f = DensePoly::from_coeffs(F, {1, 2, 3, 4});
  CHECK(derivative(f) == DensePoly::from_coeffs(F, {2, 6, 5}));
  CHECK(monic(f) == scalar_mul(f, F.inv(4)));
  CHECK(monic(f).is_monic());
}

TEST_CASE("modular exponentiation and composition") {
  testsupport::Rng rng{7};
  FieldCtx F = FieldCtx::make(10007);
  DensePoly mod = DensePoly::from_roots(F, {1, 5, 9, 12});
  for (int t = 0; t < 30; ++t) {
    DensePoly g = rand_poly(rng, F, 3);
    DensePoly h = rand_poly(rng, F, 3);
    DensePoly c = compose_mod(g, h, mod);
    for (Fp r : {Fp{1}, Fp{5}, Fp{9}, Fp{12}}) CHECK(c.eval(r) == g.eval(h.eval(r)));
    std::uint64_t e = rng.below(50);
    DensePoly pw = pow_mod(g, e, mod);
    for (Fp r : {Fp{1}, Fp{5}, Fp{9}, Fp{12}}) CHECK(pw.eval(r) == F.pow(g.eval(r), e));
  }
}

TEST_CASE("squarefree decomposition") {
  FieldCtx F = FieldCtx::make(7);
  DensePoly f = DensePoly::from_roots(F, {1}) * DensePoly::from_roots(F, {1}) *
                DensePoly::from_roots(F, {2});
  CHECK(squarefree_part(f) == DensePoly::from_roots(F, {1, 2}));
  auto dec = squarefree_decompose(f);
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].first == DensePoly::from_roots(F, {2}));
  CHECK(dec[0].second == 1);
  CHECK(dec[1].first == DensePoly::from_roots(F, {1}));
  CHECK(dec[1].second == 2);

  testsupport::Rng rng{8};
  FieldCtx G = FieldCtx::make(100003);
  for (int t = 0; t < 40; ++t) {
    DensePoly prod = DensePoly::one(G);
    std::vector<Fp> roots = testsupport::random_roots(rng, G, 4);
    std::vector<int> mult(4);
    for (int i = 0; i < 4; ++i) {
      mult[i] = 1 + static_cast<int>(rng.below(3));
      for (int j = 0; j < mult[i]; ++j) prod = prod * DensePoly::from_roots(G, {roots[i]});
    }
    DensePoly back = DensePoly::one(G);
    for (const auto& [part, m] : squarefree_decompose(prod)) {
      CHECK(poly_gcd(part, derivative(part)).degree() == 0);
      for (int j = 0; j < m; ++j) back = back * part;
    }
    CHECK(back == prod);
  }
}

TEST_CASE("squarefree decomposition needs p above the degree") {
  FieldCtx F = FieldCtx::make(3);
  DensePoly f = DensePoly::from_coeffs(F, {1, 0, 0, 0, 1});  // degree 4 > p
  CHECK_THROWS_AS(squarefree_decompose(f), Error);
}

TEST_CASE("perfect power detection") {
  FieldCtx F = FieldCtx::make(101);
  DensePoly s = DensePoly::from_roots(F, {3, 7});
  DensePoly cube = s * s * s;
  auto pp = perfect_power_decompose(cube);
  REQUIRE(pp.has_value());
  CHECK(pp->first == s);
  CHECK(pp->second == 3);
  CHECK(perfect_power_decompose(s).value().second == 1);
  CHECK_FALSE(perfect_power_decompose(s * s * DensePoly::from_roots(F, {9})).has_value());
}

TEST_CASE("splitting part isolates the roots") {
  FieldCtx F = FieldCtx::make(7);
  DensePoly norr = DensePoly::from_coeffs(F, {1, 0, 1});  // x^2 + 1, no roots mod 7
  auto [lin0, rest0] = split_part(norr);
  CHECK(lin0 == DensePoly::one(F));
  CHECK(rest0 == norr);
  DensePoly mixed = norr * DensePoly::from_roots(F, {1, 2});
  auto [lin, rest] = split_part(mixed);
  CHECK(lin == DensePoly::from_roots(F, {1, 2}));
  CHECK(rest == norr);
}

TEST_CASE("monic interpolation") {
  testsupport::Rng rng{9};
  FieldCtx F = FieldCtx::make(10007);
  for (int t = 0; t < 40; ++t) {
    std::size_t m = 1 + rng.below(6);
    std::vector<Fp> c(m + 1);
    for (auto& v : c) v = rng.below(F.p);
    c[m] = 1;
    DensePoly f = DensePoly::from_coeffs(F, std::move(c));
    std::vector<std::pair<Fp, Fp>> pts;
    for (Fp x = 0; x < m; ++x) pts.emplace_back(x, f.eval(x));
    CHECK(interpolate_monic(F, pts, m) == f);
  }
  CHECK_THROWS_AS(interpolate_monic(F, {{0, 1}}, 2), Error);
  CHECK_THROWS_AS(interpolate_monic(F, {{0, 1}, {0, 2}}, 2), Error);
}

TEST_CASE("text round-trip") {
  FieldCtx F = FieldCtx::make(13);
  DensePoly f = DensePoly::from_coeffs(F, {4, 0, 11, 1});
  CHECK(to_text(f) == "4,0,11,1");
  CHECK(parse_poly(F, "4,0,11,1") == f);
  CHECK(parse_poly(F, "17,0,24,1") == f);  // reduced mod p
  CHECK(to_text(DensePoly::zero(F)) == "0");
  CHECK_THROWS_AS(parse_poly(F, "4,,1"), Error);
  CHECK_THROWS_AS(parse_poly(F, "4,x"), Error);
}
