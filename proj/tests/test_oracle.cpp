#include "doctest.h"

#include "balfact/oracle.hpp"
#include "support.hpp"

using namespace balfact;

using Sets = std::vector<std::vector<std::size_t>>;

TEST_CASE("rooted instances validate their roots") {
  FieldCtx F = FieldCtx::make(7);
  CHECK_THROWS_AS(make_rooted(F, {1}), Error);
  CHECK_THROWS_AS(make_rooted(F, {1, 8}), Error);  // 8 = 1 mod 7
  RootedInstance inst = make_rooted(F, {1, 2, 4});
  CHECK(inst.modulus() == DensePoly::from_coeffs(F, {6, 0, 0, 1}));
}

TEST_CASE("delta sets golden values") {
  FieldCtx F = FieldCtx::make(7);
  DensePoly y = DensePoly::x(F);
  CHECK(delta_sets(make_rooted(F, {1, 2, 4}), y).delta == Sets{{1}, {2}, {0}});
  CHECK(delta_sets(make_rooted(F, {1, 2, 3}), y).delta == Sets{{1, 2}, {2}, {}});

  FieldCtx F11 = FieldCtx::make(11);
  auto d = delta_sets(make_rooted(F11, {1, 3, 4, 5, 9}), DensePoly::x(F11));
  for (const auto& s : d.delta) CHECK(s.size() == 2);
  for (const auto& s : d.delta_bar) CHECK(s.size() == 2);
}

TEST_CASE("delta and complement partition the other indices") {
  testsupport::Rng rng{61};
  for (int t = 0; t < 30; ++t) {
    Fp p = testsupport::random_prime(rng, 24);
    FieldCtx F = FieldCtx::make(p);
    std::size_t n = 2 + rng.below(6);
    RootedInstance inst = make_rooted(F, testsupport::random_roots(rng, F, n));
    auto d = delta_sets(inst, DensePoly::x(F));
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(d.delta[i].size() + d.delta_bar[i].size() == n - 1);
      for (std::size_t j : d.delta[i]) CHECK(j != i);
      total += d.delta[i].size();
    }
    // Each unordered pair contributes to exactly one side.
    CHECK(total == n * (n - 1) / 2);
  }
}

TEST_CASE("D-set sequence golden traces") {
  FieldCtx F = FieldCtx::make(7);
  SUBCASE("3-cycle: second round leaves the graph unchanged") {
    RootedInstance inst = make_rooted(F, {1, 2, 4});
    std::vector<DensePoly> aux = {DensePoly::x(F), DensePoly::from_coeffs(F, {0, 0, 1})};
    auto snaps = d_set_sequence(inst, aux, true, 0);
    REQUIRE(snaps.size() == 2);
    CHECK(snaps[0].regular);
    CHECK(snaps[0].regularity == 1);
    CHECK_FALSE(snaps[0].equals_previous);
    CHECK(snaps[1].equals_previous);
    CHECK(snaps[1].event == RoundEvent::Unchanged);
    CHECK(snaps[1].d_sets == snaps[0].d_sets);
  }
  SUBCASE("F_11 residue instance halves at round 2") {
    FieldCtx F11 = FieldCtx::make(11);
    RootedInstance inst = make_rooted(F11, {1, 3, 4, 5, 9});
    std::vector<DensePoly> aux = {DensePoly::x(F11), DensePoly::from_coeffs(F11, {0, 0, 1})};
    auto snaps = d_set_sequence(inst, aux, true, 0);
    REQUIRE(snaps.size() == 2);
    CHECK(snaps[0].regularity == 2);
    CHECK(snaps[1].regularity == 1);
    CHECK_FALSE(snaps[1].equals_previous);
    CHECK(snaps[1].d_sets == Sets{{2}, {0}, {3}, {4}, {1}});
  }
  SUBCASE("a single round is regular iff the delta sizes agree") {
    RootedInstance bal = make_rooted(F, {1, 2, 4});
    RootedInstance unbal = make_rooted(F, {1, 2, 3});
    CHECK(d_set_sequence(bal, {DensePoly::x(F)}, true)[0].regular);
    auto snaps = d_set_sequence(unbal, {DensePoly::x(F)}, true);
    CHECK(snaps[0].event == RoundEvent::NotSquareBalanced);
  }
}

TEST_CASE("expected polynomials golden values") {
  FieldCtx F = FieldCtx::make(7);
  RootedInstance inst = make_rooted(F, {1, 2, 4});
  RingR R(inst.modulus());
  std::vector<DensePoly> aux = {DensePoly::x(F)};
  RPoly g1 = expected_g(inst, 1, aux, true);
  CHECK(g1.degree() == 1);
  CHECK(rp_component(R, g1, 1) == DensePoly::from_roots(F, {2}));
  CHECK(rp_component(R, g1, 2) == DensePoly::from_roots(F, {4}));
  CHECK(rp_component(R, g1, 4) == DensePoly::from_roots(F, {1}));
  CHECK(rp_equal(expected_h(inst, 1, aux), g1));

  // All D-sets equal to a common set: the diagonal lift of one product.
  RPoly diag = crt_assemble(R,
                            {DensePoly::from_roots(F, {2, 4}), DensePoly::from_roots(F, {2, 4}),
                             DensePoly::from_roots(F, {2, 4})},
                            {1, 2, 4});
  RPoly plain = rp_from_scalar_poly(R, DensePoly::from_roots(F, {2, 4}));
  CHECK(rp_equal(diag, plain));

  RootedInstance unbal = make_rooted(F, {1, 2, 3});
  CHECK_THROWS_AS(expected_g(unbal, 1, aux, true), Error);
}

TEST_CASE("expected records mirror terminal events") {
  FieldCtx F = FieldCtx::make(11);
  RootedInstance inst = make_rooted(F, {1, 3, 4, 5, 9});
  std::vector<DensePoly> aux = {DensePoly::x(F), DensePoly::from_coeffs(F, {0, 0, 1})};
  auto recs = expected_records(inst, aux, true, 1);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].event == RoundEvent::Refined);
  CHECK(recs[0].degree == 2);
  CHECK(recs[1].event == RoundEvent::Refined);
  CHECK(recs[1].degree == 1);
  CHECK(recs[2].event == RoundEvent::SmallDegree);
  CHECK(recs[2].l == 2);
}

TEST_CASE("component extraction and CRT assembly are inverse") {
  testsupport::Rng rng{67};
  FieldCtx F = FieldCtx::make(10007);
  std::vector<Fp> roots = testsupport::random_roots(rng, F, 4);
  RingR R(DensePoly::from_roots(F, roots));
  std::vector<DensePoly> comps;
  for (int i = 0; i < 4; ++i) {
    std::vector<Fp> c(3);
    for (auto& v : c) v = rng.below(F.p);
    c.back() = 1;
    comps.push_back(DensePoly::from_coeffs(F, std::move(c)));
  }
  RPoly g = crt_assemble(R, comps, roots);
  for (std::size_t i = 0; i < roots.size(); ++i) CHECK(rp_component(R, g, roots[i]) == comps[i]);
}

TEST_CASE("survey golden counts") {
  CHECK(survey_exhaustive(FieldCtx::make(7), 3).balanced == 14);
  CHECK(survey_exhaustive(FieldCtx::make(7), 3).total == 35);
  auto s5 = survey_exhaustive(FieldCtx::make(5), 3);
  CHECK(s5.total == 10);
  CHECK(s5.balanced == 5);
  auto even = survey_exhaustive(FieldCtx::make(7), 2);
  CHECK(even.total == 21);
  CHECK(even.balanced == 0);
  auto s11 = survey_exhaustive(FieldCtx::make(11), 5);
  CHECK(s11.total == 462);
  CHECK(s11.balanced == 22);
  CHECK_THROWS_AS(survey_exhaustive(FieldCtx::make(10007), 5), Error);
}

TEST_CASE("sampled surveys are seed-stable and consistent") {
  FieldCtx F = FieldCtx::make(7);
  auto a = survey_sampled(F, 3, 500, 9);
  auto b = survey_sampled(F, 3, 500, 9);
  CHECK(a.balanced == b.balanced);
  CHECK(a.total == 500);
  // 14/35 = 0.4 exactly; a 500-draw estimate should land in a wide band.
  CHECK(a.balanced > 100);
  CHECK(a.balanced < 300);
}
