#include <catch2/catch_amalgamated.hpp>

#include "bstar/homomorphism.hpp"

using namespace bstar;

TEST_CASE("the standardizer is the identity on canonical copies") {
  for (const StructureOracle& s : {make_pure_set(), make_matched_pairs(), make_dense_order()}) {
    CopyStandardizer gamma = backforth_standardizer(s);
    Copy canon = canonical_copy(s, 16);
    StructureOracle o = canon.oracle();
    for (Elem m = 0; m < 6; ++m) {
      auto v = gamma.value(o, m);
      REQUIRE(v.has_value());
      CHECK(*v == m);
    }
  }
}

TEST_CASE("the standardizer straightens scrambled copies") {
  StructureOracle pairs = make_matched_pairs();
  CopyStandardizer gamma = backforth_standardizer(pairs);
  Copy c = permuted_copy(pairs, {4, 5, 2, 3, 0, 1, 6, 7, 8, 9, 10, 11}, "scrambled");
  StructureOracle o = c.oracle();
  PartialInjection built;
  for (Elem m = 0; m < 6; ++m) {
    auto v = gamma.value(o, m);
    REQUIRE(v.has_value());
    built.insert(m, *v);
  }
  // The straightened map is a partial isomorphism of the copy onto the base.
  for (Elem x = 0; x < 6; ++x)
    for (Elem y = 0; y < 6; ++y)
      CHECK(o.query(0, std::vector<Elem>{x, y}) ==
            pairs.query(0, std::vector<Elem>{*built.image(x), *built.image(y)}));
}

TEST_CASE("functors from homomorphisms restrict to the homomorphism") {
  StructureOracle pure = make_pure_set().with_hint(4);

  SECTION("identity homomorphism on the pure set") {
    FunctorOperator G = functor_from_homomorphism(identity_homomorphism(),
                                                  backforth_standardizer(pure), pure, pure, 32);
    Copy canon = canonical_copy(pure, 12);
    StructureOracle o = canon.oracle();
    PartialInjection swap;
    swap.insert(0, 1);
    swap.insert(1, 0);
    for (Elem e = 2; e < 12; ++e) swap.insert(e, e);
    MorphismData m = morphism_data(o, o, swap);
    CHECK(apply_morphism(G, m, 0) == 1);
    CHECK(apply_morphism(G, m, 1) == 0);
    CHECK(apply_morphism(G, m, 5) == 5);
  }

  SECTION("class collapse on the matched pairs") {
    StructureOracle pairs = make_matched_pairs();
    FunctorOperator G = functor_from_homomorphism(class_collapse_homomorphism(),
                                                  backforth_standardizer(pairs), pairs, pure, 32);
    Copy canon = canonical_copy(pairs, 12);
    StructureOracle o = canon.oracle();

    PartialInjection inswap;  // swap inside the first pair
    inswap.insert(0, 1);
    inswap.insert(1, 0);
    for (Elem e = 2; e < 12; ++e) inswap.insert(e, e);
    MorphismData m1 = morphism_data(o, o, inswap);
    for (Elem c = 0; c < 4; ++c) CHECK(apply_morphism(G, m1, c) == c);

    PartialInjection pairswap;  // swap the first two pairs
    pairswap.insert(0, 2);
    pairswap.insert(1, 3);
    pairswap.insert(2, 0);
    pairswap.insert(3, 1);
    for (Elem e = 4; e < 12; ++e) pairswap.insert(e, e);
    MorphismData m2 = morphism_data(o, o, pairswap);
    CHECK(apply_morphism(G, m2, 0) == 1);
    CHECK(apply_morphism(G, m2, 1) == 0);
    CHECK(apply_morphism(G, m2, 2) == 2);
  }

  SECTION("identities go to identities on sampled copies") {
    StructureOracle pairs = make_matched_pairs();
    FunctorOperator G = functor_from_homomorphism(class_collapse_homomorphism(),
                                                  backforth_standardizer(pairs), pairs, pure, 32);
    for (const Copy& c : sample_copies(pairs, 3, 10, 5)) {
      StructureOracle o = c.oracle();
      MorphismData idm{o, o, [](Elem m) -> std::optional<Elem> { return m; },
                       [](Elem m) -> std::optional<Elem> { return m; }};
      for (Elem i = 0; i < 3; ++i) {
        auto v = apply_morphism(G, idm, i);
        if (v) CHECK(*v == i);
      }
    }
  }
}

TEST_CASE("adjoint equivalences induce mutually inverse group maps") {
  StructureOracle pairs = make_matched_pairs();
  AdjointData adj{identity_functor(pairs), identity_functor(pairs), identity_transformation(),
                  identity_transformation()};
  auto autos = sample_automorphisms(pairs, 8, 8, 13);
  GroupIsoPair iso = iso_from_equivalence(adj, pairs, pairs, autos, autos, 6);
  CHECK(iso.report.passed());
  CHECK(iso.report.checks > 0);

  SECTION("a bent unit breaks the inverse identities") {
    AdjointData bent = adj;
    bent.eta = {"bent", [](const StructureOracle&, Elem m) -> std::optional<Elem> {
                  if (m == 0) return 2;
                  if (m == 2) return 0;
                  return m;
                }};
    GroupIsoPair bad = iso_from_equivalence(bent, pairs, pairs, autos, autos, 6);
    CHECK_FALSE(bad.report.passed());
  }
}
