#include <catch2/catch_amalgamated.hpp>

#include "bstar/backforth.hpp"
#include "bstar/structure.hpp"
#include "bstar/tuples.hpp"

using namespace bstar;

namespace {

// Test-side view of the fixed integer enumeration 0, 1, -1, 2, -2, ...
// kept separate from the library's own arithmetic.
long long int_at(int i) { return i == 0 ? 0 : (i % 2 ? (i + 1) / 2 : -(i / 2)); }

}  // namespace

TEST_CASE("atomic evaluation answers from the diagram") {
  StructureOracle dlo = make_dense_order();
  // Irreflexivity of the dense order at its first point.
  CHECK_FALSE(dlo.eval_atomic(0, {0, 0}));

  StructureOracle pure = make_pure_set();
  CHECK(pure.signature().empty());
  CHECK_THROWS_AS(pure.query(0, std::vector<Elem>{0}), std::invalid_argument);

  StructureOracle z = make_integer_ring();
  // 1 + 1 = 2, and 2 sits at index 3 of the enumeration.
  REQUIRE(int_at(1) == 1);
  REQUIRE(int_at(3) == 2);
  CHECK(z.eval_atomic(0, {1, 1, 3}));
  CHECK_FALSE(z.eval_atomic(0, {1, 1, 4}));
  CHECK(z.eval_atomic(1, {3, 3, 7}));  // 2 * 2 = 4, index 7

  CHECK_THROWS_AS(z.eval_atomic(0, {1, 1}), std::invalid_argument);
}

TEST_CASE("integer enumeration round trips") {
  for (int i = 0; i < 50; ++i) {
    auto idx = detail::integer_index(int_at(i));
    REQUIRE(idx.has_value());
    CHECK(*idx == i);
  }
}

TEST_CASE("pullback reads relations through the map") {
  StructureOracle omega = make_omega_order();
  PartialInjection g;
  g.insert(0, 3);
  g.insert(1, 1);
  StructureOracle pulled = pullback(omega, g);
  CHECK(is_true(pulled.query(0, std::vector<Elem>{1, 0})));   // 1 < 3
  CHECK(is_false(pulled.query(0, std::vector<Elem>{0, 1})));  // not 3 < 1
  CHECK(is_unknown(pulled.query(0, std::vector<Elem>{0, 2})));
  CHECK_THROWS_AS(pulled.eval_atomic(0, {0, 2}), insufficient_oracle);

  SECTION("identity pullback is query-identical") {
    StructureOracle same = pullback(omega, [](Elem e) { return e; });
    for (Elem a = 0; a < 6; ++a)
      for (Elem b = 0; b < 6; ++b)
        CHECK(same.query(0, std::vector<Elem>{a, b}) == omega.query(0, std::vector<Elem>{a, b}));
  }

  SECTION("matched pairs through a finite map") {
    StructureOracle pairs = make_matched_pairs();
    PartialInjection h;
    h.insert(0, 2);
    h.insert(1, 3);
    StructureOracle pulled2 = pullback(pairs, h);
    CHECK(is_true(pulled2.query(0, std::vector<Elem>{0, 1})));
  }

  SECTION("pullback composes") {
    StructureOracle pairs = make_matched_pairs();
    PartialInjection f;
    f.insert(0, 1);
    f.insert(1, 2);
    PartialInjection k;
    k.insert(1, 4);
    k.insert(2, 5);
    StructureOracle two_step = pullback(pullback(pairs, k), f);
    StructureOracle one_step = pullback(pairs, k.composed_with(f));
    for (Elem a = 0; a < 3; ++a)
      for (Elem b = 0; b < 3; ++b)
        CHECK(two_step.query(0, std::vector<Elem>{a, b}) ==
              one_step.query(0, std::vector<Elem>{a, b}));
  }
}

TEST_CASE("injective tuples reject repeats and expose lookups") {
  CHECK_THROWS_AS(InjectiveTuple({1, 2, 1}), std::invalid_argument);
  InjectiveTuple t({5, 3});
  CHECK(t.at(1) == 3);
  CHECK_FALSE(t.at(2).has_value());
  CHECK(t.position_of(5) == 0);
  CHECK(t.prefix(1).is_prefix_of(t));
}

TEST_CASE("partial injections stay injective and functional") {
  PartialInjection g;
  CHECK(g.insert(0, 4));
  CHECK(g.insert(0, 4));       // re-insert is fine
  CHECK_FALSE(g.insert(0, 5)); // functionality
  CHECK_FALSE(g.insert(2, 4)); // injectivity
  CHECK(g.image(0) == 4);
  CHECK(g.preimage(4) == 0);
  CHECK(g.inverse().image(4) == 0);
}

TEST_CASE("back-and-forth extension") {
  SECTION("dense order extends the empty map onto targets") {
    StructureOracle dlo = make_dense_order();
    auto r = extend_partial_automorphism(dlo, {}, {0, 1}, 4);
    REQUIRE(r.status == ExtendResult::Status::extended);
    CHECK(r.map.map.defined(0));
    CHECK(r.map.map.defined(1));
    CHECK(is_true(preserves_and_reflects(dlo, r.map.map)));
  }

  SECTION("omega order refuses to move the minimum") {
    StructureOracle omega = make_omega_order();
    PartialAutomorphism p;
    p.map.insert(0, 1);
    auto r = extend_partial_automorphism(omega, p, {}, 2);
    REQUIRE(r.status == ExtendResult::Status::failed);
    CHECK(r.blocking == 0);
  }

  SECTION("identity maps come back unchanged") {
    StructureOracle pairs = make_matched_pairs();
    PartialAutomorphism p;
    for (Elem e = 0; e < 4; ++e) p.map.insert(e, e);
    auto r = extend_partial_automorphism(pairs, p, {0, 1, 2, 3}, 4);
    REQUIRE(r.status == ExtendResult::Status::extended);
    CHECK(r.map.map == p.map);
  }

  SECTION("successful extensions preserve and reflect") {
    StructureOracle pairs = make_matched_pairs();
    PartialAutomorphism p;
    p.map.insert(0, 2);  // send pair {0,1} onto pair {2,3}
    auto r = extend_partial_automorphism(pairs, p, {1, 4}, 4);
    REQUIRE(r.status == ExtendResult::Status::extended);
    CHECK(is_true(preserves_and_reflects(pairs, r.map.map)));
    CHECK(r.map.map.image(1) == 3);
  }
}
