#include <catch2/catch_amalgamated.hpp>

#include "bstar/biequiv.hpp"

using namespace bstar;

TEST_CASE("the identity bi-interpretation yields a passing adjoint equivalence") {
  BiInterpretation bi = identity_biinterpretation(make_matched_pairs());
  EvalBounds eb{6, 1, 8, 16};
  AdjointConstruction c = adjoint_from_biinterp(bi, eb, 4, 12, 5, 3);
  std::string first = c.report.violations.empty()
                          ? std::string()
                          : (c.report.violations[0].check + " @ " + c.report.violations[0].instance +
                             ": " + c.report.violations[0].detail);
  INFO(first);
  CHECK(c.report.passed());
  CHECK(c.report.checks > 0);
}

TEST_CASE("the matched-pairs bi-interpretation yields a passing adjoint equivalence") {
  BiInterpretation bi = pairs_biinterpretation();
  EvalBounds eb{6, 2, 8, 16};
  AdjointConstruction c = adjoint_from_biinterp(bi, eb, 3, 12, 4, 9);
  std::string first = c.report.violations.empty()
                          ? std::string()
                          : (c.report.violations[0].check + " @ " + c.report.violations[0].instance +
                             ": " + c.report.violations[0].detail);
  INFO(first);
  CHECK(c.report.passed());
  CHECK(c.report.checks > 0);
}

TEST_CASE("a corrupted collapse graph fails the adjoint checks") {
  BiInterpretation bi = identity_biinterpretation(make_matched_pairs());
  bi.comp_b = {ComplexityTag{0, ComplexityTag::Side::Delta}, "bent collapse",
               [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) -> Truth {
                 if (args.size() != 2 || args[0].size() != 1 || args[1].size() != 1)
                   return Truth::is_false;
                 Elem v = args[0][0];
                 Elem b = args[1][0];
                 if (v == 0) return truth_of(b == 1);  // swap the first pair's collapse
                 if (v == 1) return truth_of(b == 0);
                 return truth_of(v == b);
               }};
  EvalBounds eb{6, 1, 8, 16};
  AdjointConstruction c = adjoint_from_biinterp(bi, eb, 4, 12, 5, 3);
  CHECK_FALSE(c.report.passed());
}

TEST_CASE("extraction turns an adjoint pair back into a bi-interpretation") {
  StructureOracle pairs = make_matched_pairs();
  AdjointData adj{identity_functor(pairs), identity_functor(pairs), identity_transformation(),
                  identity_transformation()};
  Bounds bounds{10, 4, 8};
  WitnessPool pool_b = pool_witnesses(pairs, 6, 3);
  BiInterpretationConstruction c =
      biinterp_from_adjoint(adj, pairs, pairs, bounds, pool_b, pool_b, 6, 21);
  std::string first = c.report.violations.empty()
                          ? std::string()
                          : (c.report.violations[0].check + " @ " + c.report.violations[0].instance +
                             ": " + c.report.violations[0].detail);
  INFO(first);
  CHECK(c.report.passed());

  SECTION("the recovered interpretation matches the registry one up to renaming") {
    EvalBounds eb{5, 3, 6, 16};
    InterpFragment extracted = interpret(c.bi.I, pairs, eb);
    CHECK(extracted.violations.empty());
    InterpFragment registry = interpret(identity_interpretation(pairs), pairs, {5, 1, 6, 16});
    REQUIRE(extracted.class_count() == registry.class_count());
    auto perm = quotient_isomorphism(facts_of(extracted, pairs.signature()),
                                     facts_of(registry, pairs.signature()));
    CHECK(perm.has_value());
  }

  SECTION("witnesses of the recovered interpretation label classes consistently") {
    // The coded element ((v), v-index) of the identity operator lies over v.
    for (Elem v = 0; v < 4; ++v) {
      auto a = c.bi.wI.map(pairs, {v, 0});
      REQUIRE(a.has_value());
      CHECK(*a == v);
    }
  }
}

TEST_CASE("a non-invertible operator pair is rejected as an adjoint equivalence") {
  StructureOracle pairs = make_matched_pairs();
  StructureOracle pure = make_pure_set().with_hint(4);
  // Constant operators cannot form an equivalence: the triangle and
  // naturality families fail.
  AdjointData adj{constant_functor(pairs, pure), constant_functor(pure, pairs),
                  identity_transformation(), identity_transformation()};
  auto samples_b = sample_copies(pairs, 3, 8, 5);
  auto samples_a = sample_copies(pure, 3, 8, 6);
  LawReport report = check_adjoint_equivalence(adj, samples_b, samples_a, 4);
  CHECK_FALSE(report.passed());
}

TEST_CASE("round trip: registry bi-interpretation to adjoint and back") {
  BiInterpretation bi = identity_biinterpretation(make_matched_pairs());
  EvalBounds eb{6, 1, 8, 16};
  AdjointConstruction forward = adjoint_from_biinterp(bi, eb, 3, 12, 4, 31);
  REQUIRE(forward.report.passed());

  StructureOracle pairs = make_matched_pairs();
  Bounds bounds{10, 4, 6};
  WitnessPool pool = pool_witnesses(pairs, 6, 2);
  BiInterpretationConstruction back =
      biinterp_from_adjoint(forward.adj, pairs, pairs, bounds, pool, pool, 5, 17);
  CHECK(back.report.passed());

  EvalBounds ebx{4, 3, 6, 16};
  InterpFragment extracted = interpret(back.bi.I, pairs, ebx);
  InterpFragment registry = interpret(bi.I, pairs, {4, 1, 6, 16});
  REQUIRE(extracted.class_count() == registry.class_count());
  CHECK(quotient_isomorphism(facts_of(extracted, pairs.signature()),
                             facts_of(registry, pairs.signature()))
            .has_value());
}
