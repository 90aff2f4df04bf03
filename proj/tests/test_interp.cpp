#include <catch2/catch_amalgamated.hpp>

#include "bstar/interp_registry.hpp"
#include "bstar/laws.hpp"

using namespace bstar;

namespace {

long long int_at(int i) { return i == 0 ? 0 : (i % 2 ? (i + 1) / 2 : -(i / 2)); }

}  // namespace

TEST_CASE("fraction interpretation over the integer ring") {
  StructureOracle z = make_integer_ring();
  Interpretation I = fraction_interpretation();
  EvalBounds b{6, 2, 8, 128};

  SECTION("domain excludes zero denominators") {
    CHECK(is_true(I.dom(z, {{1, 2}}, b)));
    CHECK(is_false(I.dom(z, {{1, 0}}, b)));  // index 0 carries the integer zero
  }

  SECTION("cross multiplication identifies equal ratios") {
    // 1/2 and 2/4: indices 1,3 and 3,7.
    REQUIRE(int_at(3) == 2);
    REQUIRE(int_at(7) == 4);
    CHECK(is_true(I.sim(z, {{1, 3}, {3, 7}}, b)));
    CHECK(is_false(I.sim(z, {{1, 3}, {1, 1}}, b)));
  }

  SECTION("the fragment passes the axioms and matches plain arithmetic") {
    InterpFragment frag = interpret(I, z, b);
    CHECK(frag.violations.empty());
    CHECK_FALSE(frag.provisional);
    CHECK(frag.class_count() >= 8);

    // Compare facts against direct rational arithmetic through the witness.
    InterpretationWitness w = fraction_witness();
    auto issues = check_witness(I, w, z, make_rational_ring(), frag, b);
    for (const auto& s : issues) INFO(s);
    CHECK(issues.empty());
  }
}

TEST_CASE("identity interpretation reproduces the structure") {
  StructureOracle pairs = make_matched_pairs();
  Interpretation I = identity_interpretation(pairs);
  EvalBounds b{6, 1, 8, 16};
  InterpFragment frag = interpret(I, pairs, b);
  CHECK(frag.violations.empty());
  REQUIRE(frag.class_count() == 6);
  for (Elem x = 0; x < 6; ++x)
    for (Elem y = 0; y < 6; ++y)
      CHECK(frag.holds(0, {x, y}) == is_true(pairs.query(0, std::vector<Elem>{x, y})));
}

TEST_CASE("class interpretation partitions the matched pairs") {
  StructureOracle pairs = make_matched_pairs();
  Interpretation I = class_interpretation();
  EvalBounds b{10, 1, 8, 16};
  InterpFragment frag = interpret(I, pairs, b);
  CHECK(frag.violations.empty());
  CHECK(frag.class_count() == 5);

  auto issues = check_witness(I, class_witness(), pairs, make_pure_set(), frag, b);
  CHECK(issues.empty());
}

TEST_CASE("canonical bijection is stable under pool growth for element-style domains") {
  StructureOracle pairs = make_matched_pairs();
  Interpretation I = class_interpretation();
  InterpFragment small = interpret(I, pairs, {6, 1, 8, 16});
  InterpFragment large = interpret(I, pairs, {10, 1, 8, 16});
  TauBijection t_small = tau(small);
  TauBijection t_large = tau(large);
  REQUIRE(t_small.size() <= t_large.size());
  for (int k = 0; k < t_small.size(); ++k) CHECK(t_small.tuple_of(k) == t_large.tuple_of(k));
}

TEST_CASE("induced functor transports classes along morphisms") {
  StructureOracle pairs = make_matched_pairs();
  EvalBounds b{8, 1, 8, 16};

  SECTION("identity interpretation: the swap comes back as itself") {
    Interpretation I = identity_interpretation(pairs);
    FunctorOperator F = induced_functor(I, pairs, b);
    Copy canon = canonical_copy(pairs, 8);
    StructureOracle o = canon.oracle();
    PartialInjection swap;
    swap.insert(0, 1);
    swap.insert(1, 0);
    for (Elem e = 2; e < 8; ++e) swap.insert(e, e);
    MorphismData m = morphism_data(o, o, swap);
    CHECK(apply_morphism(F, m, 0) == 1);
    CHECK(apply_morphism(F, m, 1) == 0);
    CHECK(apply_morphism(F, m, 2) == 2);
  }

  SECTION("class interpretation: swapping matched vertices fixes every class") {
    Interpretation I = class_interpretation();
    FunctorOperator F = induced_functor(I, pairs, b);
    Copy canon = canonical_copy(pairs, 8);
    StructureOracle o = canon.oracle();
    PartialInjection swap;
    swap.insert(0, 1);
    swap.insert(1, 0);
    for (Elem e = 2; e < 8; ++e) swap.insert(e, e);
    MorphismData m = morphism_data(o, o, swap);
    for (Elem c = 0; c < 4; ++c) CHECK(apply_morphism(F, m, c) == c);
  }

  SECTION("pair swap permutes the classes") {
    Interpretation I = class_interpretation();
    FunctorOperator F = induced_functor(I, pairs, b);
    Copy canon = canonical_copy(pairs, 8);
    StructureOracle o = canon.oracle();
    PartialInjection swap;
    swap.insert(0, 2);
    swap.insert(1, 3);
    swap.insert(2, 0);
    swap.insert(3, 1);
    for (Elem e = 4; e < 8; ++e) swap.insert(e, e);
    MorphismData m = morphism_data(o, o, swap);
    CHECK(apply_morphism(F, m, 0) == 1);
    CHECK(apply_morphism(F, m, 1) == 0);
  }
}

TEST_CASE("induced functors satisfy the functor laws on samples") {
  StructureOracle pairs = make_matched_pairs();
  EvalBounds b{6, 1, 8, 16};
  FunctorOperator F = induced_functor(class_interpretation(), pairs, b);
  auto samples = sample_copies(pairs, 5, 10, 41);
  LawReport report = check_functor_laws(F, samples, 3);
  CHECK(report.passed());
  CHECK(report.checks > 0);
}

TEST_CASE("induced group action conjugates through the witness") {
  StructureOracle pairs = make_matched_pairs();
  EvalBounds b{10, 1, 8, 16};

  SECTION("identity interpretation: the action is the automorphism itself") {
    Interpretation I = identity_interpretation(pairs);
    InterpretationWitness w = elements_witness();
    PartialInjection swap;
    swap.insert(0, 1);
    swap.insert(1, 0);
    for (Elem e = 2; e < 10; ++e) swap.insert(e, e);
    CHECK(induced_automorphism_value(I, w, pairs, swap, 0, b) == 1);
    CHECK(induced_automorphism_value(I, w, pairs, swap, 1, b) == 0);
    CHECK(induced_automorphism_value(I, w, pairs, swap, 4, b) == 4);
  }

  SECTION("class interpretation: a matched swap acts trivially on classes") {
    Interpretation I = class_interpretation();
    InterpretationWitness w = class_witness();
    PartialInjection swap;
    swap.insert(0, 1);
    swap.insert(1, 0);
    for (Elem e = 2; e < 10; ++e) swap.insert(e, e);
    for (Elem c = 0; c < 5; ++c) CHECK(induced_automorphism_value(I, w, pairs, swap, c, b) == c);
  }

  SECTION("the action preserves composition on sampled automorphism pairs") {
    Interpretation I = class_interpretation();
    InterpretationWitness w = class_witness();
    auto autos = sample_automorphisms(pairs, 14, 10, 99);
    int checked = 0;
    for (std::size_t x = 0; x + 1 < autos.size() && checked < 50; ++x) {
      const PartialInjection& f = autos[x];
      const PartialInjection& g = autos[x + 1];
      PartialInjection fg = f.composed_with(g);
      for (Elem c = 0; c < 4; ++c) {
        auto inner = induced_automorphism_value(I, w, pairs, g, c, b);
        if (!inner) continue;
        auto stepped = induced_automorphism_value(I, w, pairs, f, *inner, b);
        auto direct = induced_automorphism_value(I, w, pairs, fg, c, b);
        if (stepped && direct) {
          CHECK(*stepped == *direct);
          ++checked;
        }
      }
    }
    CHECK(checked >= 20);
  }
}

TEST_CASE("bi-interpretation partners over the matched pairs") {
  StructureOracle pairs = make_matched_pairs();
  StructureOracle cp = make_class_points();
  EvalBounds b{8, 2, 8, 16};

  InterpFragment in_pairs = interpret(classpoints_in_pairs(), pairs, b);
  CHECK(in_pairs.violations.empty());
  auto issues1 = check_witness(classpoints_in_pairs(), classpoints_in_pairs_witness(), pairs, cp,
                               in_pairs, b);
  CHECK(issues1.empty());

  InterpFragment in_cp = interpret(pairs_in_classpoints(), cp, {10, 1, 8, 16});
  CHECK(in_cp.violations.empty());
  auto issues2 =
      check_witness(pairs_in_classpoints(), pairs_in_classpoints_witness(), cp, pairs, in_cp,
                    {10, 1, 8, 16});
  CHECK(issues2.empty());
}
