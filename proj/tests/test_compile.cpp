#include <catch2/catch_amalgamated.hpp>

#include "bstar/functor_compile.hpp"
#include "bstar/functor_registry.hpp"

using namespace bstar;

namespace {

Condition cond(std::vector<std::vector<Elem>> parts) {
  std::vector<InjectiveTuple> ts;
  for (auto& p : parts) ts.emplace_back(p);
  return Condition(std::move(ts));
}

}  // namespace

TEST_CASE("the identity operator compiles morphism values to single atoms") {
  StructureOracle pure = make_pure_set().with_hint(4);
  FunctorOperator F = identity_functor(pure);
  FormulaPtr compiled =
      compile_functor_statement(F, {FunctorStatement::Kind::morphism_value, 1, 1});
  REQUIRE(compiled->kind() == Formula::Kind::CountOr);
  CHECK(compiled->restricted());

  // The only disjunct is the matching composition atom.
  FormulaPtr d0 = compiled->generator().at(0);
  REQUIRE(d0->kind() == Formula::Kind::FinAnd);
  REQUIRE(d0->parts().size() == 1);
  CHECK(formula_equal(d0->parts()[0], Formula::comp(2, 2, 1, 1, 1, true)));
  CHECK(formula_equal(compiled->generator().at(1), Formula::falsum(2)));

  SECTION("forcing the compiled sentence matches forcing the atom") {
    FormulaPtr atom = Formula::comp(2, 2, 1, 1, 1, true);
    Bounds b{4, 2, 4};
    int seen_all_states = 0;
    for_each_extension(Condition::empty(2), 4, 2, [&](const Condition& p) {
      ForcingVerdict via_compiled = forces(pure, p, compiled, b);
      ForcingVerdict via_atom = forces(pure, p, atom, b);
      REQUIRE(via_compiled.state == via_atom.state);
      if (via_compiled.state != ForceState::undecided) ++seen_all_states;
      return false;
    });
    CHECK(seen_all_states > 10);
  }
}

TEST_CASE("the constant operator compiles to tautologies and contradictions") {
  StructureOracle pure = make_pure_set().with_hint(4);
  StructureOracle dlo = make_dense_order();
  FunctorOperator F = constant_functor(pure, dlo);
  Bounds b{4, 2, 4};
  Condition empty = Condition::empty(2);

  FormulaPtr same = compile_functor_statement(F, {FunctorStatement::Kind::morphism_value, 3, 3});
  CHECK(forces(pure, empty, same, b).state == ForceState::forces);

  FormulaPtr differ = compile_functor_statement(F, {FunctorStatement::Kind::morphism_value, 3, 4});
  CHECK(forces(pure, empty, differ, b).state == ForceState::forces_negation);
}

TEST_CASE("structure facts compile to diagram-atom disjunctions") {
  StructureOracle pairs = make_matched_pairs();
  FunctorOperator F = identity_functor(pairs);
  FunctorStatement st;
  st.kind = FunctorStatement::Kind::structure_fact;
  st.symbol = 0;
  st.args = {0, 1};
  FormulaPtr compiled = compile_functor_statement(F, st);
  FormulaPtr atom = Formula::rel(1, 1, 0, {0, 1}, true);
  Bounds b{10, 3, 4};  // the pool must reach the presentation's universe hint
  for_each_extension(Condition::empty(1), 6, 2, [&](const Condition& p) {
    CHECK(forces(pairs, p, compiled, b).state == forces(pairs, p, atom, b).state);
    return false;
  });
}

TEST_CASE("the inverse law of the identity operator is forced by the empty condition") {
  StructureOracle pure = make_pure_set().with_hint(4);
  FunctorOperator F = identity_functor(pure);
  FormulaPtr law = compile_functor_statement(F, {FunctorStatement::Kind::inverse_law});
  Bounds b{4, 2, 2};
  ForcingVerdict v = forces(pure, Condition::empty(2), law, b);
  CHECK(v.state == ForceState::forces);
}

TEST_CASE("morphism values from a fixed copy use raw value atoms") {
  StructureOracle pairs = make_matched_pairs();
  FunctorOperator F = identity_functor(pairs);
  StructureOracle fixed = pairs.renamed("hat");
  FunctorStatement st;
  st.kind = FunctorStatement::Kind::hat_morphism_value;
  st.input = 2;
  st.output = 1;
  FormulaPtr compiled = compile_functor_statement(F, st, &fixed);
  CHECK_FALSE(compiled->restricted());

  // The image of 2 is 1 exactly when the enumeration's position 1 holds 2.
  FormulaPtr expected = Formula::val(1, 1, 1, 2, true);
  Bounds b{10, 3, 6};
  for_each_extension(Condition::empty(1), 5, 2, [&](const Condition& p) {
    CHECK(forces(pairs, p, compiled, b).state == forces(pairs, p, expected, b).state);
    return false;
  });
}

TEST_CASE("a run past its use bound surfaces as an operator divergence") {
  StructureOracle pure = make_pure_set().with_hint(4);
  FunctorOperator F = divergent_functor(pure);
  FormulaPtr compiled =
      compile_functor_statement(F, {FunctorStatement::Kind::morphism_value, 0, 0});
  CHECK_THROWS_AS(forces(pure, Condition::empty(2), compiled, Bounds{4, 2, 2}),
                  operator_divergence);
}

TEST_CASE("compiled sentences stay within the declared sublanguage") {
  StructureOracle z = make_integer_ring();
  FunctorOperator F = fraction_field_functor();
  FormulaPtr mv = compile_functor_statement(F, {FunctorStatement::Kind::morphism_value, 0, 0});
  CHECK(mv->restricted());
  CHECK(classify(mv) == ComplexityTag{1, ComplexityTag::Side::Sigma});
}
