#include <catch2/catch_amalgamated.hpp>

#include "bstar/dsl.hpp"
#include "bstar/forcing.hpp"

using namespace bstar;

TEST_CASE("conditions parse from the wire form") {
  Condition p = parse_condition("(5,3);(3)");
  REQUIRE(p.width() == 2);
  CHECK(p.part(1) == InjectiveTuple({5, 3}));
  CHECK(p.part(2) == InjectiveTuple({3}));
  CHECK(parse_condition("()").width() == 1);
  CHECK_THROWS_AS(parse_condition("(5,5)"), std::invalid_argument);
}

TEST_CASE("formulas parse in prefix notation") {
  FormulaPtr f = parse_formula("(comp 1 2 0 1 =)", 2);
  CHECK(formula_equal(f, Formula::comp(2, 1, 2, 0, 1, true)));

  FormulaPtr g = parse_formula("(and (val 1 0 4) (val 1 1 2 !=))", 1);
  REQUIRE(g->kind() == Formula::Kind::FinAnd);
  CHECK(g->parts().size() == 2);
  CHECK_FALSE(g->parts()[1]->positive());

  SECTION("relation atoms need a signature") {
    Signature sig({{"Edge", 2}});
    FormulaPtr r = parse_formula("(rel 1 Edge 0 1)", 1, &sig);
    CHECK(r->kind() == Formula::Kind::RelAtom);
    CHECK_THROWS_AS(parse_formula("(rel 1 Edge 0 1)", 1), parse_error);
    CHECK_THROWS_AS(parse_formula("(rel 1 Missing 0 1)", 1, &sig), parse_error);
  }

  SECTION("countable families instantiate their index") {
    FormulaPtr c = parse_formula("(or* k (val 1 0 (* 2 k)))", 1);
    REQUIRE(c->kind() == Formula::Kind::CountOr);
    CHECK(formula_equal(c->generator().at(3), Formula::val(1, 1, 0, 6, true)));
    StructureOracle pure = make_pure_set();
    Condition p = parse_condition("(4)");
    CHECK(forces(pure, p, c, Bounds{5, 3, 6}).state == ForceState::forces);
  }

  SECTION("parse errors carry positions") {
    try {
      parse_formula("(comp 1 2 0 zero =)", 2);
      FAIL("expected a parse error");
    } catch (const parse_error& e) {
      CHECK(e.line == 1);
      CHECK(e.column > 1);
    }
  }
}

TEST_CASE("round trip through printing") {
  Signature sig({{"Edge", 2}});
  for (const std::string text :
       {"(comp 1 2 0 1 =)", "(val 1 2 5 !=)", "(rel 1 Edge 0 1)", "(nrel 1 Edge 2 0)",
        "(and (comp 1 1 0 0 =) (or (val 1 0 1) (val 1 1 0)))"}) {
    FormulaPtr f = parse_formula(text, 2, &sig);
    FormulaPtr g = parse_formula(to_string(f, &sig), 2, &sig);
    CHECK(formula_equal(f, g));
  }
}

TEST_CASE("structure declarations load builtins and tables") {
  DslEnvironment env;
  load_declarations(R"(
    rel Lt 2
    structure B builtin pairs
    structure T table { Lt(0,1) Lt(1,2) Lt(0,2) }
  )",
                    env);
  REQUIRE(env.structures.count("B"));
  REQUIRE(env.structures.count("T"));
  CHECK(is_true(env.structures.at("B").query(0, std::vector<Elem>{0, 1})));
  CHECK(is_true(env.structures.at("T").query(0, std::vector<Elem>{0, 1})));
  CHECK(is_false(env.structures.at("T").query(0, std::vector<Elem>{1, 0})));

  SECTION("unknown generators are diagnosed with a position") {
    DslEnvironment env2;
    CHECK_THROWS_AS(load_declarations("structure X builtin nosuch", env2), parse_error);
  }
}

TEST_CASE("interpretation declarations evaluate over structures") {
  DslEnvironment env;
  load_declarations(R"(
    rel Add 3
    rel Mul 3
    structure Z builtin zring
    interp frac {
      dom[2] = (not (rel Add x1 x1 x1));
      sim = (exists e (and (rel Mul x0 y1 e) (rel Mul y0 x1 e)));
      rel Mul = (exists p (and (rel Mul t0_0 t1_0 p)
                               (exists q (and (rel Mul t2_0 t0_1 q)
                                              (exists r (and (rel Mul q t1_1 r)
                                                             (rel Mul p t2_1 r)))))));
    }
  )",
                    env);
  REQUIRE(env.interpretations.count("frac"));
  const Interpretation& I = env.interpretations.at("frac");
  const StructureOracle& Z = env.structures.at("Z");
  EvalBounds b{6, 2, 8, 128};
  CHECK(is_true(I.dom(Z, {{1, 2}}, b)));
  CHECK(is_false(I.dom(Z, {{1, 0}}, b)));
  CHECK(is_true(I.sim(Z, {{1, 3}, {3, 7}}, b)));  // 1/2 and 2/4
  CHECK(is_false(I.sim(Z, {{1, 3}, {1, 1}}, b)));
}
