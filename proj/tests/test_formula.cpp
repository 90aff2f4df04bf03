#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bstar/formula.hpp"
#include "bstar/holds.hpp"
#include "bstar/structure.hpp"

using namespace bstar;

namespace {

FormulaPtr even_value_family(int ell) {
  // ġ₁(0) = 2n over all n.
  return Formula::count_or(
      ell, make_generator([ell](int n) { return Formula::val(ell, 1, 0, 2 * n, true); },
                          std::nullopt, "k (val 1 0 (* 2 k))"));
}

FormulaPtr random_formula(std::mt19937& rng, int ell, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  if (depth == 0 || pick(3) == 0) {
    switch (pick(3)) {
      case 0: return Formula::comp(ell, 1 + pick(ell), 1 + pick(ell), pick(4), pick(4), pick(2) == 0);
      case 1: return Formula::val(ell, 1 + pick(ell), pick(4), pick(4), pick(2) == 0);
      default: return Formula::rel(ell, 1 + pick(ell), 0, {pick(4), pick(4)}, pick(2) == 0);
    }
  }
  if (pick(4) == 0) {
    int base = pick(3);
    auto gen = make_generator(
        [ell, base](int n) { return Formula::val(ell, 1, base, n, true); }, std::nullopt,
        "k (val 1 " + std::to_string(base) + " k)");
    return pick(2) ? Formula::count_or(ell, gen) : Formula::count_and(ell, gen);
  }
  std::vector<FormulaPtr> parts;
  int n = 1 + pick(3);
  for (int i = 0; i < n; ++i) parts.push_back(random_formula(rng, ell, depth - 1));
  return pick(2) ? Formula::fin_and(ell, std::move(parts)) : Formula::fin_or(ell, std::move(parts));
}

}  // namespace

TEST_CASE("formal negation flips atoms and dualizes connectives") {
  FormulaPtr v = Formula::val(1, 1, 2, 5, true);
  FormulaPtr nv = formal_negation(v);
  CHECK(nv->kind() == Formula::Kind::ValAtom);
  CHECK_FALSE(nv->positive());
  CHECK(formula_equal(formal_negation(nv), v));

  FormulaPtr a = Formula::comp(2, 1, 2, 0, 1, true);
  FormulaPtr b = Formula::val(2, 2, 1, 1, false);
  FormulaPtr conj = Formula::fin_and(2, {a, b});
  FormulaPtr neg = formal_negation(conj);
  REQUIRE(neg->kind() == Formula::Kind::FinOr);
  CHECK(formula_equal(neg->parts()[0], formal_negation(a)));
  CHECK(formula_equal(neg->parts()[1], formal_negation(b)));
}

TEST_CASE("negation is an involution, countable connectives included") {
  FormulaPtr f = even_value_family(1);
  CHECK(formula_equal(formal_negation(formal_negation(f)), f));

  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr g = random_formula(rng, 2, 3);
    CHECK(formula_equal(formal_negation(formal_negation(g)), g));
  }
}

TEST_CASE("classification counts alternations of countable connectives") {
  FormulaPtr atom = Formula::comp(1, 1, 1, 0, 0, true);
  FormulaPtr fin = Formula::fin_and(1, {atom, formal_negation(atom)});
  CHECK(classify(fin) == ComplexityTag{0, ComplexityTag::Side::Delta});

  FormulaPtr dis = even_value_family(1);
  CHECK(classify(dis) == ComplexityTag{1, ComplexityTag::Side::Sigma});

  auto inner = make_generator([](int n) { return Formula::val(1, 1, 0, n, true); }, std::nullopt, "k");
  FormulaPtr orf = Formula::count_or(1, inner);
  auto outer = make_generator([orf](int) { return orf; }, std::nullopt, "m");
  FormulaPtr pi2 = Formula::count_and(1, outer);
  CHECK(classify(pi2) == ComplexityTag{2, ComplexityTag::Side::Pi});

  SECTION("negation swaps the side and keeps the rank") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
      FormulaPtr g = random_formula(rng, 2, 3);
      ComplexityTag t = classify(g);
      ComplexityTag nt = classify(formal_negation(g));
      CHECK(t.rank == nt.rank);
      if (t.side == ComplexityTag::Side::Sigma) CHECK(nt.side == ComplexityTag::Side::Pi);
      if (t.side == ComplexityTag::Side::Pi) CHECK(nt.side == ComplexityTag::Side::Sigma);
      if (t.side == ComplexityTag::Side::Delta) CHECK(nt.side == ComplexityTag::Side::Delta);
    }
  }
}

TEST_CASE("restricted flag tracks raw value atoms") {
  CHECK(Formula::comp(2, 1, 2, 0, 0, true)->restricted());
  CHECK_FALSE(Formula::val(1, 1, 0, 0, true)->restricted());
  CHECK_FALSE(even_value_family(1)->restricted());
  auto gen = make_generator([](int n) { return Formula::comp(2, 1, 2, n, n, true); }, std::nullopt, "k");
  CHECK(Formula::count_or(2, gen)->restricted());
}

TEST_CASE("satisfaction under finite approximations") {
  StructureOracle pure = make_pure_set();

  SECTION("value atom through the graph") {
    PartialInjection g1;
    g1.insert(0, 4);
    CHECK(is_true(holds(pure, Formula::val(1, 1, 0, 4, true), {g1}, 4)));
    CHECK(is_false(holds(pure, Formula::val(1, 1, 0, 5, true), {g1}, 4)));
    CHECK(is_unknown(holds(pure, Formula::val(1, 1, 1, 5, true), {g1}, 4)));
    // 4 is taken at position 0, so position 1 cannot carry it.
    CHECK(is_true(holds(pure, Formula::val(1, 1, 1, 4, false), {g1}, 4)));
  }

  SECTION("composition atom through a shared value") {
    PartialInjection g1, g2;
    g1.insert(1, 3);
    g2.insert(0, 3);
    CHECK(is_true(holds(pure, Formula::comp(2, 1, 2, 0, 1, true), {g1, g2}, 4)));
    CHECK(is_false(holds(pure, Formula::comp(2, 1, 2, 0, 0, true), {g1, g2}, 4)));
  }

  SECTION("countable disjunction needs a witness; its negation settles") {
    PartialInjection g1;
    g1.insert(0, 7);
    FormulaPtr f = even_value_family(1);
    CHECK(is_unknown(holds(pure, f, {g1}, 8)));
    CHECK(is_true(holds(pure, formal_negation(f), {g1}, 8)));
  }

  SECTION("relation atoms read the pulled-back diagram") {
    StructureOracle pairs = make_matched_pairs();
    PartialInjection g1;
    g1.insert(0, 2);
    g1.insert(1, 3);
    CHECK(is_true(holds(pairs, Formula::rel(1, 1, 0, {0, 1}, true), {g1}, 4)));
    CHECK(is_false(holds(pairs, Formula::rel(1, 1, 0, {0, 0}, true), {g1}, 4)));
    CHECK(is_unknown(holds(pairs, Formula::rel(1, 1, 0, {0, 2}, true), {g1}, 4)));
  }

  SECTION("decided verdicts are stable as the budget grows") {
    StructureOracle pairs = make_matched_pairs();
    std::mt19937 rng(23);
    PartialInjection g1, g2;
    for (Elem e = 0; e < 6; ++e) {
      g1.insert(e, static_cast<Elem>((e * 2) % 7));
      g2.insert(e, e);
    }
    for (int i = 0; i < 150; ++i) {
      FormulaPtr f = random_formula(rng, 2, 2);
      Truth small = holds(pairs, f, {g1, g2}, 4);
      Truth big = holds(pairs, f, {g1, g2}, 12);
      if (!is_unknown(small)) CHECK(small == big);
    }
  }
}
