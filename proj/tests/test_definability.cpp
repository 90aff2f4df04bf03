#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bstar/definability.hpp"

using namespace bstar;

namespace {

Condition cond(std::vector<std::vector<Elem>> parts) {
  std::vector<InjectiveTuple> ts;
  for (auto& p : parts) ts.emplace_back(p);
  return Condition(std::move(ts));
}

}  // namespace

TEST_CASE("compiled atoms evaluate on condition entries") {
  StructureOracle pairs = make_matched_pairs();
  Bounds b{6, 3, 4};

  FormulaPtr f = Formula::rel(1, 1, 0, {0, 1}, true);
  CompiledForcingPredicate pred = definability_compile(f, 1);
  CHECK(pred.tag == ComplexityTag{0, ComplexityTag::Side::Delta});
  CHECK(is_true(pred.eval(pairs, cond({{2, 3}}), b)));
  CHECK(is_false(pred.eval(pairs, cond({{2, 4}}), b)));
  CHECK(is_false(pred.eval(pairs, cond({{2}}), b)));  // entry missing: not in the set
}

TEST_CASE("compiled countable disjunction carries a sigma tag") {
  auto gen = make_generator([](int n) { return Formula::comp(1, 1, 1, n, n, true); }, std::nullopt, "k");
  FormulaPtr f = Formula::count_or(1, gen);
  CHECK(definability_compile(f, 1).tag == ComplexityTag{1, ComplexityTag::Side::Sigma});
}

TEST_CASE("raw value atoms are rejected") {
  FormulaPtr f = Formula::val(1, 1, 0, 0, true);
  CHECK_THROWS_AS(definability_compile(f, 1), std::invalid_argument);
}

TEST_CASE("compiled predicate agrees with the forcing engine") {
  StructureOracle pure = make_pure_set();
  Bounds b{6, 3, 3};
  std::mt19937 rng(99);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

  auto random_restricted = [&](int depth) {
    auto self = [&](auto&& rec, int d) -> FormulaPtr {
      if (d == 0 || pick(3) == 0)
        return Formula::comp(2, 1 + pick(2), 1 + pick(2), pick(3), pick(3), pick(2) == 0);
      int c = pick(4);
      if (c == 0) {
        int m = pick(3);
        auto gen = make_generator(
            [m](int n) { return Formula::comp(2, 1, 2, m, n, true); }, 4,
            "k<(4) (comp 1 2 " + std::to_string(m) + " k =)");
        return pick(2) ? Formula::count_or(2, gen) : Formula::count_and(2, gen);
      }
      std::vector<FormulaPtr> parts;
      int n = 1 + pick(2);
      for (int i = 0; i < n; ++i) parts.push_back(rec(rec, d - 1));
      return pick(2) ? Formula::fin_and(2, std::move(parts)) : Formula::fin_or(2, std::move(parts));
    };
    return self(self, depth);
  };

  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Elem> t1, t2;
    for (int k = 0; k < pick(3); ++k) {
      Elem e = pick(6);
      if (std::find(t1.begin(), t1.end(), e) == t1.end()) t1.push_back(e);
    }
    for (int k = 0; k < pick(3); ++k) {
      Elem e = pick(6);
      if (std::find(t2.begin(), t2.end(), e) == t2.end()) t2.push_back(e);
    }
    Condition p = cond({t1, t2});
    FormulaPtr f = random_restricted(2);

    ForcingVerdict direct = forces(pure, p, f, b);
    CompiledForcingPredicate pos = definability_compile(f, 2);
    CompiledForcingPredicate neg = definability_compile(formal_negation(f), 2);
    Truth in_set = pos.eval(pure, p, b);
    Truth neg_in_set = neg.eval(pure, p, b);

    bool ok = true;
    if (direct.state == ForceState::forces) ok = is_true(in_set);
    if (direct.state == ForceState::forces_negation) ok = is_true(neg_in_set);
    if (direct.state == ForceState::undecided && direct.certified)
      ok = is_false(in_set) && is_false(neg_in_set);
    if (is_true(in_set)) ok = ok && direct.state == ForceState::forces;
    if (is_true(neg_in_set)) ok = ok && direct.state == ForceState::forces_negation;
    if (!ok) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("condition-shaped definable view round trips") {
  StructureOracle pure = make_pure_set();
  FormulaPtr f = Formula::comp(2, 1, 2, 0, 1, true);
  DefinableRelation rel = as_definable(definability_compile(f, 2), 2);
  EvalBounds eb{6, 3, 3};
  CHECK(is_true(rel(pure, {{5, 3}, {3}}, eb)));
  CHECK(is_false(rel(pure, {{5, 4}, {3}}, eb)));
}
