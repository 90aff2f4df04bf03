#pragma once

#include <random>
#include <string>
#include <vector>

#include "bstar/forcing.hpp"

namespace bstar {

/// What a desk-scale generic has to achieve: decide each listed sentence,
/// inside the given pool, reproducibly for a fixed seed.
struct GenericBudget {
  std::vector<FormulaPtr> formulas;
  Elem pool = 6;
  int max_len = 4;
  int depth = 4;
  std::uint64_t seed = 0;
};

struct GenericResult {
  std::vector<PartialInjection> enumerations;
  Condition chain;  // the finite approximations as one condition
  std::vector<std::string> deficiencies;

  GenericResult() : chain(Condition::empty(1)) {}
};

/// Builds finite approximations g_1..g_ell: a seeded random start, extension
/// onto the whole pool so inverse lookups below it settle, then a deciding
/// extension for every budget sentence. Deciding after the onto extension
/// keeps the universal sweeps small: the chain itself usually decides.
inline GenericResult build_generic(int ell, const GenericBudget& budget, const StructureOracle& base) {
  std::mt19937_64 rng(budget.seed);
  Condition cur = Condition::empty(ell);

  // Seeded start: a short random injective tuple per coordinate.
  for (int i = 1; i <= ell; ++i) {
    int len = static_cast<int>(rng() % 3);
    InjectiveTuple t;
    for (int k = 0; k < len; ++k) {
      Elem e = static_cast<Elem>(rng() % static_cast<std::uint64_t>(budget.pool));
      if (!t.contains(e)) t = t.extended(e);
    }
    cur = cur.with_part(i, t);
  }

  for (int i = 1; i <= ell; ++i) {
    InjectiveTuple t = cur.part(i);
    for (Elem e = 0; e < budget.pool; ++e)
      if (!t.contains(e)) t = t.extended(e);
    cur = cur.with_part(i, t);
  }

  GenericResult out;
  Bounds bounds{budget.pool, budget.max_len, budget.depth};
  for (const auto& f : budget.formulas) {
    auto [q, v] = decide(base, cur, f, bounds);
    if (v.state == ForceState::undecided)
      out.deficiencies.push_back("undecidable within bounds: " + to_string(f, &base.signature()));
    else
      cur = q;
  }

  out.chain = cur;
  out.enumerations = cur.as_injections();
  return out;
}

}  // namespace bstar
