#pragma once

#include <vector>

#include "bstar/formula.hpp"
#include "bstar/structure.hpp"
#include "bstar/tuples.hpp"

namespace bstar {

namespace detail {

/// ġᵢ⁻¹∘ġⱼ(m) = n under finite approximations, read as it would settle for
/// total injective enumerations extending them.
inline Truth comp_value_eq(const StructureOracle&, const PartialInjection& gi,
                           const PartialInjection& gj, Elem m, Elem n) {
  auto vj = gj.image(m);
  auto vi = gi.image(n);
  if (vj && vi) return truth_of(*vj == *vi);
  if (vj) {
    // g_i already sends some other position to the value, so never n.
    if (gi.hits(*vj)) return truth_of(*gi.preimage(*vj) == n);
    return Truth::unknown;
  }
  if (vi) {
    if (gj.hits(*vi)) return truth_of(*gj.preimage(*vi) == m);
    return Truth::unknown;
  }
  return Truth::unknown;
}

inline Truth val_eq(const PartialInjection& g, Elem m, Elem n) {
  auto v = g.image(m);
  if (v) return truth_of(*v == n);
  if (g.hits(n)) return Truth::is_false;  // n is taken at another position
  return Truth::unknown;
}

}  // namespace detail

/// Three-valued satisfaction under the natural interpretation that
/// substitutes the finite approximations for the formal symbols. A countable
/// disjunction needs a witness among its first `budget` members to come out
/// true and is settled false only when the family is finite and exhausted; a
/// countable conjunction is settled false by a counterexample and comes out
/// true when every member inspected within the budget does.
inline Truth holds(const StructureOracle& base, const FormulaPtr& f,
                   const std::vector<PartialInjection>& gs, int budget) {
  if (static_cast<int>(gs.size()) != f->generic_count())
    throw std::invalid_argument("holds: wrong number of enumerations");
  auto g_at = [&](int i) -> const PartialInjection& { return gs[static_cast<std::size_t>(i - 1)]; };

  switch (f->kind()) {
    case Formula::Kind::CompAtom: {
      Truth t = detail::comp_value_eq(base, g_at(f->outer()), g_at(f->inner()), f->arg(), f->value());
      return f->positive() ? t : truth_not(t);
    }
    case Formula::Kind::ValAtom: {
      Truth t = detail::val_eq(g_at(f->copy()), f->arg(), f->value());
      return f->positive() ? t : truth_not(t);
    }
    case Formula::Kind::RelAtom: {
      std::vector<Elem> image;
      image.reserve(f->args().size());
      for (Elem a : f->args()) {
        auto v = g_at(f->copy()).image(a);
        if (!v) return Truth::unknown;
        image.push_back(*v);
      }
      Truth t = base.query(f->symbol(), image);
      return f->positive() ? t : truth_not(t);
    }
    case Formula::Kind::FinAnd: {
      Truth acc = Truth::is_true;
      for (const auto& c : f->parts()) acc = truth_and(acc, holds(base, c, gs, budget));
      return acc;
    }
    case Formula::Kind::FinOr: {
      Truth acc = Truth::is_false;
      for (const auto& c : f->parts()) acc = truth_or(acc, holds(base, c, gs, budget));
      return acc;
    }
    case Formula::Kind::CountOr: {
      const FormulaGenerator& g = f->generator();
      int n = g.size ? std::min(*g.size, budget) : budget;
      bool saw_unknown = false;
      for (int k = 0; k < n; ++k) {
        Truth t = holds(base, g.at(k), gs, budget);
        if (is_true(t)) return Truth::is_true;
        if (is_unknown(t)) saw_unknown = true;
      }
      bool exhausted = g.size && *g.size <= budget;
      if (exhausted && !saw_unknown) return Truth::is_false;
      return Truth::unknown;
    }
    case Formula::Kind::CountAnd: {
      const FormulaGenerator& g = f->generator();
      int n = g.size ? std::min(*g.size, budget) : budget;
      for (int k = 0; k < n; ++k) {
        Truth t = holds(base, g.at(k), gs, budget);
        if (is_false(t)) return Truth::is_false;
        if (is_unknown(t)) return Truth::unknown;
      }
      return Truth::is_true;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace bstar
