#pragma once

#include <memory>
#include <string>

#include "bstar/condition.hpp"
#include "bstar/definable.hpp"
#include "bstar/forcing.hpp"

namespace bstar {

/// The compiled form of {p : p forces f} for a sentence of the restricted
/// language: a predicate on conditions evaluated directly over the base
/// structure, built by induction on f and never consulting the forcing
/// engine. True and false answers are certificates; unknown records bound
/// exhaustion.
struct CompiledForcingPredicate {
  ComplexityTag tag;
  std::string label;
  std::function<Truth(const StructureOracle&, const Condition&, const Bounds&)> eval;
};

namespace detail {

inline Truth compiled_eval(const StructureOracle& base, const Condition& p, const FormulaPtr& f,
                           const Bounds& bounds) {
  switch (f->kind()) {
    case Formula::Kind::CompAtom: {
      const InjectiveTuple& bi = p.part(f->outer());
      const InjectiveTuple& bj = p.part(f->inner());
      auto vi = bi.at(f->value());
      auto vj = bj.at(f->arg());
      if (f->positive()) return truth_of(vi && vj && *vi == *vj);
      if (vi && vj && *vi != *vj) return Truth::is_true;
      if (vi) {
        auto pos = bj.position_of(*vi);
        if (pos && *pos != f->arg()) return Truth::is_true;
      }
      if (vj) {
        auto pos = bi.position_of(*vj);
        if (pos && *pos != f->value()) return Truth::is_true;
      }
      return Truth::is_false;
    }
    case Formula::Kind::RelAtom: {
      const InjectiveTuple& bi = p.part(f->copy());
      std::vector<Elem> image;
      for (Elem a : f->args()) {
        auto v = bi.at(a);
        if (!v) return Truth::is_false;
        image.push_back(*v);
      }
      Truth t = base.query(f->symbol(), image);
      if (is_unknown(t)) return Truth::unknown;
      return truth_of(f->positive() ? is_true(t) : is_false(t));
    }
    case Formula::Kind::ValAtom:
      throw std::invalid_argument("definability covers only the restricted language");
    case Formula::Kind::FinAnd: {
      Truth acc = Truth::is_true;
      for (const auto& c : f->parts()) acc = truth_and(acc, compiled_eval(base, p, c, bounds));
      return acc;
    }
    case Formula::Kind::FinOr: {
      Truth acc = Truth::is_false;
      for (const auto& c : f->parts()) acc = truth_or(acc, compiled_eval(base, p, c, bounds));
      return acc;
    }
    case Formula::Kind::CountOr: {
      const FormulaGenerator& g = f->generator();
      int n = g.size ? std::min(*g.size, bounds.depth) : bounds.depth;
      bool saw_unknown = false;
      for (int k = 0; k < n; ++k) {
        Truth t = compiled_eval(base, p, g.at(k), bounds);
        if (is_true(t)) return Truth::is_true;
        if (is_unknown(t)) saw_unknown = true;
      }
      if (!saw_unknown && g.size && *g.size <= bounds.depth) return Truth::is_false;
      return Truth::unknown;
    }
    case Formula::Kind::CountAnd: {
      // Forced exactly when no extension forces the negation of any member;
      // the universal sweep over extensions is rendered directly.
      const FormulaGenerator& g = f->generator();
      bool cert = pool_certified(base, bounds);
      int n = g.size ? std::min(*g.size, bounds.depth) : bounds.depth;
      bool saw_unknown = false;
      for (int k = 0; k < n; ++k) {
        FormulaPtr refuted = formal_negation(g.at(k));
        Truth found = Truth::is_false;
        for_each_extension(p, bounds.pool, bounds.max_len, [&](const Condition& q) {
          Truth t = compiled_eval(base, q, refuted, bounds);
          if (is_true(t)) {
            found = Truth::is_true;
            return true;
          }
          if (is_unknown(t)) saw_unknown = true;
          return false;
        });
        if (is_true(found)) return Truth::is_false;  // a genuine counterexample extension
      }
      if (saw_unknown || !cert) return Truth::unknown;
      return Truth::is_true;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

/// Compiles a restricted-language sentence into the predicate defining the
/// conditions that force it. Complexity matches the sentence's own tag.
inline CompiledForcingPredicate definability_compile(const FormulaPtr& f, int ell) {
  if (!f->restricted())
    throw std::invalid_argument("definability covers only the restricted language");
  if (f->generic_count() != ell)
    throw std::invalid_argument("generic count mismatch in definability compile");
  CompiledForcingPredicate out;
  out.tag = classify(f);
  out.label = "forcing-set of " + to_string(f);
  out.eval = [f](const StructureOracle& base, const Condition& p, const Bounds& bounds) {
    return detail::compiled_eval(base, p, f, bounds);
  };
  return out;
}

/// View of the compiled predicate as a definable relation on tuple lists;
/// each argument slot carries one coordinate of a condition.
inline DefinableRelation as_definable(const CompiledForcingPredicate& pred, int ell) {
  DefinableRelation rel;
  rel.tag = pred.tag;
  rel.label = pred.label;
  rel.eval = [pred, ell](const StructureOracle& s, const TupleArgs& args, const EvalBounds& b) {
    if (static_cast<int>(args.size()) != ell)
      throw std::invalid_argument("condition shape mismatch");
    std::vector<InjectiveTuple> parts;
    for (const auto& t : args) parts.emplace_back(t);
    return pred.eval(s, Condition(std::move(parts)), Bounds{b.pool, b.max_len, b.budget});
  };
  return rel;
}

}  // namespace bstar
