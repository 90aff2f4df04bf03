#pragma once

#include <climits>
#include <string>
#include <vector>

#include "bstar/condition.hpp"
#include "bstar/formula.hpp"
#include "bstar/structure.hpp"

namespace bstar {

/// Search bounds for the forcing engine: element pool, part length, and how
/// far countable families are unrolled.
struct Bounds {
  Elem pool = 4;
  int max_len = 3;
  int depth = 4;

  std::string to_string() const {
    return "pool=" + std::to_string(pool) + ",len=" + std::to_string(max_len) +
           ",depth=" + std::to_string(depth);
  }
};

enum class ForceState { forces, forces_negation, undecided };

inline const char* to_string(ForceState s) {
  switch (s) {
    case ForceState::forces: return "forces";
    case ForceState::forces_negation: return "forces-negation";
    default: return "undecided";
  }
}

/// `certified` marks verdicts that no bound growth can change: the two
/// decided states always are, and an undecided verdict is certified exactly
/// when the condition provably forces neither side.
struct ForcingVerdict {
  ForceState state = ForceState::undecided;
  bool certified = false;
  std::string detail;
};

inline bool pool_certified(const StructureOracle& base, const Bounds& b) {
  auto hint = base.universe_hint();
  return hint && b.pool >= *hint;
}

namespace detail {

/// One direction of the forcing relation, every clause implemented as
/// written. `exact` is cleared whenever a truncated search influenced the
/// answer, so callers can tell certificates from bound exhaustion.
inline bool forced_raw(const StructureOracle& base, const Condition& p, const FormulaPtr& f,
                       const Bounds& bounds, bool& exact) {
  switch (f->kind()) {
    case Formula::Kind::CompAtom: {
      const InjectiveTuple& bi = p.part(f->outer());
      const InjectiveTuple& bj = p.part(f->inner());
      auto vi = bi.at(f->value());
      auto vj = bj.at(f->arg());
      if (f->positive()) return vi && vj && *vi == *vj;
      // Defined and distinct, or the value is pinned elsewhere on either side.
      if (vi && vj && *vi != *vj) return true;
      if (vi) {
        auto pos = bj.position_of(*vi);
        if (pos && *pos != f->arg()) return true;
      }
      if (vj) {
        auto pos = bi.position_of(*vj);
        if (pos && *pos != f->value()) return true;
      }
      return false;
    }
    case Formula::Kind::ValAtom: {
      const InjectiveTuple& bi = p.part(f->copy());
      auto v = bi.at(f->arg());
      if (f->positive()) return v && *v == f->value();
      if (v && *v != f->value()) return true;
      auto pos = bi.position_of(f->value());
      return pos && *pos != f->arg();
    }
    case Formula::Kind::RelAtom: {
      const InjectiveTuple& bi = p.part(f->copy());
      std::vector<Elem> image;
      image.reserve(f->args().size());
      for (Elem a : f->args()) {
        auto v = bi.at(a);
        if (!v) return false;
        image.push_back(*v);
      }
      Truth t = base.query(f->symbol(), image);
      if (is_unknown(t)) {
        exact = false;
        return false;
      }
      return f->positive() ? is_true(t) : is_false(t);
    }
    case Formula::Kind::FinAnd: {
      for (const auto& c : f->parts())
        if (!forced_raw(base, p, c, bounds, exact)) return false;
      return true;
    }
    case Formula::Kind::FinOr: {
      for (const auto& c : f->parts())
        if (forced_raw(base, p, c, bounds, exact)) return true;
      return false;
    }
    case Formula::Kind::CountOr: {
      const FormulaGenerator& g = f->generator();
      int n = g.size ? std::min(*g.size, bounds.depth) : bounds.depth;
      for (int k = 0; k < n; ++k)
        if (forced_raw(base, p, g.at(k), bounds, exact)) return true;
      if (!(g.size && *g.size <= bounds.depth)) exact = false;
      return false;
    }
    case Formula::Kind::CountAnd: {
      // Forced when every member, at every extension within the pool, can be
      // forced by a further extension in the same pool. Sound as stated only
      // over a certified pool; the flag records that.
      const FormulaGenerator& g = f->generator();
      bool cert = pool_certified(base, bounds);
      int n = g.size ? std::min(*g.size, bounds.depth) : bounds.depth;
      for (int k = 0; k < n; ++k) {
        FormulaPtr member = g.at(k);
        bool failed = for_each_extension(p, bounds.pool, bounds.max_len, [&](const Condition& q) {
          bool found = for_each_extension(q, bounds.pool, bounds.max_len, [&](const Condition& r) {
            bool ex = true;
            return forced_raw(base, r, member, bounds, ex);
          });
          return !found;  // stop the sweep on a counterexample extension
        });
        if (failed) {
          if (!cert) exact = false;
          return false;
        }
      }
      if (!cert) exact = false;
      return true;
    }
  }
  throw std::logic_error("unreachable");
}

inline void validate_against(const StructureOracle& base, const Condition& p, const FormulaPtr& f) {
  if (f->generic_count() != p.width())
    throw std::invalid_argument("condition width differs from the formula's generic count");
  // Relation atoms must fit the signature; countable families are checked as
  // they are unrolled.
  if (f->kind() == Formula::Kind::RelAtom) {
    if (f->symbol() < 0 || f->symbol() >= base.signature().size())
      throw std::invalid_argument("relation atom names an unknown symbol");
    if (static_cast<int>(f->args().size()) != base.signature().arity(f->symbol()))
      throw std::invalid_argument("relation atom arity mismatch");
  }
  if (f->kind() == Formula::Kind::FinAnd || f->kind() == Formula::Kind::FinOr)
    for (const auto& c : f->parts()) validate_against(base, p, c);
}

}  // namespace detail

/// The forcing relation at `p`, decided within `bounds`: tries the sentence,
/// then its formal negation. Positive answers that leaned on an uncertified
/// pool are reported as undecided rather than as facts.
inline ForcingVerdict forces(const StructureOracle& base, const Condition& p, const FormulaPtr& f,
                             const Bounds& bounds) {
  detail::validate_against(base, p, f);
  bool exact_pos = true;
  bool pos = detail::forced_raw(base, p, f, bounds, exact_pos);
  if (pos && exact_pos) return {ForceState::forces, true, ""};
  bool exact_neg = true;
  bool neg = detail::forced_raw(base, p, formal_negation(f), bounds, exact_neg);
  if (neg && exact_neg) return {ForceState::forces_negation, true, ""};
  if (pos || neg)
    return {ForceState::undecided, false,
            "forced within bounds but the pool is below the universe hint (" + bounds.to_string() + ")"};
  bool certain = exact_pos && exact_neg;
  return {ForceState::undecided, certain,
          certain ? "forces neither the sentence nor its negation"
                  : "bounds exhausted (" + bounds.to_string() + ")"};
}

/// Searches extensions of `p` (total added length, then lexicographic) for
/// one that decides `f`; first witness wins.
inline std::pair<Condition, ForcingVerdict> decide(const StructureOracle& base, const Condition& p,
                                                   const FormulaPtr& f, const Bounds& bounds) {
  Condition best = p;
  ForcingVerdict verdict{ForceState::undecided, false, "no deciding extension within bounds"};
  for_each_extension(p, bounds.pool, bounds.max_len, [&](const Condition& q) {
    ForcingVerdict v = forces(base, q, f, bounds);
    if (v.state != ForceState::undecided) {
      best = q;
      verdict = v;
      return true;
    }
    return false;
  });
  return {best, verdict};
}

/// Confirms that dropping an uninvolved coordinate leaves the verdict alone.
inline bool restrict_check(const StructureOracle& base, const Condition& p, const FormulaPtr& f,
                           int coordinate, const Bounds& bounds) {
  if (f->mentions(coordinate))
    throw std::invalid_argument("restriction requires a formula not mentioning the coordinate");
  ForcingVerdict full = forces(base, p, f, bounds);
  ForcingVerdict dropped = forces(base, p.dropped(coordinate), reindex_without(f, coordinate), bounds);
  return full.state == dropped.state;
}

}  // namespace bstar
