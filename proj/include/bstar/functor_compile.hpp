#pragma once

#include <memory>
#include <vector>

#include "bstar/forcing.hpp"
#include "bstar/functor.hpp"

namespace bstar {

/// Which statement about an operator to render in the forcing language.
struct FunctorStatement {
  enum class Kind {
    morphism_value,      // the image of an isomorphism between two generic copies sends i to j
    structure_fact,      // the output structure of one generic copy satisfies P(args)
    inverse_law,         // images of inverse isomorphisms compose to nothing
    composition_law,     // images compose along three generic copies
    hat_morphism_value,  // the image of the map from a fixed copy into its generic pullback
  };
  Kind kind = Kind::morphism_value;
  Elem input = 0;   // i
  Elem output = 0;  // j
  int symbol = 0;
  std::vector<Elem> args;
};

namespace compiledetail {

/// One answer string fed to a symbolic run: the k-th oracle answer of the
/// run, in order. Relation answers are 0/1; map answers are values.
using AnswerString = std::vector<long long>;

enum class SlotType { none, relation, value };

/// Replays the morphism program against a fixed answer string. The string
/// must be consumed exactly and the run must commit for the string to name a
/// disjunct; the out-parameters describe how the run used it.
struct SymbolicOutcome {
  bool committed = false;
  bool consumed_exactly = false;
  bool overran = false;           // needed more answers than provided
  SlotType next_slot = SlotType::none;
  Elem output = 0;
  Transcript trace;               // tagged queries with their scripted answers
};

struct ScriptState {
  const AnswerString* script;
  std::size_t cursor = 0;
  bool overran = false;
  bool type_mismatch = false;
  SlotType next_slot = SlotType::none;
  Transcript trace;

  std::optional<long long> next(SlotType t, QueryRecord::Tag tag, int sym,
                                const std::vector<Elem>& args) {
    if (cursor >= script->size()) {
      overran = true;
      if (next_slot == SlotType::none) next_slot = t;
      return std::nullopt;
    }
    long long a = (*script)[cursor++];
    if (t == SlotType::relation && a > 1) {
      type_mismatch = true;
      return std::nullopt;
    }
    trace.push_back({tag, sym, args, a});
    return a;
  }
};

/// The four statement shapes share one run harness; `hat` swaps the fixed
/// copy in for the source diagram and scripts the enumeration values.
inline SymbolicOutcome run_scripted(const FunctorOperator& F, Elem input, const AnswerString& script,
                                    const StructureOracle* fixed_source) {
  SymbolicOutcome out;
  ScriptState st{&script};
  MorphismAccess access(
      [&](int sym, const std::vector<Elem>& args) -> std::optional<bool> {
        if (fixed_source) {
          Truth t = fixed_source->query(sym, args);
          if (is_unknown(t)) return std::nullopt;
          return is_true(t);
        }
        auto a = st.next(SlotType::relation, QueryRecord::Tag::src_rel, sym, args);
        if (!a) return std::nullopt;
        return *a != 0;
      },
      [&](int sym, const std::vector<Elem>& args) -> std::optional<bool> {
        if (fixed_source) {
          // Pullback facts decompose into scripted enumeration values and a
          // concrete fact of the fixed copy.
          std::vector<Elem> vals;
          for (Elem pos : args) {
            auto a = st.next(SlotType::value, QueryRecord::Tag::iso_inv, 0, {pos});
            if (!a) return std::nullopt;
            vals.push_back(static_cast<Elem>(*a));
          }
          for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
              if (vals[i] == vals[j]) {
                st.type_mismatch = true;
                return std::nullopt;
              }
          Truth t = fixed_source->query(sym, vals);
          if (is_unknown(t)) return std::nullopt;
          return is_true(t);
        }
        auto a = st.next(SlotType::relation, QueryRecord::Tag::tgt_rel, sym, args);
        if (!a) return std::nullopt;
        return *a != 0;
      },
      [&](Elem m) -> std::optional<Elem> {
        auto a = st.next(SlotType::value, QueryRecord::Tag::iso, 0, {m});
        if (!a) return std::nullopt;
        return static_cast<Elem>(*a);
      },
      [&](Elem n) -> std::optional<Elem> {
        auto a = st.next(SlotType::value, QueryRecord::Tag::iso_inv, 0, {n});
        if (!a) return std::nullopt;
        return static_cast<Elem>(*a);
      },
      F.use_bound, nullptr);

  try {
    Elem value = F.on_morphism(access, input);
    out.committed = !st.type_mismatch && !st.overran;
    out.output = value;
  } catch (const oracle_suspended&) {
    out.committed = false;
  }
  out.overran = st.overran;
  out.consumed_exactly = out.committed && st.cursor == script.size();
  out.next_slot = st.next_slot;
  out.trace = std::move(st.trace);
  return out;
}

/// Structure-side variant: one generic copy, diagram queries scripted.
inline SymbolicOutcome run_scripted_structure(const FunctorOperator& F, int symbol,
                                              const std::vector<Elem>& args,
                                              const AnswerString& script) {
  SymbolicOutcome out;
  ScriptState st{&script};
  DiagramAccess access(
      [&](int sym, const std::vector<Elem>& a) -> std::optional<bool> {
        auto r = st.next(SlotType::relation, QueryRecord::Tag::diagram, sym, a);
        if (!r) return std::nullopt;
        return *r != 0;
      },
      F.use_bound, nullptr);
  try {
    bool value = F.on_structure(access, symbol, args);
    out.committed = !st.type_mismatch && !st.overran;
    out.output = value ? 1 : 0;
  } catch (const oracle_suspended&) {
    out.committed = false;
  }
  out.overran = st.overran;
  out.consumed_exactly = out.committed && st.cursor == script.size();
  out.next_slot = st.next_slot;
  out.trace = std::move(st.trace);
  return out;
}

/// The conjunction of atoms describing one consistent oracle string, with
/// coordinates src and tgt of the surrounding condition.
inline FormulaPtr trace_formula(int ell, int src_coord, int tgt_coord, const Transcript& trace,
                                bool hat_mode) {
  std::vector<FormulaPtr> atoms;
  for (const auto& r : trace) {
    switch (r.tag) {
      case QueryRecord::Tag::src_rel:
        atoms.push_back(Formula::rel(ell, src_coord, r.sym, r.args, r.answer != 0));
        break;
      case QueryRecord::Tag::tgt_rel:
        atoms.push_back(Formula::rel(ell, tgt_coord, r.sym, r.args, r.answer != 0));
        break;
      case QueryRecord::Tag::diagram:
        atoms.push_back(Formula::rel(ell, src_coord, r.sym, r.args, r.answer != 0));
        break;
      case QueryRecord::Tag::iso:
        // The map from the src-generic copy to the tgt-generic copy sends
        // position m to position n exactly when the enumerations share the
        // value: a composition atom. In hat mode it is a raw value fact.
        if (hat_mode)
          atoms.push_back(Formula::val(ell, 1, static_cast<Elem>(r.answer), r.args[0], true));
        else
          atoms.push_back(Formula::comp(ell, tgt_coord, src_coord, r.args[0],
                                        static_cast<Elem>(r.answer), true));
        break;
      case QueryRecord::Tag::iso_inv:
        if (hat_mode)
          atoms.push_back(Formula::val(ell, 1, r.args[0], static_cast<Elem>(r.answer), true));
        else
          atoms.push_back(Formula::comp(ell, src_coord, tgt_coord, r.args[0],
                                        static_cast<Elem>(r.answer), true));
        break;
    }
  }
  return Formula::fin_and(ell, std::move(atoms));
}

/// Enumerates answer strings by total weight (sum of answers plus length),
/// lexicographically within a weight; every committing, exactly-consumed
/// string yields a disjunct. Deterministic and total, padded with an
/// unforceable disjunct when enumeration runs dry.
template <class Run>
struct PathEnumerator {
  Run run;
  int ell;
  long long expect;  // required committed output; -1 accepts any
  int src_coord, tgt_coord;
  bool hat_mode;
  long long max_weight = 24;
  long long step_bound = 200000;  // total scripted runs across the session

  std::shared_ptr<std::vector<FormulaPtr>> found = std::make_shared<std::vector<FormulaPtr>>();
  std::shared_ptr<long long> weight_done = std::make_shared<long long>(-1);
  std::shared_ptr<long long> steps = std::make_shared<long long>(0);

  FormulaPtr at(int k) {
    while (static_cast<int>(found->size()) <= k && *weight_done < max_weight) {
      ++*weight_done;
      AnswerString prefix;
      expand(prefix, *weight_done);
    }
    if (k < static_cast<int>(found->size())) return (*found)[static_cast<std::size_t>(k)];
    return Formula::falsum(ell);
  }

 private:
  void expand(AnswerString& prefix, long long budget) {
    if (++*steps > step_bound)
      throw operator_divergence("path enumeration exceeded the session step bound");
    SymbolicOutcome o = run(prefix);
    if (o.committed) {
      if (budget == 0 && o.consumed_exactly && (expect < 0 || o.output == expect))
        found->push_back(trace_formula(ell, src_coord, tgt_coord, o.trace, hat_mode));
      return;  // committed runs never read further: longer strings duplicate
    }
    if (!o.overran) return;  // the string was rejected outright
    long long top = o.next_slot == SlotType::relation ? 1 : budget - 1;
    for (long long a = 0; a <= std::min(top, budget - 1); ++a) {
      prefix.push_back(a);
      expand(prefix, budget - 1 - a);
      prefix.pop_back();
    }
  }
};

}  // namespace compiledetail

/// Renders a statement about an operator as a sentence of the forcing
/// language: a countable disjunction with one disjunct per finite consistent
/// oracle string whose run commits the stated outcome, each disjunct the
/// conjunction of atoms describing that string. Strings are enumerated by
/// total weight and deduplicated at the commitment point. The laws are
/// countable conjunctions of pointwise equivalences of such disjunctions.
inline FormulaPtr compile_functor_statement(const FunctorOperator& F, const FunctorStatement& st,
                                            const StructureOracle* fixed_copy = nullptr) {
  using namespace compiledetail;
  auto op = std::make_shared<FunctorOperator>(F);

  auto morphism_disjunction = [op](int ell, int src_coord, int tgt_coord, Elem input,
                                   long long expect) {
    auto runner = [op, input](const AnswerString& s) { return run_scripted(*op, input, s, nullptr); };
    auto en = std::make_shared<PathEnumerator<decltype(runner)>>(
        PathEnumerator<decltype(runner)>{runner, ell, expect, src_coord, tgt_coord, false});
    FormulaGenerator gen;
    gen.at = [en](int k) { return en->at(k); };
    gen.label = op->name + "(g" + std::to_string(src_coord) + "->g" + std::to_string(tgt_coord) +
                ")(" + std::to_string(input) + ")=" + std::to_string(expect);
    gen.members_restricted = true;
    gen.member_ranks = {0, 0};
    gen.mentions_mask = (1u << (src_coord - 1)) | (1u << (tgt_coord - 1));
    return Formula::count_or(ell, gen);
  };

  switch (st.kind) {
    case FunctorStatement::Kind::morphism_value:
      return morphism_disjunction(2, 1, 2, st.input, st.output);

    case FunctorStatement::Kind::structure_fact: {
      auto runner = [op, st](const AnswerString& s) {
        return run_scripted_structure(*op, st.symbol, st.args, s);
      };
      auto en = std::make_shared<PathEnumerator<decltype(runner)>>(
          PathEnumerator<decltype(runner)>{runner, 1, 1, 1, 1, false});
      FormulaGenerator gen;
      gen.at = [en](int k) { return en->at(k); };
      gen.label = op->name + "(g1) sat " + std::to_string(st.symbol);
      gen.members_restricted = true;
      gen.member_ranks = {0, 0};
      gen.mentions_mask = 1u;
      return Formula::count_or(1, gen);
    }

    case FunctorStatement::Kind::hat_morphism_value: {
      if (!fixed_copy) throw std::invalid_argument("a fixed copy is required here");
      auto fixed = std::make_shared<StructureOracle>(*fixed_copy);
      auto runner = [op, fixed, st](const AnswerString& s) {
        return run_scripted(*op, st.input, s, fixed.get());
      };
      auto en = std::make_shared<PathEnumerator<decltype(runner)>>(
          PathEnumerator<decltype(runner)>{runner, 1, st.output, 1, 1, true});
      FormulaGenerator gen;
      gen.at = [en](int k) { return en->at(k); };
      gen.label = op->name + "(" + fixed->name() + "->g1)(" + std::to_string(st.input) +
                  ")=" + std::to_string(st.output);
      gen.members_restricted = false;  // raw value atoms appear
      gen.member_ranks = {0, 0};
      gen.mentions_mask = 1u;
      return Formula::count_or(1, gen);
    }

    case FunctorStatement::Kind::inverse_law: {
      // For every pair (i, j): the forward image sends i to j exactly when
      // the backward image sends j to i.
      auto self = std::make_shared<std::function<FormulaPtr(int)>>();
      *self = [morphism_disjunction](int k) {
        Elem i = static_cast<Elem>(k / 8);
        Elem j = static_cast<Elem>(k % 8);
        FormulaPtr fwd = morphism_disjunction(2, 1, 2, i, j);
        FormulaPtr bwd = morphism_disjunction(2, 2, 1, j, i);
        return Formula::fin_or(
            2, {Formula::fin_and(2, {fwd, bwd}),
                Formula::fin_and(2, {formal_negation(fwd), formal_negation(bwd)})});
      };
      FormulaGenerator gen;
      gen.at = [self](int k) { return (*self)(k); };
      gen.label = op->name + " inverse law";
      gen.members_restricted = true;
      gen.member_ranks = {2, 2};
      gen.mentions_mask = 3u;
      return Formula::count_and(2, gen);
    }

    case FunctorStatement::Kind::composition_law: {
      // For every pair (i, k): composing through the middle copy agrees
      // with the direct image.
      auto mk = std::make_shared<std::function<FormulaPtr(int)>>();
      *mk = [morphism_disjunction](int n) {
        Elem i = static_cast<Elem>(n / 8);
        Elem k = static_cast<Elem>(n % 8);
        FormulaPtr direct = morphism_disjunction(3, 1, 3, i, k);
        std::vector<FormulaPtr> through;
        for (Elem j = 0; j < 8; ++j)
          through.push_back(Formula::fin_and(3, {morphism_disjunction(3, 1, 2, i, j),
                                                 morphism_disjunction(3, 2, 3, j, k)}));
        FormulaPtr stepped = Formula::fin_or(3, through);
        return Formula::fin_or(3, {Formula::fin_and(3, {direct, stepped}),
                                   Formula::fin_and(3, {formal_negation(direct),
                                                        formal_negation(stepped)})});
      };
      FormulaGenerator gen;
      gen.at = [mk](int n) { return (*mk)(n); };
      gen.label = op->name + " composition law";
      gen.members_restricted = true;
      gen.member_ranks = {2, 2};
      gen.mentions_mask = 7u;
      return Formula::count_and(3, gen);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace bstar
