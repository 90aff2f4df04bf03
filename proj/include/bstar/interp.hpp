#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bstar/definable.hpp"
#include "bstar/functor.hpp"

namespace bstar {

/// Interpretation data: a per-length family of domain formulas, an
/// equivalence formula on pairs of domain tuples, and one formula per
/// relation symbol of the target language, all evaluated over a structure.
struct Interpretation {
  std::string name;
  Signature target_sig;
  DefinableRelation dom;
  DefinableRelation sim;
  std::vector<DefinableRelation> rels;
  ComplexityTag complexity;
};

/// A map from domain tuples to target elements inducing the quotient
/// isomorphism on the evaluated fragment.
struct InterpretationWitness {
  std::string name;
  std::function<std::optional<Elem>(const StructureOracle&, const std::vector<Elem>&)> map;
};

/// The evaluated finite piece of an interpreted structure: domain tuples in
/// canonical order, their classes, and relation facts on class indices.
struct InterpFragment {
  std::vector<std::vector<Elem>> members;
  std::vector<int> member_class;
  std::vector<std::vector<Elem>> reps;  // first-discovered member per class
  std::set<std::pair<int, std::vector<int>>> facts;
  bool provisional = false;
  std::vector<std::string> violations;

  int class_count() const { return static_cast<int>(reps.size()); }
  bool holds(int sym, const std::vector<int>& cls) const { return facts.count({sym, cls}) != 0; }
};

namespace interpdetail {

template <class Fn>
void for_each_word(Elem pool, int max_len, Fn&& fn) {
  // Plain tuples with repetition, length >= 1, canonical order.
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Elem> w(static_cast<std::size_t>(len), 0);
    for (;;) {
      fn(w);
      int k = len - 1;
      while (k >= 0 && ++w[static_cast<std::size_t>(k)] == pool) {
        w[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
}

}  // namespace interpdetail

/// Enumerates the domain fragment and partitions it by the equivalence
/// formula, recording the axiom violations visible at these bounds; relation
/// facts are left to `interpret`. Unknown answers mark the fragment
/// provisional instead of silently deciding.
inline InterpFragment interpret_domain(const Interpretation& I, const StructureOracle& world,
                                       const EvalBounds& b) {
  InterpFragment frag;
  interpdetail::for_each_word(b.pool, b.max_len, [&](const std::vector<Elem>& w) {
    Truth t = I.dom(world, {w}, b);
    if (is_unknown(t)) frag.provisional = true;
    if (is_true(t)) frag.members.push_back(w);
  });

  for (const auto& m : frag.members) {
    Truth refl = I.sim(world, {m, m}, b);
    if (!is_true(refl))
      frag.violations.push_back("equivalence not reflexive at " + std::to_string(m.size()) +
                                "-tuple");
    int home = -1;
    for (std::size_t k = 0; k < frag.reps.size(); ++k) {
      Truth link = I.sim(world, {m, frag.reps[k]}, b);
      if (is_unknown(link)) frag.provisional = true;
      if (is_true(link)) {
        if (home >= 0)
          frag.violations.push_back("transitivity failure: a member links to two classes");
        else
          home = static_cast<int>(k);
        Truth back = I.sim(world, {frag.reps[k], m}, b);
        if (!is_true(back)) frag.violations.push_back("symmetry failure at a class link");
      }
    }
    if (home < 0) {
      frag.reps.push_back(m);
      home = static_cast<int>(frag.reps.size()) - 1;
    }
    frag.member_class.push_back(home);
  }
  return frag;
}

/// The full evaluation: the domain fragment plus relation facts on
/// representatives, with closure under the equivalence checked by
/// single-position substitution of classmates.
inline InterpFragment interpret(const Interpretation& I, const StructureOracle& world,
                                const EvalBounds& b) {
  InterpFragment frag = interpret_domain(I, world, b);

  for (int sym = 0; sym < I.target_sig.size(); ++sym) {
    int arity = I.target_sig.arity(sym);
    if (sym >= static_cast<int>(I.rels.size()))
      throw std::invalid_argument("missing relation formula for " + I.target_sig.name(sym));
    std::vector<int> idx(static_cast<std::size_t>(arity), 0);
    if (frag.class_count() == 0) continue;
    for (;;) {
      TupleArgs args;
      for (int k = 0; k < arity; ++k)
        args.push_back(frag.reps[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])]);
      Truth t = I.rels[static_cast<std::size_t>(sym)](world, args, b);
      if (is_unknown(t)) frag.provisional = true;
      if (is_true(t)) frag.facts.insert({sym, std::vector<int>(idx.begin(), idx.end())});

      if (!is_unknown(t)) {
        for (int pos = 0; pos < arity; ++pos) {
          int cls = idx[static_cast<std::size_t>(pos)];
          for (std::size_t mi = 0; mi < frag.members.size(); ++mi) {
            if (frag.member_class[mi] != cls) continue;
            TupleArgs swapped = args;
            swapped[static_cast<std::size_t>(pos)] = frag.members[mi];
            Truth u = I.rels[static_cast<std::size_t>(sym)](world, swapped, b);
            if (is_unknown(u)) {
              frag.provisional = true;
            } else if (u != t) {
              frag.violations.push_back("relation " + I.target_sig.name(sym) +
                                        " is not closed under the equivalence");
            }
          }
        }
      }

      int k = arity - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == frag.class_count()) {
        idx[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  return frag;
}

/// The canonical bijection between an initial segment of the naturals and
/// the classes of the fragment: class k is the k-th class discovered along
/// the canonical tuple order, represented by its least member.
struct TauBijection {
  std::vector<std::vector<Elem>> reps;

  int size() const { return static_cast<int>(reps.size()); }
  const std::vector<Elem>& tuple_of(int n) const { return reps.at(static_cast<std::size_t>(n)); }

  std::optional<int> index_of(const Interpretation& I, const StructureOracle& world,
                              const std::vector<Elem>& tuple, const EvalBounds& b) const {
    for (std::size_t k = 0; k < reps.size(); ++k) {
      Truth t = I.sim(world, {tuple, reps[k]}, b);
      if (is_true(t)) return static_cast<int>(k);
    }
    return std::nullopt;
  }
};

inline TauBijection tau(const InterpFragment& frag) { return TauBijection{frag.reps}; }

/// The interpreted structure pulled back through the canonical bijection:
/// relation queries answer from the fragment's facts, unknown beyond it.
inline StructureOracle quotient_oracle(const Interpretation& I, const InterpFragment& frag,
                                       std::string name) {
  auto facts = std::make_shared<std::set<std::pair<int, std::vector<int>>>>(frag.facts);
  int count = frag.class_count();
  return StructureOracle(
      std::move(name), I.target_sig,
      [facts, count](int sym, std::span<const Elem> t) -> Truth {
        for (Elem e : t)
          if (e >= count) return Truth::unknown;
        return truth_of(facts->count({sym, std::vector<int>(t.begin(), t.end())}) != 0);
      },
      count);
}

/// The functor induced by an interpretation, as an oracle operator: the
/// output structure is the quotient fragment through the canonical
/// bijection, and an isomorphism of copies transports classes by mapping a
/// representative pointwise and re-identifying its class on the other side.
inline FunctorOperator induced_functor(const Interpretation& I, const StructureOracle& base,
                                       const EvalBounds& eb) {
  FunctorOperator F;
  F.name = "F[" + I.name + "]";
  F.source_sig = base.signature();
  F.target_sig = I.target_sig;
  F.use_bound = 4000000;
  auto interp = std::make_shared<Interpretation>(I);
  auto bounds = eb;

  F.on_structure = [interp, bounds, src_sig = base.signature()](
                       DiagramAccess& d, int sym, const std::vector<Elem>& args) -> bool {
    StructureOracle view(
        "view", src_sig,
        [&d](int s, std::span<const Elem> t) -> Truth {
          return truth_of(d.rel(s, std::vector<Elem>(t.begin(), t.end())));
        },
        std::nullopt);
    InterpFragment frag = interpret_domain(*interp, view, bounds);
    for (Elem e : args)
      if (e >= frag.class_count()) throw oracle_suspended("class index beyond the fragment");
    TupleArgs reps;
    for (Elem e : args) reps.push_back(frag.reps[static_cast<std::size_t>(e)]);
    Truth t = (*interp).rels[static_cast<std::size_t>(sym)](view, reps, bounds);
    if (is_unknown(t)) throw oracle_suspended("relation formula undecided at these bounds");
    return is_true(t);
  };

  F.on_morphism = [interp, bounds, src_sig = base.signature()](MorphismAccess& o, Elem i) -> Elem {
    StructureOracle src_view(
        "src", src_sig,
        [&o](int s, std::span<const Elem> t) -> Truth {
          return truth_of(o.src(s, std::vector<Elem>(t.begin(), t.end())));
        },
        std::nullopt);
    StructureOracle tgt_view(
        "tgt", src_sig,
        [&o](int s, std::span<const Elem> t) -> Truth {
          return truth_of(o.tgt(s, std::vector<Elem>(t.begin(), t.end())));
        },
        std::nullopt);
    InterpFragment src_frag = interpret_domain(*interp, src_view, bounds);
    if (i >= src_frag.class_count()) throw oracle_suspended("class index beyond the fragment");
    std::vector<Elem> image;
    for (Elem e : src_frag.reps[static_cast<std::size_t>(i)]) image.push_back(o.iso(e));
    InterpFragment tgt_frag = interpret_domain(*interp, tgt_view, bounds);
    auto idx = tau(tgt_frag).index_of(*interp, tgt_view, image, bounds);
    if (!idx) throw oracle_suspended("image tuple matches no class at these bounds");
    return static_cast<Elem>(*idx);
  };
  return F;
}

/// The group homomorphism induced by an interpretation and witness: an
/// automorphism acts on domain tuples pointwise, and the witness conjugates
/// the action onto the target. Nothing when the finite data runs out.
inline std::optional<Elem> induced_automorphism_value(const Interpretation& I,
                                                      const InterpretationWitness& w,
                                                      const StructureOracle& world,
                                                      const PartialInjection& f, Elem a,
                                                      const EvalBounds& b) {
  // The least domain tuple the witness sends to `a`.
  std::optional<std::vector<Elem>> source;
  interpdetail::for_each_word(b.pool, b.max_len, [&](const std::vector<Elem>& tup) {
    if (source) return;
    if (!is_true(I.dom(world, {tup}, b))) return;
    auto v = w.map(world, tup);
    if (v && *v == a) source = tup;
  });
  if (!source) return std::nullopt;
  std::vector<Elem> image;
  for (Elem e : *source) {
    auto v = f.image(e);
    if (!v) return std::nullopt;
    image.push_back(*v);
  }
  return w.map(world, image);
}

/// Witness sanity on a fragment: constant on classes, bijective from the
/// classes onto an initial segment, and transporting the facts exactly.
inline std::vector<std::string> check_witness(const Interpretation& I,
                                              const InterpretationWitness& w,
                                              const StructureOracle& world,
                                              const StructureOracle& target,
                                              const InterpFragment& frag, const EvalBounds& b) {
  std::vector<std::string> issues;
  std::vector<std::optional<Elem>> class_value(static_cast<std::size_t>(frag.class_count()));
  for (std::size_t mi = 0; mi < frag.members.size(); ++mi) {
    auto v = w.map(world, frag.members[mi]);
    if (!v) {
      issues.push_back("witness undefined on a fragment member");
      continue;
    }
    auto& slot = class_value[static_cast<std::size_t>(frag.member_class[mi])];
    if (!slot) slot = *v;
    else if (*slot != *v)
      issues.push_back("witness not constant on a class");
  }
  std::set<Elem> values;
  for (const auto& v : class_value)
    if (v && !values.insert(*v).second) issues.push_back("witness collapses two classes");

  for (int sym = 0; sym < I.target_sig.size(); ++sym) {
    int arity = I.target_sig.arity(sym);
    std::vector<int> idx(static_cast<std::size_t>(arity), 0);
    if (frag.class_count() == 0) continue;
    for (;;) {
      bool all = true;
      std::vector<Elem> mapped;
      for (int k = 0; k < arity; ++k) {
        auto v = class_value[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        if (!v) {
          all = false;
          break;
        }
        mapped.push_back(*v);
      }
      if (all) {
        Truth t = target.query(sym, mapped);
        bool f = frag.holds(sym, std::vector<int>(idx.begin(), idx.end()));
        if (!is_unknown(t) && is_true(t) != f)
          issues.push_back("witness does not transport " + I.target_sig.name(sym));
      }
      int k = arity - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == frag.class_count()) {
        idx[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  return issues;
}

}  // namespace bstar
