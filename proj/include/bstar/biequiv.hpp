#pragma once

#include "bstar/extract_verify.hpp"
#include "bstar/interp_registry.hpp"

namespace bstar {

/// A bi-interpretation: each presentation interpreted in the other, with
/// witnesses, plus the graphs of the two round-trip collapse maps. The
/// composed-domain arguments of a collapse graph are the member tuples of a
/// nested domain element followed by a singleton carrying the collapse value.
struct BiInterpretation {
  std::string name;
  StructureOracle presentation_b;
  StructureOracle presentation_a;
  Interpretation I;  // the second presentation inside the first
  InterpretationWitness wI;
  Interpretation J;  // and back
  InterpretationWitness wJ;
  DefinableRelation comp_b;  // over B
  DefinableRelation comp_a;  // over A
};

// ---------------------------------------------------------------------------
// Registry bi-interpretations.
// ---------------------------------------------------------------------------

inline BiInterpretation identity_biinterpretation(const StructureOracle& base) {
  BiInterpretation bi;
  bi.name = "identity:" + base.name();
  bi.presentation_b = base;
  bi.presentation_a = base;
  bi.I = identity_interpretation(base);
  bi.wI = elements_witness();
  bi.J = bi.I;
  bi.wJ = bi.wI;
  DefinableRelation collapse{
      ComplexityTag{0, ComplexityTag::Side::Delta},
      "collapse",
      [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) -> Truth {
        // One singleton member collapsing to the element it carries.
        if (args.size() != 2 || args[0].size() != 1 || args[1].size() != 1) return Truth::is_false;
        return truth_of(args[0][0] == args[1][0]);
      }};
  bi.comp_b = collapse;
  bi.comp_a = collapse;
  return bi;
}

/// The matched-pairs graph and the class-and-point structure interpret each
/// other; the collapses identify a point with its vertex and a class with
/// the element naming it.
inline BiInterpretation pairs_biinterpretation() {
  BiInterpretation bi;
  bi.name = "pairs-classpoints";
  bi.presentation_b = make_matched_pairs();
  bi.presentation_a = make_class_points();
  bi.I = classpoints_in_pairs();
  bi.wI = classpoints_in_pairs_witness();
  bi.J = pairs_in_classpoints();
  bi.wJ = pairs_in_classpoints_witness();

  bi.comp_b = {ComplexityTag{0, ComplexityTag::Side::Delta}, "collapse to vertices",
               [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) -> Truth {
                 // The nested domain inside the pairs graph consists of the
                 // point elements: single vertices collapsing to themselves.
                 if (args.size() != 2 || args[0].size() != 1 || args[1].size() != 1)
                   return Truth::is_false;
                 return truth_of(args[0][0] == args[1][0]);
               }};
  bi.comp_a = {ComplexityTag{0, ComplexityTag::Side::Delta}, "collapse to classpoints",
               [](const StructureOracle& s, const TupleArgs& args, const EvalBounds&) -> Truth {
                 if (args.size() == 2 && args[0].size() == 1 && args[1].size() == 1) {
                   // A single point collapses to itself.
                   Truth pt = s.query(1, args[0]);
                   return truth_and(pt, truth_of(args[0][0] == args[1][0]));
                 }
                 if (args.size() == 3 && args[0].size() == 1 && args[1].size() == 1 &&
                     args[2].size() == 1) {
                   // Two points sharing a class collapse to that class.
                   Elem p = args[0][0], q = args[1][0], a = args[2][0];
                   if (p == q) return Truth::is_false;
                   Truth cls = s.query(0, std::vector<Elem>{a});
                   Truth in1 = s.query(2, std::vector<Elem>{p, a});
                   Truth in2 = s.query(2, std::vector<Elem>{q, a});
                   return truth_and(cls, truth_and(in1, in2));
                 }
                 return Truth::is_false;
               }};
  return bi;
}

// ---------------------------------------------------------------------------
// From a bi-interpretation to an adjoint equivalence.
// ---------------------------------------------------------------------------

struct AdjointConstruction {
  AdjointData adj;
  LawReport report;
};

namespace biequivdetail {

/// Collapse values for every class of the composite quotient over one copy:
/// descend through both fragments and read the collapse graph.
inline std::vector<std::optional<Elem>> collapse_table(const Interpretation& outer,
                                                       const Interpretation& inner,
                                                       const DefinableRelation& collapse,
                                                       const StructureOracle& copy_oracle,
                                                       const EvalBounds& eb) {
  InterpFragment frag_inner = interpret(inner, copy_oracle, eb);
  StructureOracle quotient = quotient_oracle(inner, frag_inner, copy_oracle.name() + "/q");
  InterpFragment frag_outer = interpret(outer, quotient, eb);
  std::vector<std::optional<Elem>> table(static_cast<std::size_t>(frag_outer.class_count()));
  for (int x = 0; x < frag_outer.class_count(); ++x) {
    TupleArgs member_tuples;
    bool ok = true;
    for (Elem idx : frag_outer.reps[static_cast<std::size_t>(x)]) {
      if (idx >= frag_inner.class_count()) {
        ok = false;
        break;
      }
      member_tuples.push_back(frag_inner.reps[static_cast<std::size_t>(idx)]);
    }
    if (!ok) continue;
    for (Elem b = 0; b < eb.pool; ++b) {
      TupleArgs args = member_tuples;
      args.push_back({b});
      if (is_true(collapse(copy_oracle, args, eb))) {
        table[static_cast<std::size_t>(x)] = b;
        break;
      }
    }
  }
  return table;
}

/// Memoized inversion of the collapse tables, keyed by copy name; copies in
/// the shipped flows carry distinct names, and memoization stays invisible.
struct CollapseComponent {
  std::shared_ptr<Interpretation> outer, inner;
  std::shared_ptr<DefinableRelation> collapse;
  EvalBounds eb;
  std::shared_ptr<std::map<std::string, std::vector<std::optional<Elem>>>> cache =
      std::make_shared<std::map<std::string, std::vector<std::optional<Elem>>>>();

  std::optional<Elem> operator()(const StructureOracle& copy, Elem i) const {
    auto it = cache->find(copy.name());
    if (it == cache->end())
      it = cache->emplace(copy.name(), collapse_table(*outer, *inner, *collapse, copy, eb)).first;
    for (std::size_t x = 0; x < it->second.size(); ++x)
      if (it->second[x] == std::optional<Elem>(i)) return static_cast<Elem>(x);
    return std::nullopt;
  }
};

}  // namespace biequivdetail

/// Builds the induced operator pair and the unit and counit from the
/// collapse graphs, then checks the whole adjoint-equivalence ladder. The
/// constructed data is returned either way; the report carries any failure.
inline AdjointConstruction adjoint_from_biinterp(const BiInterpretation& bi, const EvalBounds& eb,
                                                 int samples, Elem sample_support,
                                                 Elem index_bound, std::uint64_t seed) {
  AdjointConstruction out;
  out.adj.F = induced_functor(bi.I, bi.presentation_b, eb);
  out.adj.G = induced_functor(bi.J, bi.presentation_a, eb);

  auto I = std::make_shared<Interpretation>(bi.I);
  auto J = std::make_shared<Interpretation>(bi.J);
  auto comp_b = std::make_shared<DefinableRelation>(bi.comp_b);
  auto comp_a = std::make_shared<DefinableRelation>(bi.comp_a);

  // Unit and counit: invert the collapse of the round trip through both
  // quotient fragments.
  biequivdetail::CollapseComponent unit{J, I, comp_b, eb};
  biequivdetail::CollapseComponent counit{I, J, comp_a, eb};
  out.adj.eta = {"unit:" + bi.name,
                 [unit](const StructureOracle& copy, Elem i) { return unit(copy, i); }};
  out.adj.epsilon = {"counit:" + bi.name,
                     [counit](const StructureOracle& copy, Elem i) { return counit(copy, i); }};

  auto samples_b = sample_copies(bi.presentation_b, samples, sample_support, seed);
  auto samples_a = sample_copies(bi.presentation_a, samples, sample_support, seed + 1);
  out.report = check_adjoint_equivalence(out.adj, samples_b, samples_a, index_bound);
  out.report.subject = "adjoint from " + bi.name;
  return out;
}

// ---------------------------------------------------------------------------
// From an adjoint equivalence back to a bi-interpretation.
// ---------------------------------------------------------------------------

/// An interpretation whose data is the forcing-backed extraction of an
/// operator: domain tuples are coded (tuple, index) pairs.
inline Interpretation interpretation_from_extraction(std::shared_ptr<const Extraction> ex,
                                                     std::string name) {
  Interpretation I;
  I.name = std::move(name);
  I.target_sig = ex->op().target_sig;
  I.complexity = {1, ComplexityTag::Side::Delta};

  auto decode = [](const std::vector<Elem>& w) -> std::optional<DomainElement> {
    if (w.empty()) return std::nullopt;
    std::vector<Elem> prefix(w.begin(), w.end() - 1);
    for (std::size_t i = 0; i < prefix.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (prefix[i] == prefix[j]) return std::nullopt;
    return DomainElement{InjectiveTuple(prefix), w.back()};
  };

  I.dom = {I.complexity, "extracted domain",
           [ex, decode](const StructureOracle& world, const TupleArgs& args,
                        const EvalBounds&) -> Truth {
             if (args.size() != 1) return Truth::is_false;
             auto d = decode(args[0]);
             if (!d) return Truth::is_false;
             switch (ex->domain(world, d->tuple, d->index)) {
               case Membership::in: return Truth::is_true;
               case Membership::out: return Truth::is_false;
               default: return Truth::unknown;
             }
           }};
  I.sim = {I.complexity, "extracted equivalence",
           [ex, decode](const StructureOracle& world, const TupleArgs& args,
                        const EvalBounds&) -> Truth {
             if (args.size() != 2) return Truth::is_false;
             auto a = decode(args[0]);
             auto b = decode(args[1]);
             if (!a || !b) return Truth::is_false;
             switch (ex->sim(world, *a, *b)) {
               case Membership::in: return Truth::is_true;
               case Membership::out: return Truth::is_false;
               default: return Truth::unknown;
             }
           }};
  for (int sym = 0; sym < I.target_sig.size(); ++sym) {
    I.rels.push_back(
        {I.complexity, "extracted " + I.target_sig.name(sym),
         [ex, decode, sym](const StructureOracle& world, const TupleArgs& args,
                           const EvalBounds& b) -> Truth {
           std::vector<DomainElement> ds;
           for (const auto& t : args) {
             auto d = decode(t);
             if (!d) return Truth::is_false;
             ds.push_back(*d);
           }
           WitnessPool pool = pool_witnesses(ex->base(), b.pool, b.max_len);
           switch (ex->relation(world, sym, ds, pool)) {
             case Membership::in: return Truth::is_true;
             case Membership::out: return Truth::is_false;
             default: return Truth::unknown;
           }
         }});
  }
  return I;
}

struct BiInterpretationConstruction {
  BiInterpretation bi;
  LawReport report;
  std::shared_ptr<const Extraction> exF;  // handles for fragment-level work
  std::shared_ptr<const Extraction> exG;
};

/// Extracts interpretations from both operators of an adjoint equivalence
/// and assembles the collapse graphs from the canonical enumeration maps;
/// the graphs are certified by automorphism-invariance sampling and the
/// composite is checked functional and injective on the fragment.
inline BiInterpretationConstruction biinterp_from_adjoint(const AdjointData& adj,
                                                          const StructureOracle& B,
                                                          const StructureOracle& A,
                                                          const Bounds& bounds,
                                                          const WitnessPool& hat_pool_b,
                                                          const WitnessPool& hat_pool_a,
                                                          Elem index_bound,
                                                          std::uint64_t seed) {
  BiInterpretationConstruction out;
  out.report.subject = "bi-interpretation from " + adj.F.name + " -| " + adj.G.name;

  auto exF = std::make_shared<Extraction>(B, adj.F, bounds);
  auto exG = std::make_shared<Extraction>(A, adj.G, bounds);
  out.exF = exF;
  out.exG = exG;
  out.bi.name = "from-adjoint";
  out.bi.presentation_b = B;
  out.bi.presentation_a = A;
  out.bi.I = interpretation_from_extraction(exF, "extracted:" + adj.F.name);
  out.bi.J = interpretation_from_extraction(exG, "extracted:" + adj.G.name);

  // Canonical enumeration maps: g maps a target element to its least
  // domain element; the witnesses invert them through the equivalence.
  auto a_oracle = std::make_shared<StructureOracle>(A);
  auto b_oracle = std::make_shared<StructureOracle>(B);
  auto unit = std::make_shared<NaturalTransformation>(adj.eta);

  auto g_ba = std::make_shared<std::map<Elem, DomainElement>>();
  for (Elem a = 0; a < index_bound; ++a) {
    auto v = exF->frak_hat(*b_oracle, a, hat_pool_b);
    if (v) (*g_ba)[a] = *v;
  }
  auto g_ab = std::make_shared<std::map<Elem, DomainElement>>();
  for (Elem b = 0; b < index_bound; ++b) {
    auto eta_b = unit->at(*b_oracle);
    auto u = eta_b(b);
    if (!u) continue;
    auto v = exG->frak_hat(*a_oracle, *u, hat_pool_a);
    if (v) (*g_ab)[b] = *v;
  }
  if (g_ba->empty() || g_ab->empty()) {
    out.report.violations.push_back({"enumeration-maps", "-", "no canonical values landed"});
    return out;
  }

  out.bi.wI = {"extracted witness",
               [exF, g_ba](const StructureOracle& world,
                           const std::vector<Elem>& coded) -> std::optional<Elem> {
                 if (coded.empty()) return std::nullopt;
                 DomainElement d{InjectiveTuple(std::vector<Elem>(coded.begin(), coded.end() - 1)),
                                 coded.back()};
                 for (const auto& [a, fv] : *g_ba)
                   if (exF->sim(world, fv, d) == Membership::in) return a;
                 return std::nullopt;
               }};
  out.bi.wJ = {"extracted witness",
               [exG, g_ab](const StructureOracle& world,
                           const std::vector<Elem>& coded) -> std::optional<Elem> {
                 if (coded.empty()) return std::nullopt;
                 DomainElement d{InjectiveTuple(std::vector<Elem>(coded.begin(), coded.end() - 1)),
                                 coded.back()};
                 for (const auto& [b, fv] : *g_ab)
                   if (exG->sim(world, fv, d) == Membership::in) return b;
                 return std::nullopt;
               }};

  // Collapse graphs from the composites of the enumeration maps.
  out.bi.comp_b = {ComplexityTag{1, ComplexityTag::Side::Delta}, "extracted collapse over B",
                   [exF, exG, g_ba, g_ab](const StructureOracle& world, const TupleArgs& args,
                                          const EvalBounds&) -> Truth {
                     if (args.size() < 3) return Truth::is_false;
                     const auto& last = args.back();
                     const auto& idx_t = args[args.size() - 2];
                     if (last.size() != 1 || idx_t.size() != 1) return Truth::is_false;
                     Elem b = last[0];
                     Elem u = idx_t[0];
                     auto jt = g_ab->find(b);
                     if (jt == g_ab->end()) return Truth::unknown;
                     const DomainElement& jd = jt->second;  // (A-tuple, index)
                     if (jd.index != u) return Truth::is_false;
                     if (jd.tuple.size() != static_cast<int>(args.size()) - 2)
                       return Truth::is_false;
                     for (int k = 0; k < jd.tuple.size(); ++k) {
                       Elem a = *jd.tuple.at(k);
                       auto ft = g_ba->find(a);
                       if (ft == g_ba->end()) return Truth::unknown;
                       const auto& tk = args[static_cast<std::size_t>(k)];
                       if (tk.empty()) return Truth::is_false;
                       DomainElement cand{
                           InjectiveTuple(std::vector<Elem>(tk.begin(), tk.end() - 1)), tk.back()};
                       if (exF->sim(world, ft->second, cand) != Membership::in)
                         return Truth::is_false;
                     }
                     return Truth::is_true;
                   }};
  out.bi.comp_a = {ComplexityTag{1, ComplexityTag::Side::Delta}, "extracted collapse over A",
                   [exF, exG, g_ba, g_ab](const StructureOracle& world, const TupleArgs& args,
                                          const EvalBounds&) -> Truth {
                     if (args.size() < 3) return Truth::is_false;
                     const auto& last = args.back();
                     const auto& idx_t = args[args.size() - 2];
                     if (last.size() != 1 || idx_t.size() != 1) return Truth::is_false;
                     Elem a = last[0];
                     Elem u = idx_t[0];
                     auto ft = g_ba->find(a);
                     if (ft == g_ba->end()) return Truth::unknown;
                     const DomainElement& id_ = ft->second;
                     if (id_.index != u) return Truth::is_false;
                     if (id_.tuple.size() != static_cast<int>(args.size()) - 2)
                       return Truth::is_false;
                     for (int k = 0; k < id_.tuple.size(); ++k) {
                       Elem b = *id_.tuple.at(k);
                       auto jt = g_ab->find(b);
                       if (jt == g_ab->end()) return Truth::unknown;
                       const auto& tk = args[static_cast<std::size_t>(k)];
                       if (tk.empty()) return Truth::is_false;
                       DomainElement cand{
                           InjectiveTuple(std::vector<Elem>(tk.begin(), tk.end() - 1)), tk.back()};
                       if (exG->sim(world, jt->second, cand) != Membership::in)
                         return Truth::is_false;
                     }
                     return Truth::is_true;
                   }};

  // Fragment conditions: the composite through both maps is defined and
  // injective where the pieces landed.
  for (const auto& [b1, d1] : *g_ab)
    for (const auto& [b2, d2] : *g_ab) {
      if (b1 >= b2) continue;
      ++out.report.checks;
      if (exG->sim(A, d1, d2) == Membership::in)
        out.report.violations.push_back({"composite-injective",
                                         std::to_string(b1) + "," + std::to_string(b2),
                                         "distinct elements collapse together"});
    }

  // Automorphism invariance of the composite: transporting the nested value
  // of b through an automorphism lands, up to the extracted equivalences, on
  // the nested value of the image of b.
  auto autos = sample_automorphisms(B, 6, 12, seed);
  for (const auto& alpha : autos) {
    for (const auto& [b, jd] : *g_ab) {
      auto b2 = alpha.image(b);
      if (!b2) continue;
      auto jt2 = g_ab->find(*b2);
      if (jt2 == g_ab->end()) continue;

      // Reduce the transported components back to their class indices.
      std::vector<Elem> classes;
      bool total = true;
      for (int k = 0; k < jd.tuple.size() && total; ++k) {
        Elem a = *jd.tuple.at(k);
        auto ft = g_ba->find(a);
        if (ft == g_ba->end()) {
          total = false;
          break;
        }
        std::vector<Elem> moved;
        for (Elem e : ft->second.tuple.entries()) {
          auto v = alpha.image(e);
          if (!v) {
            total = false;
            break;
          }
          moved.push_back(*v);
        }
        if (!total) break;
        DomainElement transported{InjectiveTuple(moved), ft->second.index};
        std::optional<Elem> cls;
        for (const auto& [a2, fv] : *g_ba)
          if (exF->sim(B, transported, fv) == Membership::in) {
            cls = a2;
            break;
          }
        if (!cls) {
          total = false;
          break;
        }
        classes.push_back(*cls);
      }
      if (!total) continue;

      bool distinct = true;
      for (std::size_t i = 0; i < classes.size() && distinct; ++i)
        for (std::size_t j2 = 0; j2 < i; ++j2)
          if (classes[i] == classes[j2]) distinct = false;
      if (!distinct) continue;
      ++out.report.checks;
      DomainElement lhs{InjectiveTuple(classes), jd.index};
      if (exG->sim(A, lhs, jt2->second) != Membership::in)
        out.report.violations.push_back({"collapse-invariance", "b=" + std::to_string(b),
                                         "the composite moved under an automorphism"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotient comparison, for the round-trip checks.
// ---------------------------------------------------------------------------

struct FactsTable {
  Signature sig;
  int size = 0;
  std::set<std::pair<int, std::vector<int>>> facts;
};

inline FactsTable facts_of(const InterpFragment& f, const Signature& sig) {
  return {sig, f.class_count(), f.facts};
}

inline FactsTable facts_of(const QuotientFragment& q) { return {q.sig, q.class_count, q.facts}; }

/// Brute-force search for a fact-preserving bijection between two quotient
/// fragments of equal size.
inline std::optional<std::vector<int>> quotient_isomorphism(const FactsTable& x,
                                                            const FactsTable& y) {
  if (x.size != y.size || !(x.sig == y.sig)) return std::nullopt;
  std::vector<int> perm(static_cast<std::size_t>(x.size));
  std::vector<bool> used(static_cast<std::size_t>(x.size), false);
  auto fact_ok = [&](int placed) {
    // Check all facts whose entries are all below `placed`+1 placed classes.
    for (int sym = 0; sym < x.sig.size(); ++sym) {
      int arity = x.sig.arity(sym);
      std::vector<int> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        bool ready = true;
        for (int k = 0; k < arity && ready; ++k)
          if (idx[static_cast<std::size_t>(k)] > placed) ready = false;
        bool touches = false;
        for (int k = 0; k < arity; ++k)
          if (idx[static_cast<std::size_t>(k)] == placed) touches = true;
        if (ready && touches) {
          std::vector<int> mapped;
          for (int v : idx) mapped.push_back(perm[static_cast<std::size_t>(v)]);
          bool fx = x.facts.count({sym, idx}) != 0;
          bool fy = y.facts.count({sym, mapped}) != 0;
          if (fx != fy) return false;
        }
        int k = arity - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == x.size) {
          idx[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
    return true;
  };
  auto dfs = [&](auto&& self, int next) -> bool {
    if (next == x.size) return true;
    for (int c = 0; c < x.size; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      perm[static_cast<std::size_t>(next)] = c;
      used[static_cast<std::size_t>(c)] = true;
      if (fact_ok(next) && self(self, next + 1)) return true;
      used[static_cast<std::size_t>(c)] = false;
    }
    return false;
  };
  if (dfs(dfs, 0)) return perm;
  return std::nullopt;
}

}  // namespace bstar
