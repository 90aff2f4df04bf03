#pragma once

#include "bstar/interp.hpp"

namespace bstar {

namespace interpdetail {

inline DefinableRelation always(int arity_tuples, std::string label) {
  return {ComplexityTag{0, ComplexityTag::Side::Delta}, std::move(label),
          [arity_tuples](const StructureOracle&, const TupleArgs& args, const EvalBounds&) {
            return truth_of(static_cast<int>(args.size()) == arity_tuples);
          }};
}

inline DefinableRelation singletons_only(std::string label) {
  return {ComplexityTag{0, ComplexityTag::Side::Delta}, std::move(label),
          [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) {
            return truth_of(args.size() == 1 && args[0].size() == 1);
          }};
}

inline DefinableRelation tuple_equality(std::string label) {
  return {ComplexityTag{0, ComplexityTag::Side::Delta}, std::move(label),
          [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) {
            return truth_of(args.size() == 2 && args[0] == args[1]);
          }};
}

/// First index below the search bound satisfying the ternary graph fact.
inline std::optional<Elem> graph_search(const StructureOracle& s, int sym, Elem x, Elem y,
                                        Elem bound) {
  for (Elem e = 0; e < bound; ++e) {
    Truth t = s.query(sym, std::vector<Elem>{x, y, e});
    if (is_unknown(t)) return std::nullopt;
    if (is_true(t)) return e;
  }
  return std::nullopt;
}

}  // namespace interpdetail

/// Each element names itself; the target is the structure with no relations.
inline Interpretation elements_interpretation() {
  Interpretation I;
  I.name = "elements";
  I.target_sig = Signature{};
  I.dom = interpdetail::singletons_only("all single elements");
  I.sim = interpdetail::tuple_equality("equality");
  I.complexity = {0, ComplexityTag::Side::Delta};
  return I;
}

inline InterpretationWitness elements_witness() {
  return {"elements", [](const StructureOracle&, const std::vector<Elem>& t) -> std::optional<Elem> {
            return t.at(0);
          }};
}

/// Each element names itself and every relation carries over: interprets a
/// presentation in itself.
inline Interpretation identity_interpretation(const StructureOracle& base) {
  Interpretation I;
  I.name = "identity:" + base.name();
  I.target_sig = base.signature();
  I.dom = interpdetail::singletons_only("all single elements");
  I.sim = interpdetail::tuple_equality("equality");
  for (int sym = 0; sym < base.signature().size(); ++sym) {
    int arity = base.signature().arity(sym);
    I.rels.push_back({ComplexityTag{0, ComplexityTag::Side::Delta}, base.signature().name(sym),
                      [sym, arity](const StructureOracle& s, const TupleArgs& args,
                                   const EvalBounds&) -> Truth {
                        if (static_cast<int>(args.size()) != arity) return Truth::is_false;
                        std::vector<Elem> flat;
                        for (const auto& t : args) {
                          if (t.size() != 1) return Truth::is_false;
                          flat.push_back(t[0]);
                        }
                        return s.query(sym, flat);
                      }});
  }
  I.complexity = {0, ComplexityTag::Side::Delta};
  return I;
}

/// The pair classes of the matched-pairs graph as a pure set: vertices name
/// their classes, two vertices name the same class when they are matched.
inline Interpretation class_interpretation() {
  Interpretation I;
  I.name = "classes";
  I.target_sig = Signature{};
  I.dom = interpdetail::singletons_only("all vertices");
  I.sim = {ComplexityTag{0, ComplexityTag::Side::Delta}, "same pair",
           [](const StructureOracle& s, const TupleArgs& args, const EvalBounds&) -> Truth {
             if (args.size() != 2 || args[0].size() != 1 || args[1].size() != 1)
               return Truth::is_false;
             if (args[0][0] == args[1][0]) return Truth::is_true;
             return s.query(0, std::vector<Elem>{args[0][0], args[1][0]});
           }};
  I.complexity = {0, ComplexityTag::Side::Delta};
  return I;
}

inline InterpretationWitness class_witness() {
  return {"classes", [](const StructureOracle&, const std::vector<Elem>& t) -> std::optional<Elem> {
            return t.at(0) / 2;
          }};
}

/// Fractions of the relational integer ring: pairs with nonzero denominator,
/// identified by cross multiplication, with ring facts expressed through
/// bounded searches in the Add and Mul graphs.
inline Interpretation fraction_interpretation() {
  Interpretation I;
  I.name = "fractions";
  I.target_sig = Signature({{"Add", 3}, {"Mul", 3}});

  auto nonzero = [](const StructureOracle& s, Elem b) -> Truth {
    return truth_not(s.query(0, std::vector<Elem>{b, b, b}));  // b + b = b only at zero
  };

  I.dom = {ComplexityTag{0, ComplexityTag::Side::Delta}, "pairs with nonzero denominator",
           [nonzero](const StructureOracle& s, const TupleArgs& args, const EvalBounds&) -> Truth {
             if (args.size() != 1 || args[0].size() != 2) return Truth::is_false;
             return nonzero(s, args[0][1]);
           }};

  I.sim = {ComplexityTag{1, ComplexityTag::Side::Sigma}, "cross multiplication",
           [](const StructureOracle& s, const TupleArgs& args, const EvalBounds& b) -> Truth {
             if (args.size() != 2 || args[0].size() != 2 || args[1].size() != 2)
               return Truth::is_false;
             auto p = interpdetail::graph_search(s, 1, args[0][0], args[1][1], b.search);
             auto q = interpdetail::graph_search(s, 1, args[1][0], args[0][1], b.search);
             if (!p || !q) return Truth::unknown;
             return truth_of(*p == *q);
           }};

  auto triple = [](bool additive) {
    return [additive](const StructureOracle& s, const TupleArgs& args,
                      const EvalBounds& b) -> Truth {
      if (args.size() != 3) return Truth::is_false;
      for (const auto& t : args)
        if (t.size() != 2) return Truth::is_false;
      Elem a1 = args[0][0], b1 = args[0][1];
      Elem a2 = args[1][0], b2 = args[1][1];
      Elem a3 = args[2][0], b3 = args[2][1];
      auto mul = [&](Elem x, Elem y) { return interpdetail::graph_search(s, 1, x, y, b.search); };
      if (additive) {
        // (a1 b2 + a2 b1) b3 = a3 b1 b2
        auto p = mul(a1, b2);
        auto q = mul(a2, b1);
        if (!p || !q) return Truth::unknown;
        auto sum = interpdetail::graph_search(s, 0, *p, *q, b.search);
        if (!sum) return Truth::unknown;
        auto lhs = mul(*sum, b3);
        auto bb = mul(b1, b2);
        if (!lhs || !bb) return Truth::unknown;
        auto rhs = mul(a3, *bb);
        if (!rhs) return Truth::unknown;
        return truth_of(*lhs == *rhs);
      }
      auto aa = mul(a1, a2);
      if (!aa) return Truth::unknown;
      auto lhs = mul(*aa, b3);
      auto bb = mul(b1, b2);
      if (!lhs || !bb) return Truth::unknown;
      auto rhs = mul(a3, *bb);
      if (!rhs) return Truth::unknown;
      return truth_of(*lhs == *rhs);
    };
  };
  I.rels.push_back({ComplexityTag{1, ComplexityTag::Side::Sigma}, "Add", triple(true)});
  I.rels.push_back({ComplexityTag{1, ComplexityTag::Side::Sigma}, "Mul", triple(false)});
  I.complexity = {1, ComplexityTag::Side::Sigma};
  return I;
}

/// Witness for the fraction interpretation over the canonical integer ring:
/// a pair names the ratio of the integers it carries, indexed by the fixed
/// rational enumeration.
inline InterpretationWitness fraction_witness() {
  return {"fractions",
          [](const StructureOracle&, const std::vector<Elem>& t) -> std::optional<Elem> {
            if (t.size() != 2) return std::nullopt;
            long long a = detail::integer_at(t[0]);
            long long b = detail::integer_at(t[1]);
            if (b == 0) return std::nullopt;
            for (Elem i = 0; i < 4096; ++i) {
              auto [x, y] = detail::rational_ring_at(i);
              if (a * y == x * b) return i;
            }
            return std::nullopt;
          }};
}

/// The class-and-point structure inside the matched-pairs graph: vertices
/// name points, matched pairs name classes.
inline Interpretation classpoints_in_pairs() {
  Interpretation I;
  I.name = "classpoints-in-pairs";
  I.target_sig = Signature({{"Cls", 1}, {"Pt", 1}, {"In", 2}});
  I.dom = {ComplexityTag{0, ComplexityTag::Side::Delta}, "vertices and edges",
           [](const StructureOracle& s, const TupleArgs& args, const EvalBounds&) -> Truth {
             if (args.size() != 1) return Truth::is_false;
             if (args[0].size() == 1) return Truth::is_true;
             if (args[0].size() == 2) return s.query(0, args[0]);
             return Truth::is_false;
           }};
  I.sim = {ComplexityTag{0, ComplexityTag::Side::Delta}, "same vertex or same edge",
           [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) -> Truth {
             if (args.size() != 2) return Truth::is_false;
             const auto& x = args[0];
             const auto& y = args[1];
             if (x.size() != y.size()) return Truth::is_false;
             if (x.size() == 1) return truth_of(x == y);
             return truth_of((x[0] == y[0] && x[1] == y[1]) || (x[0] == y[1] && x[1] == y[0]));
           }};
  I.rels.push_back({ComplexityTag{0, ComplexityTag::Side::Delta}, "Cls",
                    [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) -> Truth {
                      return truth_of(args.size() == 1 && args[0].size() == 2);
                    }});
  I.rels.push_back({ComplexityTag{0, ComplexityTag::Side::Delta}, "Pt",
                    [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) -> Truth {
                      return truth_of(args.size() == 1 && args[0].size() == 1);
                    }});
  I.rels.push_back({ComplexityTag{0, ComplexityTag::Side::Delta}, "In",
                    [](const StructureOracle&, const TupleArgs& args, const EvalBounds&) -> Truth {
                      if (args.size() != 2 || args[0].size() != 1 || args[1].size() != 2)
                        return Truth::is_false;
                      return truth_of(args[0][0] == args[1][0] || args[0][0] == args[1][1]);
                    }});
  I.complexity = {0, ComplexityTag::Side::Delta};
  return I;
}

inline InterpretationWitness classpoints_in_pairs_witness() {
  return {"classpoints-in-pairs",
          [](const StructureOracle&, const std::vector<Elem>& t) -> std::optional<Elem> {
            if (t.size() == 1) return 2 * t[0] + 1;                       // point
            if (t.size() == 2) return 2 * (std::min(t[0], t[1]) / 2);     // class
            return std::nullopt;
          }};
}

/// The matched-pairs graph inside the class-and-point structure: points are
/// vertices, matched when they share a class.
inline Interpretation pairs_in_classpoints() {
  Interpretation I;
  I.name = "pairs-in-classpoints";
  I.target_sig = Signature({{"Edge", 2}});
  I.dom = {ComplexityTag{0, ComplexityTag::Side::Delta}, "points",
           [](const StructureOracle& s, const TupleArgs& args, const EvalBounds&) -> Truth {
             if (args.size() != 1 || args[0].size() != 1) return Truth::is_false;
             return s.query(1, args[0]);
           }};
  I.sim = interpdetail::tuple_equality("equality");
  I.rels.push_back({ComplexityTag{1, ComplexityTag::Side::Sigma}, "Edge",
                    [](const StructureOracle& s, const TupleArgs& args,
                       const EvalBounds& b) -> Truth {
                      if (args.size() != 2 || args[0].size() != 1 || args[1].size() != 1)
                        return Truth::is_false;
                      if (args[0][0] == args[1][0]) return Truth::is_false;
                      bool open = false;
                      for (Elem c = 0; c < b.search; ++c) {
                        Truth in1 = s.query(2, std::vector<Elem>{args[0][0], c});
                        Truth in2 = s.query(2, std::vector<Elem>{args[1][0], c});
                        if (is_unknown(in1) || is_unknown(in2)) {
                          open = true;
                          continue;
                        }
                        if (is_true(in1) && is_true(in2)) return Truth::is_true;
                      }
                      return open ? Truth::unknown : Truth::is_false;
                    }});
  I.complexity = {1, ComplexityTag::Side::Sigma};
  return I;
}

inline InterpretationWitness pairs_in_classpoints_witness() {
  return {"pairs-in-classpoints",
          [](const StructureOracle&, const std::vector<Elem>& t) -> std::optional<Elem> {
            if (t.size() != 1 || t[0] % 2 != 1) return std::nullopt;
            return (t[0] - 1) / 2;
          }};
}

}  // namespace bstar
