#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bstar/copies.hpp"
#include "bstar/definable.hpp"
#include "bstar/forcing.hpp"
#include "bstar/functor.hpp"
#include "bstar/functor_compile.hpp"

namespace bstar {

enum class Membership { in, out, undecided };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::in: return "in";
    case Membership::out: return "out";
    default: return "undecided";
  }
}

/// An element of the extracted domain: a finite injective tuple paired with
/// an index, coded as the tuple extended by the index. Ordered by the coded
/// form, length first.
struct DomainElement {
  InjectiveTuple tuple;
  Elem index = 0;

  std::vector<Elem> coded() const {
    std::vector<Elem> c = tuple.entries();
    c.push_back(index);
    return c;
  }

  bool operator==(const DomainElement& o) const { return tuple == o.tuple && index == o.index; }
  bool operator<(const DomainElement& o) const { return tuple_less(coded(), o.coded()); }

  std::string to_string() const { return tuple.to_string() + "#" + std::to_string(index); }
};

/// Outcome of one directed operator run against condition data.
struct DirectedOutcome {
  enum class Kind {
    committed,   // the run halted with an output
    no_witness,  // the condition's tuples do not thread a halting run
    data_gap,    // the structure's own diagram ran out (copies with finite data)
    diverged,    // use bound exceeded
  };
  Kind kind = Kind::no_witness;
  Elem output = 0;
  std::string query;

  bool committed_as(Elem v) const { return kind == Kind::committed && output == v; }
};

/// Candidate witnesses for the bounded existential searches, with a flag
/// recording whether the pool is large enough to make failures conclusive.
/// A chain pool consists of the prefixes of a few fixed enumerations; runs
/// against a prefix are sub-computations of runs against its extensions, so
/// the longest member of each chain decides the whole search.
struct WitnessPool {
  std::vector<InjectiveTuple> candidates;
  bool certified = false;
  std::vector<InjectiveTuple> chain_heads;  // longest member per chain, when chain-shaped
};

namespace detail {

template <class Fn>
void for_each_pool_tuple(Elem pool, int max_len, Fn&& fn) {
  std::vector<Elem> stack;
  auto rec = [&](auto&& self) -> void {
    fn(InjectiveTuple(stack));
    if (static_cast<int>(stack.size()) == max_len) return;
    for (Elem e = 0; e < pool; ++e) {
      if (std::find(stack.begin(), stack.end(), e) != stack.end()) continue;
      stack.push_back(e);
      self(self);
      stack.pop_back();
    }
  };
  // Canonical order: length first, then lexicographic.
  for (int len = 0; len <= max_len; ++len) {
    std::vector<Elem> s;
    auto by_len = [&](auto&& self, int remaining) -> void {
      if (remaining == 0) {
        fn(InjectiveTuple(s));
        return;
      }
      for (Elem e = 0; e < pool; ++e) {
        if (std::find(s.begin(), s.end(), e) != s.end()) continue;
        s.push_back(e);
        self(self, remaining - 1);
        s.pop_back();
      }
    };
    by_len(by_len, len);
  }
  (void)rec;
}

}  // namespace detail

inline WitnessPool pool_witnesses(const StructureOracle& base, Elem pool, int max_len) {
  WitnessPool w;
  detail::for_each_pool_tuple(pool, max_len, [&](const InjectiveTuple& t) { w.candidates.push_back(t); });
  auto hint = base.universe_hint();
  w.certified = hint && pool >= *hint;
  return w;
}

inline WitnessPool prefix_witnesses(const std::vector<InjectiveTuple>& generics) {
  WitnessPool w;
  for (const auto& g : generics) {
    for (int n = 0; n <= g.size(); ++n) w.candidates.push_back(g.prefix(n));
    w.chain_heads.push_back(g);
  }
  std::sort(w.candidates.begin(), w.candidates.end());
  w.candidates.erase(std::unique(w.candidates.begin(), w.candidates.end()), w.candidates.end());
  w.certified = false;  // prefixes witness positives; failures stay open
  return w;
}

/// The forcing-backed interpretation data of one operator over one base
/// presentation: domain, equivalence and relation membership are decided by
/// directed runs of the operator against condition data, which agree with
/// forcing the compiled statements but walk only the one path the condition
/// determines.
class Extraction {
 public:
  Extraction(StructureOracle base, FunctorOperator op, Bounds bounds, bool plain_composition = false)
      : base_(std::move(base)), op_(std::move(op)), bounds_(bounds), plain_(plain_composition) {}

  const StructureOracle& base() const { return base_; }
  const FunctorOperator& op() const { return op_; }
  const Bounds& bounds() const { return bounds_; }

  /// Runs the morphism program with the two coordinates of a condition.
  DirectedOutcome run_pair(const StructureOracle& world, const InjectiveTuple& src,
                           const InjectiveTuple& tgt, Elem input) const {
    bool data_gap = false;
    std::string gap_query;
    auto rel_through = [&](const InjectiveTuple& t, int sym,
                           const std::vector<Elem>& args) -> std::optional<bool> {
      std::vector<Elem> vals;
      for (Elem pos : args) {
        auto v = t.at(pos);
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      Truth x = world.query(sym, vals);
      if (is_unknown(x)) {
        data_gap = true;
        gap_query = detail_query(sym, vals);
        return std::nullopt;
      }
      return is_true(x);
    };
    MorphismAccess access(
        [&](int sym, const std::vector<Elem>& args) { return rel_through(src, sym, args); },
        [&](int sym, const std::vector<Elem>& args) { return rel_through(tgt, sym, args); },
        [&](Elem m) -> std::optional<Elem> {
          if (plain_) {
            auto v = src.at(m);
            if (!v) return std::nullopt;
            return tgt.at(*v);
          }
          auto v = src.at(m);
          if (!v) return std::nullopt;
          return tgt.position_of(*v);
        },
        [&](Elem n) -> std::optional<Elem> {
          if (plain_) {
            for (int m = 0; m < src.size(); ++m) {
              auto v = src.at(m);
              if (v && tgt.at(*v) == std::optional<Elem>(n)) return m;
            }
            return std::nullopt;
          }
          auto v = tgt.at(n);
          if (!v) return std::nullopt;
          return src.position_of(*v);
        },
        op_.use_bound, nullptr);
    return run_with(access, input, data_gap, gap_query);
  }

  /// Runs the structure program over the pullback along one tuple.
  DirectedOutcome run_structure_fact(const StructureOracle& world, const InjectiveTuple& g, int sym,
                                     const std::vector<Elem>& args) const {
    bool data_gap = false;
    std::string gap_query;
    DiagramAccess access(
        [&](int s, const std::vector<Elem>& a) -> std::optional<bool> {
          std::vector<Elem> vals;
          for (Elem pos : a) {
            auto v = g.at(pos);
            if (!v) return std::nullopt;
            vals.push_back(*v);
          }
          Truth x = world.query(s, vals);
          if (is_unknown(x)) {
            data_gap = true;
            gap_query = detail_query(s, vals);
            return std::nullopt;
          }
          return is_true(x);
        },
        op_.use_bound, nullptr);
    DirectedOutcome out;
    try {
      bool v = op_.on_structure(access, sym, args);
      out.kind = DirectedOutcome::Kind::committed;
      out.output = v ? 1 : 0;
    } catch (const oracle_suspended& s) {
      out.kind = data_gap ? DirectedOutcome::Kind::data_gap : DirectedOutcome::Kind::no_witness;
      out.query = data_gap ? gap_query : s.query;
    } catch (const operator_divergence& d) {
      out.kind = DirectedOutcome::Kind::diverged;
      out.query = d.query;
    }
    return out;
  }

  /// Runs the morphism program from a fully given copy into its pullback
  /// along one tuple.
  DirectedOutcome run_hat(const StructureOracle& fixed_copy, const InjectiveTuple& g,
                          Elem input) const {
    bool data_gap = false;
    std::string gap_query;
    auto query_fixed = [&](int sym, const std::vector<Elem>& vals) -> std::optional<bool> {
      Truth x = fixed_copy.query(sym, vals);
      if (is_unknown(x)) {
        data_gap = true;
        gap_query = detail_query(sym, vals);
        return std::nullopt;
      }
      return is_true(x);
    };
    MorphismAccess access(
        [&](int sym, const std::vector<Elem>& args) { return query_fixed(sym, args); },
        [&](int sym, const std::vector<Elem>& args) -> std::optional<bool> {
          std::vector<Elem> vals;
          for (Elem pos : args) {
            auto v = g.at(pos);
            if (!v) return std::nullopt;
            vals.push_back(*v);
          }
          return query_fixed(sym, vals);
        },
        [&](Elem m) -> std::optional<Elem> { return g.position_of(m); },
        [&](Elem n) -> std::optional<Elem> { return g.at(n); }, op_.use_bound, nullptr);
    return run_with(access, input, data_gap, gap_query);
  }

  // --- membership ------------------------------------------------------------

  /// Membership of (tuple, index) in the extracted domain: the diagonal
  /// condition must commit the index to itself.
  Membership domain(const StructureOracle& world, const InjectiveTuple& t, Elem index) const {
    DirectedOutcome o = run_pair(world, t, t, index);
    switch (o.kind) {
      case DirectedOutcome::Kind::committed: return o.output == index ? Membership::in : Membership::out;
      case DirectedOutcome::Kind::no_witness: return Membership::out;
      default: return Membership::undecided;
    }
  }

  Membership domain(const InjectiveTuple& t, Elem index) const { return domain(base_, t, index); }

  /// The extracted equivalence: the pair condition must commit one index to
  /// the other.
  Membership sim(const StructureOracle& world, const DomainElement& a, const DomainElement& b) const {
    DirectedOutcome o = run_pair(world, a.tuple, b.tuple, a.index);
    switch (o.kind) {
      case DirectedOutcome::Kind::committed: return o.output == b.index ? Membership::in : Membership::out;
      case DirectedOutcome::Kind::no_witness: return Membership::out;
      default: return Membership::undecided;
    }
  }

  Membership sim(const DomainElement& a, const DomainElement& b) const { return sim(base_, a, b); }

  /// The extracted relation for one output symbol: a bounded search for a
  /// witness tuple linked to every argument, over which the structure fact
  /// commits positively. Chain-shaped pools are decided by their heads.
  Membership relation(const StructureOracle& world, int sym, const std::vector<DomainElement>& args,
                      const WitnessPool& pool) const {
    bool saw_gap = false;
    auto try_candidate = [&](const InjectiveTuple& c) -> std::optional<bool> {
      // true: a positive witness; false: this candidate commits negatively.
      std::vector<Elem> js;
      for (const auto& a : args) {
        DirectedOutcome o = run_pair(world, a.tuple, c, a.index);
        if (o.kind != DirectedOutcome::Kind::committed) {
          if (o.kind != DirectedOutcome::Kind::no_witness) saw_gap = true;
          return std::nullopt;
        }
        js.push_back(o.output);
      }
      DirectedOutcome fact = run_structure_fact(world, c, sym, js);
      if (fact.kind == DirectedOutcome::Kind::committed) return fact.output == 1;
      if (fact.kind != DirectedOutcome::Kind::no_witness) saw_gap = true;
      return std::nullopt;
    };
    if (!pool.chain_heads.empty()) {
      for (const auto& head : pool.chain_heads) {
        auto v = try_candidate(head);
        if (v && *v) return Membership::in;
      }
      return Membership::undecided;  // shorter prefixes are sub-computations
    }
    for (const auto& c : pool.candidates) {
      auto v = try_candidate(c);
      if (v && *v) return Membership::in;
    }
    return (pool.certified && !saw_gap) ? Membership::out : Membership::undecided;
  }

  // --- canonical maps ---------------------------------------------------------

  /// The least prefix of an enumeration carrying an index into the domain.
  std::optional<DomainElement> frak_prefix(const StructureOracle& world, const InjectiveTuple& g,
                                           Elem index) const {
    for (int n = 0; n <= g.size(); ++n) {
      InjectiveTuple c = g.prefix(n);
      if (domain(world, c, index) == Membership::in) return DomainElement{c, index};
    }
    return std::nullopt;
  }

  std::optional<DomainElement> frak_prefix(const InjectiveTuple& g, Elem index) const {
    return frak_prefix(base_, g, index);
  }

  /// The copy-indexed form: the least (tuple, j) whose hat run commits the
  /// given input to j, in canonical coded order.
  std::optional<DomainElement> frak_hat(const StructureOracle& copy_oracle, Elem input,
                                        const WitnessPool& pool) const {
    for (const auto& c : pool.candidates) {
      DirectedOutcome o = run_hat(copy_oracle, c, input);
      if (o.kind == DirectedOutcome::Kind::committed) return DomainElement{c, o.output};
    }
    return std::nullopt;
  }

 private:
  static std::string detail_query(int sym, const std::vector<Elem>& vals) {
    std::string s = "R" + std::to_string(sym) + "(";
    for (std::size_t i = 0; i < vals.size(); ++i) s += (i ? "," : "") + std::to_string(vals[i]);
    return s + ")";
  }

  DirectedOutcome run_with(MorphismAccess& access, Elem input, bool& data_gap,
                           std::string& gap_query) const {
    DirectedOutcome out;
    try {
      out.output = op_.on_morphism(access, input);
      out.kind = DirectedOutcome::Kind::committed;
    } catch (const oracle_suspended& s) {
      out.kind = data_gap ? DirectedOutcome::Kind::data_gap : DirectedOutcome::Kind::no_witness;
      out.query = data_gap ? gap_query : s.query;
    } catch (const operator_divergence& d) {
      out.kind = DirectedOutcome::Kind::diverged;
      out.query = d.query;
    }
    return out;
  }

  StructureOracle base_;
  FunctorOperator op_;
  Bounds bounds_;
  bool plain_;
};

// ---------------------------------------------------------------------------
// Fragments, partitions, quotients.
// ---------------------------------------------------------------------------

/// How to enumerate the finite piece of the extracted domain.
struct FragmentSpec {
  enum class Mode { full_tuples, generic_prefixes } mode = Mode::full_tuples;
  Elem pool = 6;
  int max_len = 3;
  Elem index_bound = 6;
  std::vector<InjectiveTuple> generics;
};

inline std::vector<DomainElement> enumerate_fragment(const Extraction& ex,
                                                     const StructureOracle& world,
                                                     const FragmentSpec& spec) {
  std::vector<DomainElement> out;
  auto consider = [&](const InjectiveTuple& t) {
    for (Elem i = 0; i < spec.index_bound; ++i)
      if (ex.domain(world, t, i) == Membership::in) out.push_back({t, i});
  };
  if (spec.mode == FragmentSpec::Mode::full_tuples) {
    detail::for_each_pool_tuple(spec.pool, spec.max_len, consider);
  } else {
    std::vector<InjectiveTuple> seen;
    for (const auto& g : spec.generics)
      for (int n = 0; n <= g.size(); ++n) {
        InjectiveTuple c = g.prefix(n);
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
          seen.push_back(c);
          consider(c);
        }
      }
    std::sort(out.begin(), out.end());
  }
  return out;
}

/// The fragment partitioned by the extracted equivalence: classes appear in
/// the canonical order of their first member; every member must link to
/// exactly one representative.
struct Partition {
  std::vector<DomainElement> reps;
  std::vector<std::vector<DomainElement>> classes;
  std::vector<std::string> anomalies;  // members linking to zero or two reps

  int class_of(const Extraction& ex, const StructureOracle& world, const DomainElement& d) const {
    for (std::size_t k = 0; k < reps.size(); ++k)
      if (ex.sim(world, d, reps[k]) == Membership::in) return static_cast<int>(k);
    return -1;
  }
};

inline Partition partition_fragment(const Extraction& ex, const StructureOracle& world,
                                    const std::vector<DomainElement>& fragment) {
  Partition p;
  for (const auto& d : fragment) {
    int home = -1;
    for (std::size_t k = 0; k < p.reps.size(); ++k) {
      if (ex.sim(world, d, p.reps[k]) == Membership::in) {
        if (home >= 0) {
          p.anomalies.push_back(d.to_string() + " links to two representatives");
        } else {
          home = static_cast<int>(k);
        }
      }
    }
    if (home < 0) {
      p.reps.push_back(d);
      p.classes.push_back({d});
    } else {
      p.classes[static_cast<std::size_t>(home)].push_back(d);
    }
  }
  return p;
}

/// The quotient structure fragment: relation facts on class indices.
struct QuotientFragment {
  Signature sig;
  int class_count = 0;
  std::set<std::pair<int, std::vector<int>>> facts;
  std::vector<std::string> undecided;

  bool holds(int sym, const std::vector<int>& classes) const {
    return facts.count({sym, classes}) != 0;
  }
};

inline QuotientFragment extract_quotient(const Extraction& ex, const StructureOracle& world,
                                         const Partition& part, const WitnessPool& pool) {
  QuotientFragment q;
  q.sig = ex.op().target_sig;
  q.class_count = static_cast<int>(part.reps.size());
  for (int sym = 0; sym < q.sig.size(); ++sym) {
    int arity = q.sig.arity(sym);
    std::vector<int> idx(static_cast<std::size_t>(arity), 0);
    for (;;) {
      std::vector<DomainElement> args;
      for (int k = 0; k < arity; ++k)
        args.push_back(part.reps[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])]);
      Membership m = ex.relation(world, sym, args, pool);
      if (m == Membership::in) {
        q.facts.insert({sym, std::vector<int>(idx.begin(), idx.end())});
      } else if (m == Membership::undecided) {
        std::string inst = "R" + std::to_string(sym) + "(";
        for (std::size_t k = 0; k < idx.size(); ++k) inst += (k ? "," : "") + std::to_string(idx[k]);
        q.undecided.push_back(inst + ")");
      }
      int k = arity - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == q.class_count) {
        idx[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  return q;
}

}  // namespace bstar
