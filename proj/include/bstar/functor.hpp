#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bstar/condition.hpp"
#include "bstar/structure.hpp"

namespace bstar {

/// Raised when an operator run needs an oracle answer that the available
/// data does not determine. Callers translate it into an "insufficient"
/// outcome; it never means a negative answer.
class oracle_suspended : public std::runtime_error {
 public:
  explicit oracle_suspended(const std::string& q) : std::runtime_error(q), query(q) {}
  std::string query;
};

/// Raised when an operator run exceeds its use bound.
class operator_divergence : public std::runtime_error {
 public:
  explicit operator_divergence(const std::string& q)
      : std::runtime_error("use bound exceeded at query: " + q), query(q) {}
  std::string query;
};

/// One recorded oracle interaction of an operator run.
struct QueryRecord {
  enum class Tag { diagram, src_rel, tgt_rel, iso, iso_inv };
  Tag tag;
  int sym = 0;
  std::vector<Elem> args;
  long long answer = 0;  // 0/1 for relations, the value for iso queries

  bool operator==(const QueryRecord&) const = default;
};

using Transcript = std::vector<QueryRecord>;

namespace detail {

inline std::string query_text(QueryRecord::Tag tag, int sym, const std::vector<Elem>& args) {
  const char* names[] = {"diagram", "src", "tgt", "iso", "iso-inv"};
  std::string s = names[static_cast<int>(tag)];
  s += "(" + std::to_string(sym);
  for (Elem a : args) s += "," + std::to_string(a);
  return s + ")";
}

}  // namespace detail

/// Oracle handed to the structure side of an operator: the atomic diagram of
/// one input copy, with fuel accounting and an optional transcript.
class DiagramAccess {
 public:
  using Fn = std::function<std::optional<bool>(int sym, const std::vector<Elem>&)>;

  DiagramAccess(Fn fn, long long fuel, Transcript* rec = nullptr)
      : fn_(std::move(fn)), fuel_(fuel), rec_(rec) {}

  bool rel(int sym, const std::vector<Elem>& args) {
    spend(QueryRecord::Tag::diagram, sym, args);
    auto a = fn_(sym, args);
    if (!a) throw oracle_suspended(detail::query_text(QueryRecord::Tag::diagram, sym, args));
    if (rec_) rec_->push_back({QueryRecord::Tag::diagram, sym, args, *a ? 1 : 0});
    return *a;
  }

  long long fuel_left() const { return fuel_; }

 private:
  void spend(QueryRecord::Tag tag, int sym, const std::vector<Elem>& args) {
    if (--fuel_ < 0) throw operator_divergence(detail::query_text(tag, sym, args));
  }

  Fn fn_;
  long long fuel_;
  Transcript* rec_;
};

/// Oracle handed to the morphism side of an operator: the diagrams of both
/// copies and the graph of the isomorphism, queried pointwise.
class MorphismAccess {
 public:
  using RelFn = std::function<std::optional<bool>(int sym, const std::vector<Elem>&)>;
  using MapFn = std::function<std::optional<Elem>(Elem)>;

  MorphismAccess(RelFn src, RelFn tgt, MapFn iso, MapFn iso_inv, long long fuel,
                 Transcript* rec = nullptr)
      : src_(std::move(src)),
        tgt_(std::move(tgt)),
        iso_(std::move(iso)),
        inv_(std::move(iso_inv)),
        fuel_(fuel),
        rec_(rec) {}

  bool src(int sym, const std::vector<Elem>& args) { return rel(QueryRecord::Tag::src_rel, src_, sym, args); }
  bool tgt(int sym, const std::vector<Elem>& args) { return rel(QueryRecord::Tag::tgt_rel, tgt_, sym, args); }

  Elem iso(Elem m) { return map(QueryRecord::Tag::iso, iso_, m); }
  Elem iso_inv(Elem n) { return map(QueryRecord::Tag::iso_inv, inv_, n); }

  long long fuel_left() const { return fuel_; }

 private:
  bool rel(QueryRecord::Tag tag, RelFn& fn, int sym, const std::vector<Elem>& args) {
    spend(tag, sym, args);
    auto a = fn(sym, args);
    if (!a) throw oracle_suspended(detail::query_text(tag, sym, args));
    if (rec_) rec_->push_back({tag, sym, args, *a ? 1 : 0});
    return *a;
  }

  Elem map(QueryRecord::Tag tag, MapFn& fn, Elem m) {
    spend(tag, 0, {m});
    auto a = fn(m);
    if (!a) throw oracle_suspended(detail::query_text(tag, 0, {m}));
    if (rec_) rec_->push_back({tag, 0, {m}, *a});
    return *a;
  }

  void spend(QueryRecord::Tag tag, int sym, const std::vector<Elem>& args) {
    if (--fuel_ < 0) throw operator_divergence(detail::query_text(tag, sym, args));
  }

  RelFn src_, tgt_;
  MapFn iso_, inv_;
  long long fuel_;
  Transcript* rec_;
};

/// A functor between categories of copies, given by a pair of deterministic
/// use-bounded oracle programs: one answers the output structure's relation
/// queries from an input copy's diagram, the other answers output morphism
/// values from two diagrams and an isomorphism graph.
struct FunctorOperator {
  std::string name;
  Signature source_sig;
  Signature target_sig;
  std::function<bool(DiagramAccess&, int sym, const std::vector<Elem>&)> on_structure;
  std::function<Elem(MorphismAccess&, Elem)> on_morphism;
  long long use_bound = 100000;
};

/// The output copy as a structure oracle: each query runs the operator over
/// the input copy's diagram; suspensions surface as `unknown`.
inline StructureOracle apply_structure(const FunctorOperator& F, const StructureOracle& input,
                                       std::optional<Elem> hint = std::nullopt) {
  auto in = std::make_shared<StructureOracle>(input);
  auto op = std::make_shared<FunctorOperator>(F);
  return StructureOracle(
      F.name + "(" + input.name() + ")", F.target_sig,
      [in, op](int sym, std::span<const Elem> tuple) -> Truth {
        DiagramAccess d(
            [in](int s, const std::vector<Elem>& a) -> std::optional<bool> {
              Truth t = in->query(s, a);
              if (is_unknown(t)) return std::nullopt;
              return is_true(t);
            },
            op->use_bound);
        try {
          return truth_of(op->on_structure(d, sym, std::vector<Elem>(tuple.begin(), tuple.end())));
        } catch (const oracle_suspended&) {
          return Truth::unknown;
        }
      },
      hint);
}

/// Everything an output morphism value needs: the two diagrams and the
/// isomorphism graph in both directions.
struct MorphismData {
  StructureOracle src;
  StructureOracle tgt;
  std::function<std::optional<Elem>(Elem)> iso;
  std::function<std::optional<Elem>(Elem)> iso_inv;
};

inline MorphismData morphism_data(const StructureOracle& src, const StructureOracle& tgt,
                                  const PartialInjection& h) {
  auto hp = std::make_shared<PartialInjection>(h);
  return {src, tgt, [hp](Elem m) { return hp->image(m); }, [hp](Elem n) { return hp->preimage(n); }};
}

/// Runs the morphism side on input `i`; nothing when the data ran out.
inline std::optional<Elem> apply_morphism(const FunctorOperator& F, const MorphismData& m, Elem i,
                                          Transcript* rec = nullptr) {
  MorphismAccess access(
      [&m](int s, const std::vector<Elem>& a) -> std::optional<bool> {
        Truth t = m.src.query(s, a);
        if (is_unknown(t)) return std::nullopt;
        return is_true(t);
      },
      [&m](int s, const std::vector<Elem>& a) -> std::optional<bool> {
        Truth t = m.tgt.query(s, a);
        if (is_unknown(t)) return std::nullopt;
        return is_true(t);
      },
      m.iso, m.iso_inv, F.use_bound, rec);
  try {
    return F.on_morphism(access, i);
  } catch (const oracle_suspended&) {
    return std::nullopt;
  }
}

/// Replays a recorded run against the transcript alone; used to confirm that
/// answers depend only on the recorded finite use.
inline std::optional<Elem> replay_morphism(const FunctorOperator& F, const Transcript& t, Elem i) {
  auto find_rel = [&t](QueryRecord::Tag tag, int sym, const std::vector<Elem>& args) -> std::optional<bool> {
    for (const auto& r : t)
      if (r.tag == tag && r.sym == sym && r.args == args) return r.answer != 0;
    return std::nullopt;
  };
  auto find_map = [&t](QueryRecord::Tag tag, Elem m) -> std::optional<Elem> {
    for (const auto& r : t)
      if (r.tag == tag && r.args == std::vector<Elem>{m}) return static_cast<Elem>(r.answer);
    return std::nullopt;
  };
  MorphismAccess access(
      [&](int s, const std::vector<Elem>& a) { return find_rel(QueryRecord::Tag::src_rel, s, a); },
      [&](int s, const std::vector<Elem>& a) { return find_rel(QueryRecord::Tag::tgt_rel, s, a); },
      [&](Elem mm) { return find_map(QueryRecord::Tag::iso, mm); },
      [&](Elem nn) { return find_map(QueryRecord::Tag::iso_inv, nn); }, F.use_bound, nullptr);
  try {
    return F.on_morphism(access, i);
  } catch (const oracle_suspended&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Built-in operators.
// ---------------------------------------------------------------------------

inline FunctorOperator identity_functor(const StructureOracle& base) {
  FunctorOperator F;
  F.name = "identity";
  F.source_sig = base.signature();
  F.target_sig = base.signature();
  F.on_structure = [](DiagramAccess& d, int sym, const std::vector<Elem>& args) {
    return d.rel(sym, args);
  };
  F.on_morphism = [](MorphismAccess& o, Elem i) { return o.iso(i); };
  F.use_bound = 1000;
  return F;
}

/// Sends every copy to one fixed presentation and every isomorphism to the
/// identity map. Reads no oracle at all.
inline FunctorOperator constant_functor(const StructureOracle& source_base,
                                        const StructureOracle& fixed_target) {
  FunctorOperator F;
  F.name = "constant:" + fixed_target.name();
  F.source_sig = source_base.signature();
  F.target_sig = fixed_target.signature();
  auto a = std::make_shared<StructureOracle>(fixed_target);
  F.on_structure = [a](DiagramAccess&, int sym, const std::vector<Elem>& args) {
    return a->eval_atomic(sym, args);
  };
  F.on_morphism = [](MorphismAccess&, Elem i) { return i; };
  F.use_bound = 1000;
  return F;
}

/// Recodes every copy along the fixed involution swapping 2k and 2k+1.
inline FunctorOperator reindex_functor(const StructureOracle& base) {
  FunctorOperator F;
  F.name = "reindex";
  F.source_sig = base.signature();
  F.target_sig = base.signature();
  auto pi = [](Elem e) { return e % 2 == 0 ? e + 1 : e - 1; };
  F.on_structure = [pi](DiagramAccess& d, int sym, const std::vector<Elem>& args) {
    std::vector<Elem> mapped;
    mapped.reserve(args.size());
    for (Elem a : args) mapped.push_back(pi(a));
    return d.rel(sym, mapped);
  };
  F.on_morphism = [pi](MorphismAccess& o, Elem i) { return pi(o.iso(pi(i))); };
  F.use_bound = 1000;
  return F;
}

/// First the inner operator, then the outer one on its output.
inline FunctorOperator compose_functors(const FunctorOperator& outer, const FunctorOperator& inner) {
  FunctorOperator F;
  F.name = outer.name + "*" + inner.name;
  F.source_sig = inner.source_sig;
  F.target_sig = outer.target_sig;
  auto in = std::make_shared<FunctorOperator>(inner);
  auto out = std::make_shared<FunctorOperator>(outer);
  F.use_bound = inner.use_bound * 4 + outer.use_bound * 4;
  F.on_structure = [in, out](DiagramAccess& d, int sym, const std::vector<Elem>& args) {
    DiagramAccess mid(
        [&d, in](int s, const std::vector<Elem>& a) -> std::optional<bool> {
          return in->on_structure(d, s, a);
        },
        out->use_bound);
    return out->on_structure(mid, sym, args);
  };
  F.on_morphism = [in, out](MorphismAccess& o, Elem i) {
    MorphismAccess mid(
        [&o, in](int s, const std::vector<Elem>& a) -> std::optional<bool> {
          DiagramAccess d([&o](int ss, const std::vector<Elem>& aa) -> std::optional<bool> {
            return o.src(ss, aa);
          }, in->use_bound);
          return in->on_structure(d, s, a);
        },
        [&o, in](int s, const std::vector<Elem>& a) -> std::optional<bool> {
          DiagramAccess d([&o](int ss, const std::vector<Elem>& aa) -> std::optional<bool> {
            return o.tgt(ss, aa);
          }, in->use_bound);
          return in->on_structure(d, s, a);
        },
        [&o, in](Elem m) -> std::optional<Elem> { return in->on_morphism(o, m); },
        [&o, in](Elem n) -> std::optional<Elem> {
          // Inverse through the flipped oracle.
          MorphismAccess flipped(
              [&o](int s, const std::vector<Elem>& a) -> std::optional<bool> { return o.tgt(s, a); },
              [&o](int s, const std::vector<Elem>& a) -> std::optional<bool> { return o.src(s, a); },
              [&o](Elem m) -> std::optional<Elem> { return o.iso_inv(m); },
              [&o](Elem m) -> std::optional<Elem> { return o.iso(m); }, in->use_bound, nullptr);
          return in->on_morphism(flipped, n);
        },
        out->use_bound, nullptr);
    return out->on_morphism(mid, i);
  };
  return F;
}

/// Loops forever on its first morphism query; exercises the divergence path.
inline FunctorOperator divergent_functor(const StructureOracle& base) {
  FunctorOperator F;
  F.name = "divergent";
  F.source_sig = base.signature();
  F.target_sig = base.signature();
  F.on_structure = [](DiagramAccess& d, int sym, const std::vector<Elem>& args) {
    return d.rel(sym, args);
  };
  F.on_morphism = [](MorphismAccess& o, Elem i) -> Elem {
    Elem x = i;
    for (;;) x = o.iso(x % 2);
  };
  F.use_bound = 1000;
  return F;
}

}  // namespace bstar
