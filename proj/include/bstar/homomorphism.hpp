#pragma once

#include "bstar/backforth.hpp"
#include "bstar/laws.hpp"

namespace bstar {

/// An automorphism of a fixed presentation, exposed pointwise in both
/// directions; undefined values signal that the finite data ran out.
struct AutomorphismOracle {
  std::function<std::optional<Elem>(Elem)> fwd;
  std::function<std::optional<Elem>(Elem)> inv;
};

inline AutomorphismOracle automorphism_oracle(const PartialInjection& f) {
  auto p = std::make_shared<PartialInjection>(f);
  return {[p](Elem x) { return p->image(x); }, [p](Elem y) { return p->preimage(y); }};
}

/// A group homomorphism between automorphism groups of fixed presentations,
/// as a pointwise program: every answered value depends on finitely many
/// queries to the input automorphism.
struct GroupHomomorphismOperator {
  std::string name;
  std::function<std::optional<Elem>(const AutomorphismOracle&, Elem)> apply;
};

inline GroupHomomorphismOperator identity_homomorphism() {
  return {"id", [](const AutomorphismOracle& f, Elem x) { return f.fwd(x); }};
}

/// Automorphisms of the matched-pairs presentation act on pair classes:
/// the image of class c is the class of the image of its least vertex.
inline GroupHomomorphismOperator class_collapse_homomorphism() {
  return {"classes", [](const AutomorphismOracle& f, Elem c) -> std::optional<Elem> {
            auto v = f.fwd(2 * c);
            if (!v) return std::nullopt;
            return *v / 2;
          }};
}

/// Assigns to each copy an isomorphism onto the canonical presentation,
/// queried pointwise; the identity on the canonical copy itself.
struct CopyStandardizer {
  std::string name;
  std::function<std::optional<Elem>(const StructureOracle&, Elem)> value;
};

namespace detail {

/// Least-candidate backtracking embedding of the copy's initial segment
/// into the canonical presentation, preserving and reflecting the diagram.
inline std::optional<PartialInjection> standardize_prefix(const StructureOracle& copy,
                                                          const StructureOracle& canonical,
                                                          Elem upto, Elem candidate_bound) {
  PartialInjection m;
  bool data_gap = false;
  auto consistent = [&](const PartialInjection& cur, Elem a, Elem b) -> bool {
    PartialInjection probe = cur;
    if (!probe.insert(a, b)) return false;
    std::vector<Elem> dom;
    for (const auto& [x, y] : probe.pairs()) dom.push_back(x);
    for (int sym = 0; sym < canonical.signature().size(); ++sym) {
      int arity = canonical.signature().arity(sym);
      std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        std::vector<Elem> t, img;
        bool touches = false;
        for (int k = 0; k < arity; ++k) {
          Elem e = dom[idx[static_cast<std::size_t>(k)]];
          if (e == a) touches = true;
          t.push_back(e);
          img.push_back(*probe.image(e));
        }
        if (touches) {
          Truth x = copy.query(sym, t);
          Truth y = canonical.query(sym, img);
          if (is_unknown(x) || is_unknown(y)) {
            data_gap = true;
            return false;
          }
          if (x != y) return false;
        }
        int k = arity - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == dom.size()) {
          idx[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
    return true;
  };

  long long budget = 500000;
  auto dfs = [&](auto&& self, Elem next) -> bool {
    if (next > upto) return true;
    if (--budget < 0) return false;
    for (Elem c = 0; c < candidate_bound; ++c) {
      if (m.hits(c)) continue;
      if (!consistent(m, next, c)) continue;
      m.insert(next, c);
      if (self(self, next + 1)) return true;
      PartialInjection rebuilt;
      for (const auto& [x, y] : m.pairs())
        if (x != next) rebuilt.insert(x, y);
      m = rebuilt;
    }
    return false;
  };
  if (!dfs(dfs, 0) || data_gap) return std::nullopt;
  return m;
}

}  // namespace detail

/// A standardizer realized by bounded back-and-forth against the canonical
/// presentation. Exact on homogeneous presentations; the identity on the
/// canonical copy since the least consistent candidate of element i, with
/// everything below mapped identically, is i itself.
inline CopyStandardizer backforth_standardizer(const StructureOracle& canonical,
                                               Elem candidate_slack = 4) {
  auto base = std::make_shared<StructureOracle>(canonical);
  return {"backforth:" + canonical.name(),
          [base, candidate_slack](const StructureOracle& copy, Elem m) -> std::optional<Elem> {
            Elem bound = m + 1 + candidate_slack + base->universe_hint().value_or(0);
            auto map = detail::standardize_prefix(copy, *base, m, bound);
            if (!map) return std::nullopt;
            return map->image(m);
          }};
}

/// The functor a group homomorphism induces: every copy goes to one fixed
/// target presentation, and an isomorphism of copies becomes the image under
/// the homomorphism of its standardized automorphism. Restricted to the
/// automorphisms of the canonical copy it is the homomorphism itself.
inline FunctorOperator functor_from_homomorphism(const GroupHomomorphismOperator& H,
                                                 const CopyStandardizer& gamma,
                                                 const StructureOracle& source_base,
                                                 const StructureOracle& fixed_target,
                                                 Elem inverse_search_bound = 64) {
  FunctorOperator G;
  G.name = "hom:" + H.name;
  G.source_sig = source_base.signature();
  G.target_sig = fixed_target.signature();
  G.use_bound = 8000000;
  auto target = std::make_shared<StructureOracle>(fixed_target);
  auto std_ = std::make_shared<CopyStandardizer>(gamma);
  auto hom = std::make_shared<GroupHomomorphismOperator>(H);
  auto src_sig = source_base.signature();

  G.on_structure = [target](DiagramAccess&, int sym, const std::vector<Elem>& args) {
    return target->eval_atomic(sym, args);
  };

  G.on_morphism = [std_, hom, src_sig, inverse_search_bound](MorphismAccess& o, Elem i) -> Elem {
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

    // The standardized automorphism: through the source copy, across the
    // isomorphism, through the target copy's standardizer.
    AutomorphismOracle conj;
    conj.fwd = [&](Elem x) -> std::optional<Elem> {
      std::optional<Elem> m;
      for (Elem cand = 0; cand < inverse_search_bound && !m; ++cand) {
        auto v = std_->value(src_view, cand);
        if (v && *v == x) m = cand;
      }
      if (!m) return std::nullopt;
      return std_->value(tgt_view, o.iso(*m));
    };
    conj.inv = [&](Elem y) -> std::optional<Elem> {
      std::optional<Elem> n;
      for (Elem cand = 0; cand < inverse_search_bound && !n; ++cand) {
        auto v = std_->value(tgt_view, cand);
        if (v && *v == y) n = cand;
      }
      if (!n) return std::nullopt;
      return std_->value(src_view, o.iso_inv(*n));
    };
    auto out = hom->apply(conj, i);
    if (!out) throw oracle_suspended("standardizer exhausted its data");
    return *out;
  };
  return G;
}

/// The mutually inverse homomorphisms an adjoint equivalence induces on the
/// automorphism groups of the canonical presentations, checked pointwise.
struct GroupIsoPair {
  GroupHomomorphismOperator forward;   // from automorphisms of B
  GroupHomomorphismOperator backward;  // from automorphisms of A
  LawReport report;
};

inline GroupIsoPair iso_from_equivalence(const AdjointData& adj, const StructureOracle& B,
                                         const StructureOracle& A,
                                         const std::vector<PartialInjection>& autos_b,
                                         const std::vector<PartialInjection>& autos_a,
                                         Elem index_bound) {
  GroupIsoPair out;
  auto Fop = std::make_shared<FunctorOperator>(adj.F);
  auto Gop = std::make_shared<FunctorOperator>(adj.G);
  auto b_oracle = std::make_shared<StructureOracle>(B);
  auto a_oracle = std::make_shared<StructureOracle>(A);
  auto unit = std::make_shared<NaturalTransformation>(adj.eta);

  out.forward = {"F-restriction",
                 [Fop, b_oracle](const AutomorphismOracle& h, Elem x) -> std::optional<Elem> {
                   MorphismData m{*b_oracle, *b_oracle, h.fwd, h.inv};
                   return apply_morphism(*Fop, m, x);
                 }};

  out.backward = {"conjugated-G",
                  [Gop, a_oracle, b_oracle, unit, index_bound](const AutomorphismOracle& g,
                                                               Elem x) -> std::optional<Elem> {
                    auto eta = unit->at(*b_oracle);
                    auto u = eta(x);
                    if (!u) return std::nullopt;
                    MorphismData m{*a_oracle, *a_oracle, g.fwd, g.inv};
                    auto v = apply_morphism(*Gop, m, *u);
                    if (!v) return std::nullopt;
                    auto eta_inv = unit->inverse_at(*b_oracle, index_bound * 8);
                    return eta_inv(*v);
                  }};

  out.report.subject = "group isomorphism from " + adj.F.name + " -| " + adj.G.name;
  for (const auto& f : autos_b) {
    AutomorphismOracle fo = automorphism_oracle(f);
    for (Elem x = 0; x < index_bound; ++x) {
      ++out.report.checks;
      // backward(forward(f)) must act like f.
      AutomorphismOracle h1{[&](Elem e) { return out.forward.apply(fo, e); },
                            [&](Elem e) -> std::optional<Elem> {
                              for (Elem c = 0; c < index_bound * 8; ++c)
                                if (out.forward.apply(fo, c) == std::optional<Elem>(e)) return c;
                              return std::nullopt;
                            }};
      auto roundtrip = out.backward.apply(h1, x);
      auto direct = f.image(x);
      if (!roundtrip || !direct) {
        out.report.insufficiencies.push_back({"backward-forward", "x=" + std::to_string(x), ""});
        continue;
      }
      if (*roundtrip != *direct)
        out.report.violations.push_back({"backward-forward", "x=" + std::to_string(x),
                                         std::to_string(*roundtrip) + " vs " + std::to_string(*direct)});
    }
  }
  for (const auto& g : autos_a) {
    AutomorphismOracle go = automorphism_oracle(g);
    for (Elem x = 0; x < index_bound; ++x) {
      ++out.report.checks;
      AutomorphismOracle h2{[&](Elem e) { return out.backward.apply(go, e); },
                            [&](Elem e) -> std::optional<Elem> {
                              for (Elem c = 0; c < index_bound * 8; ++c)
                                if (out.backward.apply(go, c) == std::optional<Elem>(e)) return c;
                              return std::nullopt;
                            }};
      auto roundtrip = out.forward.apply(h2, x);
      auto direct = g.image(x);
      if (!roundtrip || !direct) {
        out.report.insufficiencies.push_back({"forward-backward", "x=" + std::to_string(x), ""});
        continue;
      }
      if (*roundtrip != *direct)
        out.report.violations.push_back({"forward-backward", "x=" + std::to_string(x),
                                         std::to_string(*roundtrip) + " vs " + std::to_string(*direct)});
    }
  }
  return out;
}

}  // namespace bstar
