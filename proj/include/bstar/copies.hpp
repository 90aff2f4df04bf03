#pragma once

#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bstar/functor.hpp"
#include "bstar/structure.hpp"

namespace bstar {

/// A copy of a fixed presentation: a finite piece of an injection of the
/// domain into it, plus the pulled-back diagram. Copies built this way are
/// isomorphic to the presentation by construction, so sampled morphisms are
/// genuine isomorphisms.
struct Copy {
  std::shared_ptr<const StructureOracle> base;
  PartialInjection embed;
  std::string label;

  StructureOracle oracle() const { return pullback(*base, embed, label); }

  bool is_canonical_on(Elem bound) const {
    for (Elem e = 0; e < bound; ++e) {
      auto v = embed.image(e);
      if (!v || *v != e) return false;
    }
    return true;
  }
};

/// The canonical copy: identity embedding on an initial segment.
inline Copy canonical_copy(const StructureOracle& base, Elem support) {
  Copy c;
  c.base = std::make_shared<StructureOracle>(base);
  for (Elem e = 0; e < support; ++e) c.embed.insert(e, e);
  c.label = base.name() + "#id";
  return c;
}

inline Copy permuted_copy(const StructureOracle& base, const std::vector<Elem>& perm,
                          std::string label) {
  Copy c;
  c.base = std::make_shared<StructureOracle>(base);
  for (std::size_t i = 0; i < perm.size(); ++i) c.embed.insert(static_cast<Elem>(i), perm[i]);
  c.label = std::move(label);
  return c;
}

/// The canonical isomorphism between two copies over one presentation:
/// through the target's embedding back from the source's.
inline PartialInjection copy_morphism(const Copy& from, const Copy& to) {
  return to.embed.inverse().composed_with(from.embed);
}

inline MorphismData morphism_between(const Copy& from, const Copy& to) {
  return morphism_data(from.oracle(), to.oracle(), copy_morphism(from, to));
}

/// Seeded copies sharing one support: each shuffles an initial segment of
/// the presentation and keeps the rest of the support in place, so sampled
/// morphisms are total below the support and deep diagram scans still land.
/// The first copy is always the canonical one.
inline std::vector<Copy> sample_copies(const StructureOracle& base, int count, Elem support,
                                       std::uint64_t seed, Elem scramble = -1) {
  if (scramble < 0 || scramble > support) scramble = support;
  std::vector<Copy> out;
  out.push_back(canonical_copy(base, support));
  std::mt19937_64 rng(seed);
  for (int k = 1; k < count; ++k) {
    std::vector<Elem> perm(static_cast<std::size_t>(support));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.begin() + scramble, rng);
    out.push_back(permuted_copy(base, perm, base.name() + "#s" + std::to_string(k)));
  }
  return out;
}

/// Seeded finite automorphism approximations: greedy images in shuffled
/// candidate order, kept only when the diagram is preserved and reflected.
/// The identity comes first; dead ends retry with the next shuffle.
inline std::vector<PartialInjection> sample_automorphisms(const StructureOracle& base, int count,
                                                          Elem support, std::uint64_t seed) {
  std::vector<PartialInjection> out;
  PartialInjection id;
  for (Elem e = 0; e < support; ++e) id.insert(e, e);
  out.push_back(id);

  std::mt19937_64 rng(seed);
  Elem pool = support + 4;
  auto consistent = [&base](const PartialInjection& m, Elem a, Elem b) {
    PartialInjection probe = m;
    if (!probe.insert(a, b)) return false;
    std::vector<Elem> dom;
    for (const auto& [x, y] : probe.pairs()) dom.push_back(x);
    for (int sym = 0; sym < base.signature().size(); ++sym) {
      int arity = base.signature().arity(sym);
      std::vector<Elem> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        std::vector<Elem> t, img;
        bool touches = false;
        for (int k = 0; k < arity; ++k) {
          Elem e = dom[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
          if (e == a) touches = true;
          t.push_back(e);
          img.push_back(*probe.image(e));
        }
        if (touches) {
          Truth x = base.query(sym, t);
          Truth y = base.query(sym, img);
          if (is_unknown(x) || is_unknown(y) || x != y) return false;
        }
        int k = arity - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == static_cast<Elem>(dom.size())) {
          idx[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
    return true;
  };

  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < count * 200) {
    ++attempts;
    std::vector<Elem> order(static_cast<std::size_t>(pool));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    PartialInjection m;
    bool ok = true;
    for (Elem e = 0; e < support && ok; ++e) {
      ok = false;
      for (Elem c : order) {
        if (m.hits(c)) continue;
        if (consistent(m, e, c)) {
          m.insert(e, c);
          ok = true;
          break;
        }
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

}  // namespace bstar
