#pragma once

#include <map>
#include <utility>

#include "bstar/functor.hpp"

namespace bstar {

namespace fracdetail {

/// Fixed pairing of the naturals, used to walk pairs of elements of a copy
/// in one canonical order.
inline std::pair<Elem, Elem> unpair(int c) {
  int w = 0;
  while ((w + 1) * (w + 2) / 2 <= c) ++w;
  int t = w * (w + 1) / 2;
  Elem a = static_cast<Elem>(c - t);
  Elem b = static_cast<Elem>(w - (c - t));
  return {a, b};
}

inline int pair_code(Elem a, Elem b) {
  int w = a + b;
  return w * (w + 1) / 2 + a;
}

/// Arithmetic over a relational ring copy, read off its diagram. Searches
/// scan element indices from zero; call-local caches keep rescans cheap.
struct RingView {
  std::function<bool(int, const std::vector<Elem>&)> rel;  // 0: Add graph, 1: Mul graph
  int scan_bound = 4096;
  std::map<std::pair<Elem, Elem>, Elem> mul_cache;
  std::map<std::pair<Elem, Elem>, Elem> add_cache;

  bool is_zero(Elem x) { return rel(0, {x, x, x}); }  // x + x = x only at zero

  Elem mul(Elem x, Elem y) {
    auto it = mul_cache.find({x, y});
    if (it != mul_cache.end()) return it->second;
    for (Elem e = 0; e < scan_bound; ++e)
      if (rel(1, {x, y, e})) {
        mul_cache[{x, y}] = e;
        return e;
      }
    throw oracle_suspended("product not found below scan bound");
  }

  Elem add(Elem x, Elem y) {
    auto it = add_cache.find({x, y});
    if (it != add_cache.end()) return it->second;
    for (Elem e = 0; e < scan_bound; ++e)
      if (rel(0, {x, y, e})) {
        add_cache[{x, y}] = e;
        return e;
      }
    throw oracle_suspended("sum not found below scan bound");
  }

  /// a/b equals c/d, by cross multiplication.
  bool cross_equal(Elem a, Elem b, Elem c, Elem d) { return mul(a, d) == mul(c, b); }

  /// A pair is a canonical fraction when its denominator is nonzero and no
  /// earlier pair with nonzero denominator names the same ratio.
  bool canonical_pair(int code) {
    auto [a, b] = unpair(code);
    if (is_zero(b)) return false;
    for (int c = 0; c < code; ++c) {
      auto [x, y] = unpair(c);
      if (is_zero(y)) continue;
      if (cross_equal(a, b, x, y)) return false;
    }
    return true;
  }

  /// The i-th canonical fraction in pair-code order.
  std::pair<Elem, Elem> decode(Elem i) {
    int seen = 0;
    for (int c = 0; c < scan_bound; ++c) {
      if (!canonical_pair(c)) continue;
      if (seen == i) return unpair(c);
      ++seen;
    }
    throw oracle_suspended("fraction index beyond scan bound");
  }

  /// Canonical index of the ratio u/v.
  Elem encode(Elem u, Elem v) {
    int seen = 0;
    for (int c = 0; c < scan_bound; ++c) {
      if (!canonical_pair(c)) continue;
      auto [x, y] = unpair(c);
      if (cross_equal(x, y, u, v)) return static_cast<Elem>(seen);
      ++seen;
    }
    throw oracle_suspended("ratio not found below scan bound");
  }
};

}  // namespace fracdetail

/// The fraction field of a relational integer-ring copy. Element i of the
/// output names the i-th canonical fraction — the i-th pair of copy elements,
/// in fixed pairing order, that has a nonzero denominator and is the first
/// pair naming its ratio. Everything is computed through the diagram, so the
/// construction transports along isomorphisms of copies.
inline FunctorOperator fraction_field_functor() {
  FunctorOperator F;
  F.name = "fracfield";
  F.source_sig = Signature({{"Add", 3}, {"Mul", 3}});
  F.target_sig = Signature({{"Add", 3}, {"Mul", 3}});
  F.use_bound = 2000000;
  F.on_structure = [](DiagramAccess& d, int sym, const std::vector<Elem>& args) {
    fracdetail::RingView ring{[&d](int s, const std::vector<Elem>& a) { return d.rel(s, a); }};
    auto [a1, b1] = ring.decode(args[0]);
    auto [a2, b2] = ring.decode(args[1]);
    auto [a3, b3] = ring.decode(args[2]);
    if (sym == 0) {
      // a1/b1 + a2/b2 = a3/b3  <=>  (a1 b2 + a2 b1) b3 = a3 b1 b2
      Elem lhs = ring.mul(ring.add(ring.mul(a1, b2), ring.mul(a2, b1)), b3);
      Elem rhs = ring.mul(a3, ring.mul(b1, b2));
      return lhs == rhs;
    }
    // a1/b1 * a2/b2 = a3/b3  <=>  a1 a2 b3 = a3 b1 b2
    Elem lhs = ring.mul(ring.mul(a1, a2), b3);
    Elem rhs = ring.mul(a3, ring.mul(b1, b2));
    return lhs == rhs;
  };
  F.on_morphism = [](MorphismAccess& o, Elem i) {
    fracdetail::RingView src{[&o](int s, const std::vector<Elem>& a) { return o.src(s, a); }};
    auto [a, b] = src.decode(i);
    Elem u = o.iso(a);
    Elem v = o.iso(b);
    fracdetail::RingView tgt{[&o](int s, const std::vector<Elem>& a2) { return o.tgt(s, a2); }};
    return tgt.encode(u, v);
  };
  return F;
}

namespace classdetail {

/// The matched partner of a vertex, by an ascending scan.
template <class RelFn>
Elem partner(RelFn&& edge, Elem v, int scan_bound) {
  for (Elem u = 0; u < scan_bound; ++u)
    if (u != v && edge(v, u)) return u;
  throw oracle_suspended("partner not found below scan bound");
}

}  // namespace classdetail

/// Collapses a matched-pairs copy to the pure set of its pair classes;
/// class c is the c-th pair in order of least vertex. Isomorphisms become
/// the induced permutations of classes.
inline FunctorOperator class_collapse_functor() {
  FunctorOperator F;
  F.name = "classes";
  F.source_sig = Signature({{"Edge", 2}});
  F.target_sig = Signature{};
  F.use_bound = 500000;
  F.on_structure = [](DiagramAccess&, int, const std::vector<Elem>&) -> bool {
    throw std::invalid_argument("the pure set has no relations");
  };
  F.on_morphism = [](MorphismAccess& o, Elem c) {
    const int scan = 4096;
    auto src_edge = [&o](Elem x, Elem y) { return o.src(0, {x, y}); };
    auto tgt_edge = [&o](Elem x, Elem y) { return o.tgt(0, {x, y}); };
    // The c-th leader (least vertex of its pair) in the source copy.
    Elem leader = -1;
    int seen = 0;
    for (Elem v = 0; v < scan; ++v) {
      if (classdetail::partner(src_edge, v, scan) < v) continue;
      if (seen == c) {
        leader = v;
        break;
      }
      ++seen;
    }
    if (leader < 0) throw oracle_suspended("class index beyond scan bound");
    Elem w = o.iso(leader);
    Elem m = std::min(w, classdetail::partner(tgt_edge, w, scan));
    Elem index = 0;
    for (Elem u = 0; u < m; ++u)
      if (classdetail::partner(tgt_edge, u, scan) > u) ++index;
    return index;
  };
  return F;
}

}  // namespace bstar
