#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bstar/signature.hpp"
#include "bstar/truth.hpp"
#include "bstar/tuples.hpp"

namespace bstar {

/// Raised when a query needs data beyond the finite part of an oracle.
/// Distinct from a negative answer.
class insufficient_oracle : public std::runtime_error {
 public:
  explicit insufficient_oracle(const std::string& what) : std::runtime_error(what) {}
};

/// A countable relational structure presented by a decidable atomic diagram.
/// Built-in generators answer every query; structures pulled back along a
/// partial map answer `unknown` outside its domain.
class StructureOracle {
 public:
  using Diagram = std::function<Truth(int sym, std::span<const Elem>)>;

  StructureOracle() = default;

  StructureOracle(std::string name, Signature sig, Diagram diagram, std::optional<Elem> universe_hint)
      : name_(std::move(name)),
        sig_(std::move(sig)),
        diagram_(std::move(diagram)),
        universe_hint_(universe_hint) {}

  const std::string& name() const { return name_; }
  const Signature& signature() const { return sig_; }

  /// Bound below which the shipped suites' bounded searches are exact for
  /// this presentation; pools at least this large certify universal sweeps.
  std::optional<Elem> universe_hint() const { return universe_hint_; }

  /// Total three-valued diagram query. Arity mismatches are rejected.
  Truth query(int sym, std::span<const Elem> tuple) const {
    if (sym < 0 || sym >= sig_.size()) throw std::invalid_argument("unknown relation symbol index");
    if (static_cast<int>(tuple.size()) != sig_.arity(sym))
      throw std::invalid_argument("arity mismatch for relation " + sig_.name(sym));
    for (Elem e : tuple)
      if (e < 0) throw std::invalid_argument("negative element in query");
    return diagram_(sym, tuple);
  }

  Truth query(int sym, const std::vector<Elem>& tuple) const {
    return query(sym, std::span<const Elem>(tuple.data(), tuple.size()));
  }

  /// Boolean diagram query; signals instead of guessing when the oracle has
  /// no answer recorded.
  bool eval_atomic(int sym, const std::vector<Elem>& tuple) const {
    Truth t = query(sym, tuple);
    if (is_unknown(t))
      throw insufficient_oracle(name_ + ": no recorded answer for " + sig_.name(sym));
    return is_true(t);
  }

  StructureOracle with_hint(Elem hint) const {
    StructureOracle s = *this;
    s.universe_hint_ = hint;
    return s;
  }

  StructureOracle renamed(std::string name) const {
    StructureOracle s = *this;
    s.name_ = std::move(name);
    return s;
  }

 private:
  std::string name_;
  Signature sig_;
  Diagram diagram_;
  std::optional<Elem> universe_hint_;
};

/// Reads the relations of `s` through `g`: the result satisfies R(a...) just
/// when `s` satisfies R(g(a)...). Queries touching a point where `g` is
/// undefined come back `unknown`.
inline StructureOracle pullback(const StructureOracle& s, const PartialInjection& g,
                                std::string name = "") {
  auto base = std::make_shared<StructureOracle>(s);
  auto map = std::make_shared<PartialInjection>(g);
  if (name.empty()) name = s.name() + "_pulled";
  return StructureOracle(
      std::move(name), s.signature(),
      [base, map](int sym, std::span<const Elem> tuple) -> Truth {
        std::vector<Elem> mapped;
        mapped.reserve(tuple.size());
        for (Elem a : tuple) {
          auto v = map->image(a);
          if (!v) return Truth::unknown;
          mapped.push_back(*v);
        }
        return base->query(sym, mapped);
      },
      std::nullopt);
}

/// Pullback along a total computable injection given as a program.
inline StructureOracle pullback(const StructureOracle& s, std::function<Elem(Elem)> g,
                                std::string name = "") {
  auto base = std::make_shared<StructureOracle>(s);
  if (name.empty()) name = s.name() + "_pulled";
  return StructureOracle(
      std::move(name), s.signature(),
      [base, g = std::move(g)](int sym, std::span<const Elem> tuple) -> Truth {
        std::vector<Elem> mapped;
        mapped.reserve(tuple.size());
        for (Elem a : tuple) mapped.push_back(g(a));
        return base->query(sym, mapped);
      },
      std::nullopt);
}

// ---------------------------------------------------------------------------
// Built-in presentations. Each fixes one concrete enumeration of a familiar
// countable structure on the natural numbers.
// ---------------------------------------------------------------------------

/// The structure with no relations at all.
inline StructureOracle make_pure_set() {
  return StructureOracle(
      "pureset", Signature{},
      [](int, std::span<const Elem>) -> Truth {
        throw std::invalid_argument("pure set has no relations to query");
      },
      4);
}

namespace detail {

struct Rational {
  long long num = 0;
  long long den = 1;
};

/// Positive rationals in Calkin-Wilf order, cw(1) = 1/1; the k-th value is
/// reached by walking the tree along the binary digits of k.
inline Rational calkin_wilf(int k) {
  if (k < 1) throw std::invalid_argument("calkin_wilf index must be >= 1");
  int bits = 0;
  for (int t = k; t > 1; t >>= 1) ++bits;
  long long a = 1, b = 1;
  for (int i = bits - 1; i >= 0; --i) {
    if ((k >> i) & 1)
      a += b;  // right child: (a+b)/b
    else
      b += a;  // left child: a/(a+b)
  }
  return {a, b};
}

/// Fixed enumeration of all rationals: 0, cw(1), -cw(1), cw(2), -cw(2), ...
inline Rational rational_at(int i) {
  if (i == 0) return {0, 1};
  int k = (i + 1) / 2;
  Rational r = calkin_wilf(k);
  if (i % 2 == 0) r.num = -r.num;
  return r;
}

inline bool rational_less(const Rational& x, const Rational& y) {
  return x.num * y.den < y.num * x.den;
}

/// Fixed enumeration of the integers: 0, 1, -1, 2, -2, ...
inline long long integer_at(int i) {
  if (i == 0) return 0;
  if (i % 2 == 1) return (i + 1) / 2;
  return -(i / 2);
}

inline std::optional<int> integer_index(long long z) {
  if (z == 0) return 0;
  if (z > 0) {
    if (z > 1000000) return std::nullopt;
    return static_cast<int>(2 * z - 1);
  }
  if (z < -1000000) return std::nullopt;
  return static_cast<int>(-2 * z);
}

}  // namespace detail

/// Dense linear order without endpoints, carried by a fixed enumeration of
/// the rationals.
inline StructureOracle make_dense_order() {
  Signature sig(std::vector<RelationSymbol>{{"Lt", 2}});
  return StructureOracle(
      "dlo", sig,
      [](int, std::span<const Elem> t) -> Truth {
        return truth_of(detail::rational_less(detail::rational_at(t[0]), detail::rational_at(t[1])));
      },
      // Nested order cuts appear slowly along the fixed enumeration, so the
      // pool certifying bounded searches is comparatively deep.
      96);
}

/// The natural numbers with their usual order (rigid; used as the negative
/// gate for indiscernibility).
inline StructureOracle make_omega_order() {
  Signature sig(std::vector<RelationSymbol>{{"Lt", 2}});
  return StructureOracle(
      "omega", sig, [](int, std::span<const Elem> t) -> Truth { return truth_of(t[0] < t[1]); },
      8);
}

/// The ring of integers presented relationally: Add and Mul are the graphs
/// of + and * read through the fixed enumeration 0, 1, -1, 2, -2, ...
inline StructureOracle make_integer_ring() {
  Signature sig(std::vector<RelationSymbol>{{"Add", 3}, {"Mul", 3}});
  return StructureOracle(
      "zring", sig,
      [](int sym, std::span<const Elem> t) -> Truth {
        long long a = detail::integer_at(t[0]);
        long long b = detail::integer_at(t[1]);
        long long c = detail::integer_at(t[2]);
        return truth_of(sym == 0 ? a + b == c : a * b == c);
      },
      16);
}

namespace detail {

/// The fixed enumeration of the rationals used by the rational ring: walk
/// pairs of integer indices in pairing order, keep the first pair naming
/// each ratio with a nonzero denominator.
inline std::pair<long long, long long> rational_ring_at(int i) {
  int seen = 0;
  for (int code = 0;; ++code) {
    int w = 0;
    while ((w + 1) * (w + 2) / 2 <= code) ++w;
    int a_idx = code - w * (w + 1) / 2;
    int b_idx = w - a_idx;
    long long a = integer_at(a_idx);
    long long b = integer_at(b_idx);
    if (b == 0) continue;
    bool duplicate = false;
    for (int c = 0; c < code && !duplicate; ++c) {
      int w2 = 0;
      while ((w2 + 1) * (w2 + 2) / 2 <= c) ++w2;
      int x_idx = c - w2 * (w2 + 1) / 2;
      long long x = integer_at(x_idx);
      long long y = integer_at(w2 - x_idx);
      if (y != 0 && a * y == x * b) duplicate = true;
    }
    if (duplicate) continue;
    if (seen == i) return {a, b};
    ++seen;
  }
}

}  // namespace detail

/// The field of rationals presented relationally, with the enumeration that
/// lists each ratio at its first appearance in pairing order.
inline StructureOracle make_rational_ring() {
  Signature sig(std::vector<RelationSymbol>{{"Add", 3}, {"Mul", 3}});
  return StructureOracle(
      "qring", sig,
      [](int sym, std::span<const Elem> t) -> Truth {
        auto [a1, b1] = detail::rational_ring_at(t[0]);
        auto [a2, b2] = detail::rational_ring_at(t[1]);
        auto [a3, b3] = detail::rational_ring_at(t[2]);
        if (sym == 0) return truth_of((a1 * b2 + a2 * b1) * b3 == a3 * b1 * b2);
        return truth_of(a1 * a2 * b3 == a3 * b1 * b2);
      },
      16);
}

/// Infinitely many disjoint edges: 2k is matched with 2k+1.
inline StructureOracle make_matched_pairs() {
  Signature sig(std::vector<RelationSymbol>{{"Edge", 2}});
  return StructureOracle(
      "pairs", sig,
      [](int, std::span<const Elem> t) -> Truth {
        return truth_of(t[0] != t[1] && t[0] / 2 == t[1] / 2);
      },
      10);
}

/// Two relational sorts: even elements are classes, odd elements are points,
/// and point 2v+1 belongs to class 2*(v/2). Mirrors the matched-pairs graph
/// with its pair classes made explicit.
inline StructureOracle make_class_points() {
  Signature sig(std::vector<RelationSymbol>{{"Cls", 1}, {"Pt", 1}, {"In", 2}});
  return StructureOracle(
      "classpoints", sig,
      [](int sym, std::span<const Elem> t) -> Truth {
        switch (sym) {
          case 0: return truth_of(t[0] % 2 == 0);
          case 1: return truth_of(t[0] % 2 == 1);
          default: {
            if (t[0] % 2 != 1 || t[1] % 2 != 0) return Truth::is_false;
            Elem v = (t[0] - 1) / 2;
            return truth_of(v / 2 == t[1] / 2);
          }
        }
      },
      12);
}

/// Finite table over an explicit fact list. Queries beyond `size` are false.
inline StructureOracle make_finite_table(std::string name, Signature sig,
                                         std::vector<std::pair<int, std::vector<Elem>>> facts,
                                         Elem size) {
  for (const auto& [sym, tuple] : facts)
    if (static_cast<int>(tuple.size()) != sig.arity(sym))
      throw std::invalid_argument("fact arity mismatch in table " + name);
  auto table = std::make_shared<std::vector<std::pair<int, std::vector<Elem>>>>(std::move(facts));
  return StructureOracle(
      std::move(name), sig,
      [table](int sym, std::span<const Elem> tuple) -> Truth {
        for (const auto& [s, t] : *table) {
          if (s != sym || t.size() != tuple.size()) continue;
          if (std::equal(t.begin(), t.end(), tuple.begin())) return Truth::is_true;
        }
        return Truth::is_false;
      },
      size);
}

}  // namespace bstar
