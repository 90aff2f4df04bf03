#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bstar/structure.hpp"
#include "bstar/tuples.hpp"

namespace bstar {

/// A finite injective map required to preserve and reflect every relation of
/// its base structure on its domain.
struct PartialAutomorphism {
  PartialInjection map;
};

namespace detail {

/// Enumerates tuples (with repetition) over `support` of length `arity`,
/// invoking fn on each; fn may stop the walk by returning true.
template <class Fn>
bool for_each_tuple_over(const std::vector<Elem>& support, int arity, std::vector<Elem>& scratch,
                         Fn&& fn) {
  if (static_cast<int>(scratch.size()) == arity) return fn(scratch);
  for (Elem e : support) {
    scratch.push_back(e);
    if (for_each_tuple_over(support, arity, scratch, fn)) {
      scratch.pop_back();
      return true;
    }
    scratch.pop_back();
  }
  return false;
}

}  // namespace detail

/// Checks whether `map` preserves and reflects every relation of `s` on its
/// domain. `unknown` when some needed diagram answer is missing.
inline Truth preserves_and_reflects(const StructureOracle& s, const PartialInjection& map) {
  std::vector<Elem> support;
  for (const auto& [a, b] : map.pairs()) support.push_back(a);
  Truth verdict = Truth::is_true;
  for (int sym = 0; sym < s.signature().size(); ++sym) {
    int arity = s.signature().arity(sym);
    std::vector<Elem> scratch;
    bool stop = detail::for_each_tuple_over(support, arity, scratch, [&](const std::vector<Elem>& t) {
      std::vector<Elem> image;
      image.reserve(t.size());
      for (Elem e : t) image.push_back(*map.image(e));
      Truth a = s.query(sym, t);
      Truth b = s.query(sym, image);
      if (is_unknown(a) || is_unknown(b)) {
        verdict = Truth::unknown;
        return false;
      }
      if (a != b) {
        verdict = Truth::is_false;
        return true;
      }
      return false;
    });
    if (stop) return Truth::is_false;
  }
  return verdict;
}

struct ExtendResult {
  enum class Status { extended, failed, undecided } status;
  PartialAutomorphism map;         // meaningful when extended
  std::optional<Elem> blocking;    // element the search could not place
  std::string detail;
};

namespace detail {

struct Demand {
  Elem element;
  bool in_domain;  // else: in range
};

class BackForthSearch {
 public:
  BackForthSearch(const StructureOracle& s, Elem candidate_bound, long long node_budget)
      : s_(s), bound_(candidate_bound), budget_(node_budget) {}

  bool consistent_with(const PartialInjection& m, Elem a, Elem b) const {
    // Adding a -> b must preserve and reflect all relations on tuples that
    // mention a (the rest were checked when their pairs were added).
    std::vector<Elem> support;
    for (const auto& [x, y] : m.pairs()) support.push_back(x);
    support.push_back(a);
    PartialInjection probe = m;
    if (!probe.insert(a, b)) return false;
    for (int sym = 0; sym < s_.signature().size(); ++sym) {
      int arity = s_.signature().arity(sym);
      std::vector<Elem> scratch;
      bool bad = for_each_tuple_over(support, arity, scratch, [&](const std::vector<Elem>& t) {
        if (std::find(t.begin(), t.end(), a) == t.end()) return false;
        std::vector<Elem> image;
        image.reserve(t.size());
        for (Elem e : t) image.push_back(*probe.image(e));
        Truth x = s_.query(sym, t);
        Truth y = s_.query(sym, image);
        return is_unknown(x) || is_unknown(y) || x != y;
      });
      if (bad) return false;
    }
    return true;
  }

  bool search(PartialInjection& m, const std::vector<Demand>& demands, std::size_t i) {
    if (exhausted_) return false;
    if (i == demands.size()) return true;
    if (--budget_ < 0) {
      exhausted_ = true;
      return false;
    }
    const Demand& d = demands[i];
    if (d.in_domain ? m.defined(d.element) : m.hits(d.element))
      return search(m, demands, i + 1);
    for (Elem c = 0; c < bound_; ++c) {
      Elem a = d.in_domain ? d.element : c;
      Elem b = d.in_domain ? c : d.element;
      if (m.defined(a) || m.hits(b)) continue;
      if (!consistent_with(m, a, b)) continue;
      PartialInjection next = m;
      next.insert(a, b);
      if (search(next, demands, i + 1)) {
        m = next;
        return true;
      }
      if (exhausted_) return false;
    }
    if (i > deepest_) {
      deepest_ = i;
      stuck_ = d.element;
    }
    return false;
  }

  bool exhausted() const { return exhausted_; }
  std::optional<Elem> stuck() const { return stuck_; }

 private:
  const StructureOracle& s_;
  Elem bound_;
  long long budget_;
  bool exhausted_ = false;
  std::size_t deepest_ = 0;
  std::optional<Elem> stuck_;
};

}  // namespace detail

/// Depth-bounded back-and-forth: extends `p` so that each target is in the
/// domain and, for `depth` closure rounds, element r lies in both domain and
/// range. Candidate images are drawn from an initial segment sized by the
/// structure's universe hint and the elements already in play. Failure is
/// pool-relative and names the element the search could not place.
inline ExtendResult extend_partial_automorphism(const StructureOracle& s,
                                                const PartialAutomorphism& p,
                                                std::vector<Elem> targets, int depth) {
  if (is_false(preserves_and_reflects(s, p.map)))
    return {ExtendResult::Status::failed, p, std::nullopt, "input map violates the diagram"};

  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  Elem high = s.universe_hint().value_or(0);
  for (const auto& [a, b] : p.map.pairs()) high = std::max({high, a + 1, b + 1});
  for (Elem t : targets) high = std::max(high, t + 1);
  Elem bound = high + depth;

  std::vector<detail::Demand> demands;
  for (Elem t : targets) demands.push_back({t, true});
  for (Elem r = 0; r < depth; ++r) {
    demands.push_back({r, true});
    demands.push_back({r, false});
  }

  detail::BackForthSearch search(s, bound, 2'000'000);
  PartialInjection m = p.map;
  if (search.search(m, demands, 0)) return {ExtendResult::Status::extended, {m}, std::nullopt, ""};
  if (search.exhausted())
    return {ExtendResult::Status::undecided, p, std::nullopt, "undecided at depth: search budget exhausted"};
  return {ExtendResult::Status::failed, p, search.stuck(),
          "no candidate below " + std::to_string(bound) + " extends"};
}

}  // namespace bstar
