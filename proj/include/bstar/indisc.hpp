#pragma once

#include <random>

#include "bstar/backforth.hpp"
#include "bstar/interp.hpp"
#include "bstar/laws.hpp"

namespace bstar {

/// Definable equivalence classes of tuples offered as absolutely
/// indiscernible: a tuple arity, the defining relations, the optional class
/// order, and the classes enumerated at the extraction bounds.
struct IndiscernibleWitness {
  int arity = 1;
  DefinableRelation on_tuples;   // the tuple domain at this arity
  DefinableRelation equivalence;
  std::optional<DefinableRelation> order;
  std::vector<std::vector<Elem>> class_reps;
  std::vector<std::vector<std::vector<Elem>>> class_members;
  int class_count_bound = 0;

  int class_count() const { return static_cast<int>(class_reps.size()); }
};

/// From an interpretation of the relationless structure: the domain becomes
/// the tuple set, its equivalence the class relation, localized to the least
/// arity carrying at least `threshold` classes within bounds.
inline std::optional<IndiscernibleWitness> extract_indiscernibles(const Interpretation& I,
                                                                  const StructureOracle& A,
                                                                  const EvalBounds& b,
                                                                  int threshold,
                                                                  std::string* error = nullptr) {
  if (!I.target_sig.empty()) {
    if (error) *error = "the interpretation's target must be the relationless structure";
    return std::nullopt;
  }
  InterpFragment frag = interpret_domain(I, A, b);
  for (int n = 1; n <= b.max_len; ++n) {
    // Classes meeting the arity-n slice of the domain.
    std::vector<std::vector<Elem>> reps;
    std::vector<std::vector<std::vector<Elem>>> members;
    std::vector<int> class_ids;
    for (std::size_t mi = 0; mi < frag.members.size(); ++mi) {
      if (static_cast<int>(frag.members[mi].size()) != n) continue;
      int cls = frag.member_class[mi];
      auto it = std::find(class_ids.begin(), class_ids.end(), cls);
      if (it == class_ids.end()) {
        class_ids.push_back(cls);
        reps.push_back(frag.members[mi]);
        members.push_back({frag.members[mi]});
      } else {
        members[static_cast<std::size_t>(it - class_ids.begin())].push_back(frag.members[mi]);
      }
    }
    if (static_cast<int>(reps.size()) >= threshold) {
      IndiscernibleWitness w;
      w.arity = n;
      w.on_tuples = I.dom;
      w.equivalence = I.sim;
      w.class_reps = std::move(reps);
      w.class_members = std::move(members);
      w.class_count_bound = w.class_count();
      return w;
    }
  }
  if (error) *error = "threshold not reached at bounds";
  return std::nullopt;
}

struct IndiscernibilityConfig {
  int depth = 6;
  int max_permutations = 120;
  bool order_preserving_only = false;
  std::uint64_t seed = 1;
};

namespace indiscdetail {

template <class Fn>
void for_each_permutation(int n, int cap, std::uint64_t seed, Fn&& fn) {
  long long total = 1;
  for (int i = 2; i <= n; ++i) total *= i;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  if (total <= cap) {
    do {
      fn(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return;
  }
  std::mt19937_64 rng(seed);
  fn(perm);  // identity always included
  for (int k = 1; k < cap; ++k) {
    std::shuffle(perm.begin(), perm.end(), rng);
    fn(perm);
  }
}

/// Order-preserving partial moves: each maps one subset of classes onto
/// another, order-isomorphically with respect to the given class ranking.
/// Entries are -1 off the subset.
template <class Fn>
void for_each_order_move(const std::vector<int>& ranked, int span, int cap, std::uint64_t seed,
                         Fn&& fn) {
  int n = static_cast<int>(ranked.size());
  std::mt19937_64 rng(seed);
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  fn(id);
  for (int k = 1; k < cap; ++k) {
    std::vector<int> from, to;  // positions in the ranking, ascending
    for (int c = 0; c < n; ++c) {
      if (static_cast<int>(rng() % 2)) from.push_back(c);
      if (static_cast<int>(rng() % 2)) to.push_back(c);
    }
    std::size_t m = std::min({from.size(), to.size(), static_cast<std::size_t>(span)});
    std::vector<int> move(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < m; ++i)
      move[static_cast<std::size_t>(ranked[static_cast<std::size_t>(from[i])])] =
          ranked[static_cast<std::size_t>(to[i])];
    fn(move);
  }
}

}  // namespace indiscdetail

/// Tries to extend every sampled permutation of the enumerated classes to a
/// partial automorphism of the structure moving class members accordingly,
/// by backtracking over member matchings and closing under back-and-forth.
/// A permutation that no matching extends is reported with its witness.
inline LawReport check_absolute_indiscernibility(const StructureOracle& A,
                                                 const IndiscernibleWitness& w,
                                                 const IndiscernibilityConfig& cfg) {
  LawReport report;
  report.subject = "absolute indiscernibility over " + A.name();
  int n = w.class_count();

  auto try_permutation = [&](const std::vector<int>& perm) -> bool {
    // Depth-first over the choice of image member for each moved class.
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    auto assemble = [&](PartialInjection& m) -> bool {
      m = PartialInjection{};
      for (int c = 0; c < n; ++c) {
        if (perm[static_cast<std::size_t>(c)] < 0) continue;  // off-subset in order moves
        const auto& source = w.class_reps[static_cast<std::size_t>(c)];
        const auto& images =
            w.class_members[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])];
        const auto& image = images[choice[static_cast<std::size_t>(c)] % images.size()];
        for (std::size_t j = 0; j < source.size(); ++j)
          if (!m.insert(source[j], image[j])) return false;
      }
      return true;
    };
    // Iterate member choices in mixed-radix order.
    for (;;) {
      PartialInjection m;
      if (assemble(m) && is_true(preserves_and_reflects(A, m))) {
        auto r = extend_partial_automorphism(A, {m}, {}, cfg.depth);
        if (r.status == ExtendResult::Status::extended) return true;
      }
      int c = n - 1;
      while (c >= 0) {
        std::size_t width =
            perm[static_cast<std::size_t>(c)] < 0
                ? 1
                : w.class_members[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])].size();
        if (++choice[static_cast<std::size_t>(c)] < width) break;
        choice[static_cast<std::size_t>(c)] = 0;
        --c;
      }
      if (c < 0) return false;
    }
  };

  auto run_one = [&](const std::vector<int>& perm) {
    ++report.checks;
    if (!try_permutation(perm)) {
      std::string p = "(";
      for (std::size_t i = 0; i < perm.size(); ++i)
        p += (i ? " " : "") + std::to_string(perm[i]);
      report.violations.push_back({"extension", p + ")", "no member matching extends"});
    }
  };

  if (cfg.order_preserving_only) {
    // Rank the classes by the witness's order relation on representatives.
    std::vector<int> ranked(static_cast<std::size_t>(n));
    std::iota(ranked.begin(), ranked.end(), 0);
    if (w.order) {
      EvalBounds eb;
      std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
        return is_true((*w.order)(A, {w.class_reps[static_cast<std::size_t>(a)],
                                      w.class_reps[static_cast<std::size_t>(b)]},
                                  eb));
      });
    }
    indiscdetail::for_each_order_move(ranked, 4, cfg.max_permutations, cfg.seed, run_one);
  } else {
    indiscdetail::for_each_permutation(n, cfg.max_permutations, cfg.seed, run_one);
  }
  return report;
}

}  // namespace bstar
