#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bstar/signature.hpp"

namespace bstar {

/// Rank and side of a formula in the finite-rank slice of the hierarchy of
/// infinitary formulas.
struct ComplexityTag {
  enum class Side { Sigma, Pi, Delta };
  int rank = 0;
  Side side = Side::Delta;

  bool operator==(const ComplexityTag&) const = default;

  std::string to_string() const {
    const char* s = side == Side::Sigma ? "Sigma" : side == Side::Pi ? "Pi" : "Delta";
    return std::string(s) + "_" + std::to_string(rank);
  }
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// A total deterministic program enumerating the members of a countable
/// conjunction or disjunction. Families used by the bounded engines should
/// be rank-uniform; `size` marks families that are actually finite.
struct FormulaGenerator {
  std::function<FormulaPtr(int)> at;
  std::optional<int> size;
  std::string label;
  std::pair<int, int> member_ranks{0, 0};  // (sigma, pi) over the family
  bool members_restricted = true;          // no raw-value atoms anywhere below
  std::uint32_t mentions_mask = 0;         // bit i-1 set when some member mentions ġ_i
  std::uint64_t id = next_id();
  std::shared_ptr<const FormulaGenerator> negation_of;  // set on negation wrappers

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }
};

/// A sentence of the forcing language: composition atoms ġᵢ⁻¹∘ġⱼ(m) = n,
/// pulled-back relation atoms, raw value atoms ġᵢ(m) = n, their negations,
/// and finite or countable conjunctions and disjunctions. The restricted
/// sublanguage excludes the raw value atoms. Formulas are immutable.
class Formula {
 public:
  enum class Kind { CompAtom, RelAtom, ValAtom, FinAnd, FinOr, CountAnd, CountOr };

  // --- constructors ---------------------------------------------------------

  /// ġ_outer⁻¹ ∘ ġ_inner (arg) = value, or its negation.
  static FormulaPtr comp(int ell, int outer, int inner, Elem arg, Elem value, bool positive) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = Kind::CompAtom;
    f->ell_ = ell;
    f->check_index(outer);
    f->check_index(inner);
    f->outer_ = outer;
    f->inner_ = inner;
    f->arg_ = arg;
    f->value_ = value;
    f->positive_ = positive;
    f->mentions_ = (1u << (outer - 1)) | (1u << (inner - 1));
    return f;
  }

  /// R holds (or fails) in the structure pulled back along ġ_copy.
  static FormulaPtr rel(int ell, int copy, int symbol, std::vector<Elem> args, bool positive) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = Kind::RelAtom;
    f->ell_ = ell;
    f->check_index(copy);
    f->copy_ = copy;
    f->symbol_ = symbol;
    f->args_ = std::move(args);
    f->positive_ = positive;
    f->mentions_ = 1u << (copy - 1);
    return f;
  }

  /// ġ_copy(arg) = value, or its negation. Not part of the restricted language.
  static FormulaPtr val(int ell, int copy, Elem arg, Elem value, bool positive) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = Kind::ValAtom;
    f->ell_ = ell;
    f->check_index(copy);
    f->copy_ = copy;
    f->arg_ = arg;
    f->value_ = value;
    f->positive_ = positive;
    f->restricted_ = false;
    f->mentions_ = 1u << (copy - 1);
    return f;
  }

  static FormulaPtr fin_and(int ell, std::vector<FormulaPtr> parts) {
    return junction(Kind::FinAnd, ell, std::move(parts));
  }

  static FormulaPtr fin_or(int ell, std::vector<FormulaPtr> parts) {
    return junction(Kind::FinOr, ell, std::move(parts));
  }

  /// Never forced, and its negation is forced everywhere.
  static FormulaPtr falsum(int ell) { return fin_or(ell, {}); }
  static FormulaPtr verum(int ell) { return fin_and(ell, {}); }

  static FormulaPtr count_and(int ell, FormulaGenerator gen) {
    return countable(Kind::CountAnd, ell, std::move(gen));
  }

  static FormulaPtr count_or(int ell, FormulaGenerator gen) {
    return countable(Kind::CountOr, ell, std::move(gen));
  }

  // --- observers ------------------------------------------------------------

  Kind kind() const { return kind_; }
  int generic_count() const { return ell_; }
  bool positive() const { return positive_; }
  bool restricted() const { return restricted_; }
  std::uint32_t mentions_mask() const { return mentions_; }
  bool mentions(int i) const { return (mentions_ & (1u << (i - 1))) != 0; }

  int outer() const { return outer_; }
  int inner() const { return inner_; }
  int copy() const { return copy_; }
  int symbol() const { return symbol_; }
  Elem arg() const { return arg_; }
  Elem value() const { return value_; }
  const std::vector<Elem>& args() const { return args_; }
  const std::vector<FormulaPtr>& parts() const { return parts_; }
  const FormulaGenerator& generator() const { return *gen_; }

  bool is_atom() const {
    return kind_ == Kind::CompAtom || kind_ == Kind::RelAtom || kind_ == Kind::ValAtom;
  }

  bool is_countable() const { return kind_ == Kind::CountAnd || kind_ == Kind::CountOr; }

  std::pair<int, int> ranks() const { return {sigma_, pi_}; }

  struct Private {};  // make_shared needs a public constructor
  explicit Formula(Private) {}

 private:
  static FormulaPtr junction(Kind k, int ell, std::vector<FormulaPtr> parts) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = k;
    f->ell_ = ell;
    f->parts_ = std::move(parts);
    for (const auto& c : f->parts_) {
      if (c->ell_ != ell) throw std::invalid_argument("mixed generic counts in junction");
      f->restricted_ = f->restricted_ && c->restricted_;
      f->mentions_ |= c->mentions_;
      f->sigma_ = std::max(f->sigma_, c->sigma_);
      f->pi_ = std::max(f->pi_, c->pi_);
    }
    return f;
  }

  static FormulaPtr countable(Kind k, int ell, FormulaGenerator gen) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = k;
    f->ell_ = ell;
    f->restricted_ = gen.members_restricted;
    f->mentions_ = gen.mentions_mask;
    auto [cs, cp] = gen.member_ranks;
    if (k == Kind::CountOr) {
      f->sigma_ = std::max(1, std::min(std::max(cs, 1), cp + 1));
      f->pi_ = f->sigma_ + 1;
    } else {
      f->pi_ = std::max(1, std::min(std::max(cp, 1), cs + 1));
      f->sigma_ = f->pi_ + 1;
    }
    f->gen_ = std::make_shared<FormulaGenerator>(std::move(gen));
    return f;
  }

  void check_index(int i) const {
    if (i < 1 || i > ell_) throw std::invalid_argument("generic index out of range");
  }

  Kind kind_ = Kind::FinAnd;
  int ell_ = 1;
  bool positive_ = true;
  bool restricted_ = true;
  std::uint32_t mentions_ = 0;
  int sigma_ = 0, pi_ = 0;

  int outer_ = 0, inner_ = 0;   // CompAtom
  int copy_ = 0, symbol_ = 0;   // RelAtom / ValAtom
  Elem arg_ = 0, value_ = 0;
  std::vector<Elem> args_;

  std::vector<FormulaPtr> parts_;
  std::shared_ptr<const FormulaGenerator> gen_;
};

/// Formal negation: polarity flips on atoms, every connective dualizes.
/// An involution up to structural equality.
inline FormulaPtr formal_negation(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::CompAtom:
      return Formula::comp(f->generic_count(), f->outer(), f->inner(), f->arg(), f->value(),
                           !f->positive());
    case Formula::Kind::RelAtom:
      return Formula::rel(f->generic_count(), f->copy(), f->symbol(), f->args(), !f->positive());
    case Formula::Kind::ValAtom:
      return Formula::val(f->generic_count(), f->copy(), f->arg(), f->value(), !f->positive());
    case Formula::Kind::FinAnd:
    case Formula::Kind::FinOr: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->parts().size());
      for (const auto& c : f->parts()) parts.push_back(formal_negation(c));
      return f->kind() == Formula::Kind::FinAnd ? Formula::fin_or(f->generic_count(), std::move(parts))
                                                : Formula::fin_and(f->generic_count(), std::move(parts));
    }
    case Formula::Kind::CountAnd:
    case Formula::Kind::CountOr: {
      const FormulaGenerator& g = f->generator();
      FormulaGenerator ng;
      if (g.negation_of) {
        ng = *g.negation_of;  // unwrap: negating a negation restores the original
      } else {
        auto inner = std::make_shared<FormulaGenerator>(g);
        ng.at = [inner](int n) { return formal_negation(inner->at(n)); };
        ng.size = g.size;
        ng.label = "neg " + g.label;
        ng.member_ranks = {g.member_ranks.second, g.member_ranks.first};
        ng.members_restricted = g.members_restricted;
        ng.mentions_mask = g.mentions_mask;
        ng.negation_of = inner;
      }
      return f->kind() == Formula::Kind::CountAnd
                 ? Formula::count_or(f->generic_count(), std::move(ng))
                 : Formula::count_and(f->generic_count(), std::move(ng));
    }
  }
  throw std::logic_error("unreachable");
}

/// Structural equality; countable junctions compare by generator identity.
inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind() != b->kind() || a->generic_count() != b->generic_count()) return false;
  switch (a->kind()) {
    case Formula::Kind::CompAtom:
      return a->outer() == b->outer() && a->inner() == b->inner() && a->arg() == b->arg() &&
             a->value() == b->value() && a->positive() == b->positive();
    case Formula::Kind::RelAtom:
      return a->copy() == b->copy() && a->symbol() == b->symbol() && a->args() == b->args() &&
             a->positive() == b->positive();
    case Formula::Kind::ValAtom:
      return a->copy() == b->copy() && a->arg() == b->arg() && a->value() == b->value() &&
             a->positive() == b->positive();
    case Formula::Kind::FinAnd:
    case Formula::Kind::FinOr: {
      if (a->parts().size() != b->parts().size()) return false;
      for (std::size_t i = 0; i < a->parts().size(); ++i)
        if (!formula_equal(a->parts()[i], b->parts()[i])) return false;
      return true;
    }
    case Formula::Kind::CountAnd:
    case Formula::Kind::CountOr:
      return a->generator().id == b->generator().id;
  }
  return false;
}

/// Rank and side per the counting convention: finitary formulas sit at rank
/// 0 (Delta); countable connectives push the rank of the opposite side up.
inline ComplexityTag classify(const FormulaPtr& f) {
  auto [s, p] = f->ranks();
  if (s == 0 && p == 0) return {0, ComplexityTag::Side::Delta};
  int rank = std::min(s, p);
  if (s < p) return {rank, ComplexityTag::Side::Sigma};
  if (p < s) return {rank, ComplexityTag::Side::Pi};
  return {rank, ComplexityTag::Side::Delta};
}

/// Rebuilds `f` for a condition with coordinate `drop` removed; the formula
/// must not mention ġ_drop. Indices above `drop` shift down.
inline FormulaPtr reindex_without(const FormulaPtr& f, int drop) {
  if (f->mentions(drop)) throw std::invalid_argument("formula mentions the dropped coordinate");
  int ell = f->generic_count() - 1;
  auto shift = [drop](int i) { return i > drop ? i - 1 : i; };
  switch (f->kind()) {
    case Formula::Kind::CompAtom:
      return Formula::comp(ell, shift(f->outer()), shift(f->inner()), f->arg(), f->value(),
                           f->positive());
    case Formula::Kind::RelAtom:
      return Formula::rel(ell, shift(f->copy()), f->symbol(), f->args(), f->positive());
    case Formula::Kind::ValAtom:
      return Formula::val(ell, shift(f->copy()), f->arg(), f->value(), f->positive());
    case Formula::Kind::FinAnd:
    case Formula::Kind::FinOr: {
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->parts()) parts.push_back(reindex_without(c, drop));
      return f->kind() == Formula::Kind::FinAnd ? Formula::fin_and(ell, std::move(parts))
                                                : Formula::fin_or(ell, std::move(parts));
    }
    case Formula::Kind::CountAnd:
    case Formula::Kind::CountOr: {
      const FormulaGenerator& g = f->generator();
      FormulaGenerator ng;
      auto inner = std::make_shared<FormulaGenerator>(g);
      ng.at = [inner, drop](int n) { return reindex_without(inner->at(n), drop); };
      ng.size = g.size;
      ng.label = g.label;
      ng.member_ranks = g.member_ranks;
      ng.members_restricted = g.members_restricted;
      std::uint32_t mask = 0;
      for (int i = 1; i <= 32; ++i)
        if (i != drop && (g.mentions_mask & (1u << (i - 1))))
          mask |= 1u << ((i > drop ? i - 1 : i) - 1);
      ng.mentions_mask = mask;
      return f->kind() == Formula::Kind::CountAnd ? Formula::count_and(ell, std::move(ng))
                                                  : Formula::count_or(ell, std::move(ng));
    }
  }
  throw std::logic_error("unreachable");
}

/// Prefix rendering matching the formula DSL.
inline std::string to_string(const FormulaPtr& f, const Signature* sig = nullptr) {
  auto sym_name = [&](int s) {
    return sig && s < sig->size() ? sig->name(s) : "R" + std::to_string(s);
  };
  switch (f->kind()) {
    case Formula::Kind::CompAtom:
      return "(comp " + std::to_string(f->outer()) + " " + std::to_string(f->inner()) + " " +
             std::to_string(f->arg()) + " " + std::to_string(f->value()) +
             (f->positive() ? " =)" : " !=)");
    case Formula::Kind::RelAtom: {
      std::string s = f->positive() ? "(rel " : "(nrel ";
      s += std::to_string(f->copy()) + " " + sym_name(f->symbol());
      for (Elem a : f->args()) s += " " + std::to_string(a);
      return s + ")";
    }
    case Formula::Kind::ValAtom:
      return "(val " + std::to_string(f->copy()) + " " + std::to_string(f->arg()) + " " +
             std::to_string(f->value()) + (f->positive() ? " =)" : " !=)");
    case Formula::Kind::FinAnd:
    case Formula::Kind::FinOr: {
      std::string s = f->kind() == Formula::Kind::FinAnd ? "(and" : "(or";
      for (const auto& c : f->parts()) s += " " + to_string(c, sig);
      return s + ")";
    }
    case Formula::Kind::CountAnd:
      return "(and* " + f->generator().label + ")";
    case Formula::Kind::CountOr:
      return "(or* " + f->generator().label + ")";
  }
  return "?";
}

/// Generator over a rank-uniform template; ranks and flags are read off the
/// first instance.
inline FormulaGenerator make_generator(std::function<FormulaPtr(int)> at, std::optional<int> size,
                                       std::string label) {
  FormulaGenerator g;
  g.at = std::move(at);
  g.size = size;
  g.label = std::move(label);
  FormulaPtr probe = g.at(0);
  g.member_ranks = probe->ranks();
  g.members_restricted = probe->restricted();
  g.mentions_mask = probe->mentions_mask();
  return g;
}

}  // namespace bstar
