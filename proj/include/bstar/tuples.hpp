#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bstar/signature.hpp"

namespace bstar {

/// A finite one-to-one tuple over the domain. These are the conditions of
/// the basic forcing poset: extension of tuples is end-extension.
class InjectiveTuple {
 public:
  InjectiveTuple() = default;

  explicit InjectiveTuple(std::vector<Elem> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (entries_[i] == entries_[j])
          throw std::invalid_argument("tuple entries must be distinct");
  }

  InjectiveTuple(std::initializer_list<Elem> entries) : InjectiveTuple(std::vector<Elem>(entries)) {}

  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Elem>& entries() const { return entries_; }

  /// Value at a position, or nothing when the tuple is shorter.
  std::optional<Elem> at(int pos) const {
    if (pos < 0 || pos >= size()) return std::nullopt;
    return entries_[static_cast<std::size_t>(pos)];
  }

  /// Position carrying a value, or nothing when the value does not occur.
  std::optional<int> position_of(Elem value) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i] == value) return static_cast<int>(i);
    return std::nullopt;
  }

  bool contains(Elem value) const { return position_of(value).has_value(); }

  bool is_prefix_of(const InjectiveTuple& other) const {
    if (size() > other.size()) return false;
    return std::equal(entries_.begin(), entries_.end(), other.entries_.begin());
  }

  InjectiveTuple extended(Elem value) const {
    if (contains(value)) throw std::invalid_argument("extension would repeat an entry");
    std::vector<Elem> e = entries_;
    e.push_back(value);
    InjectiveTuple t;
    t.entries_ = std::move(e);
    return t;
  }

  InjectiveTuple prefix(int len) const {
    if (len < 0 || len > size()) throw std::out_of_range("prefix length");
    InjectiveTuple t;
    t.entries_.assign(entries_.begin(), entries_.begin() + len);
    return t;
  }

  Elem max_entry_or(Elem fallback) const {
    if (entries_.empty()) return fallback;
    return *std::max_element(entries_.begin(), entries_.end());
  }

  bool operator==(const InjectiveTuple& o) const { return entries_ == o.entries_; }
  bool operator<(const InjectiveTuple& o) const {
    if (entries_.size() != o.entries_.size()) return entries_.size() < o.entries_.size();
    return entries_ < o.entries_;  // length first, then lexicographic
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(entries_[i]);
    }
    s += ")";
    return s;
  }

 private:
  std::vector<Elem> entries_;
};

/// A finite injective partial map on the domain; the working approximation
/// of an enumeration of a structure. Both directions are kept so inverse
/// lookups stay cheap.
class PartialInjection {
 public:
  PartialInjection() = default;

  static PartialInjection from_tuple(const InjectiveTuple& t) {
    PartialInjection g;
    for (int m = 0; m < t.size(); ++m) g.insert(m, *t.at(m));
    return g;
  }

  /// Adds a pair; rejects anything that would break functionality or
  /// injectivity. Re-inserting an existing pair is fine.
  bool insert(Elem a, Elem b) {
    auto f = fwd_.find(a);
    if (f != fwd_.end()) return f->second == b;
    auto r = inv_.find(b);
    if (r != inv_.end()) return r->second == a;
    fwd_[a] = b;
    inv_[b] = a;
    return true;
  }

  std::optional<Elem> image(Elem a) const {
    auto it = fwd_.find(a);
    if (it == fwd_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Elem> preimage(Elem b) const {
    auto it = inv_.find(b);
    if (it == inv_.end()) return std::nullopt;
    return it->second;
  }

  bool defined(Elem a) const { return fwd_.count(a) != 0; }
  bool hits(Elem b) const { return inv_.count(b) != 0; }
  int size() const { return static_cast<int>(fwd_.size()); }
  bool empty() const { return fwd_.empty(); }

  const std::map<Elem, Elem>& pairs() const { return fwd_; }

  PartialInjection inverse() const {
    PartialInjection g;
    g.fwd_ = inv_;
    g.inv_ = fwd_;
    return g;
  }

  /// this ∘ inner, defined where both legs are.
  PartialInjection composed_with(const PartialInjection& inner) const {
    PartialInjection g;
    for (const auto& [a, b] : inner.fwd_) {
      auto c = image(b);
      if (c) g.insert(a, *c);
    }
    return g;
  }

  PartialInjection restricted_below(Elem bound) const {
    PartialInjection g;
    for (const auto& [a, b] : fwd_)
      if (a < bound) g.insert(a, b);
    return g;
  }

  bool extends(const PartialInjection& other) const {
    for (const auto& [a, b] : other.fwd_) {
      auto mine = image(a);
      if (!mine || *mine != b) return false;
    }
    return true;
  }

  bool operator==(const PartialInjection& o) const { return fwd_ == o.fwd_; }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [a, b] : fwd_) {
      if (!first) s += ", ";
      first = false;
      s += std::to_string(a) + "->" + std::to_string(b);
    }
    s += "}";
    return s;
  }

 private:
  std::map<Elem, Elem> fwd_;
  std::map<Elem, Elem> inv_;
};

/// Canonical order on plain finite tuples: length first, then lexicographic.
inline bool tuple_less(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace bstar
