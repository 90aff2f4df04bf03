#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bstar/tuples.hpp"

namespace bstar {

/// A condition of the product forcing: one finite injective tuple per
/// generic coordinate. q extends p when every part of q end-extends the
/// corresponding part of p.
class Condition {
 public:
  explicit Condition(std::vector<InjectiveTuple> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("condition needs at least one coordinate");
  }

  static Condition empty(int width) {
    if (width < 1) throw std::invalid_argument("condition width must be positive");
    return Condition(std::vector<InjectiveTuple>(static_cast<std::size_t>(width)));
  }

  int width() const { return static_cast<int>(parts_.size()); }

  /// Coordinates are 1-based, matching the formal symbols ġ₁, ġ₂, ...
  const InjectiveTuple& part(int i) const {
    if (i < 1 || i > width()) throw std::out_of_range("condition coordinate");
    return parts_[static_cast<std::size_t>(i - 1)];
  }

  const std::vector<InjectiveTuple>& parts() const { return parts_; }

  bool extends(const Condition& p) const {
    if (p.width() != width()) return false;
    for (int i = 0; i < width(); ++i)
      if (!p.parts_[i].is_prefix_of(parts_[i])) return false;
    return true;
  }

  Condition with_part(int i, InjectiveTuple t) const {
    Condition q = *this;
    q.parts_.at(static_cast<std::size_t>(i - 1)) = std::move(t);
    return q;
  }

  Condition dropped(int i) const {
    if (width() < 2) throw std::invalid_argument("cannot drop the only coordinate");
    Condition q = *this;
    q.parts_.erase(q.parts_.begin() + (i - 1));
    return q;
  }

  int total_length() const {
    int n = 0;
    for (const auto& t : parts_) n += t.size();
    return n;
  }

  Elem max_entry_or(Elem fallback) const {
    Elem m = fallback;
    for (const auto& t : parts_) m = std::max(m, t.max_entry_or(fallback));
    return m;
  }

  std::vector<PartialInjection> as_injections() const {
    std::vector<PartialInjection> gs;
    gs.reserve(parts_.size());
    for (const auto& t : parts_) gs.push_back(PartialInjection::from_tuple(t));
    return gs;
  }

  bool operator==(const Condition& o) const { return parts_ == o.parts_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ";";
      s += parts_[i].to_string();
    }
    return s;
  }

 private:
  std::vector<InjectiveTuple> parts_;
};

namespace detail {

template <class Fn>
bool extend_part_rec(const Condition& base, std::vector<InjectiveTuple>& parts, int coord,
                     const std::vector<int>& add, Elem pool, Fn&& fn) {
  if (coord > base.width()) {
    Condition q(parts);
    return fn(static_cast<const Condition&>(q));
  }
  int want = add[static_cast<std::size_t>(coord - 1)];
  if (want == 0) return extend_part_rec(base, parts, coord + 1, add, pool, fn);

  // Grow this coordinate by `want` fresh entries, smallest first.
  std::vector<Elem> stack;
  auto rec = [&](auto&& self) -> bool {
    if (static_cast<int>(stack.size()) == want) {
      InjectiveTuple grown = base.part(coord);
      for (Elem e : stack) grown = grown.extended(e);
      InjectiveTuple saved = parts[static_cast<std::size_t>(coord - 1)];
      parts[static_cast<std::size_t>(coord - 1)] = grown;
      bool stop = extend_part_rec(base, parts, coord + 1, add, pool, fn);
      parts[static_cast<std::size_t>(coord - 1)] = saved;
      return stop;
    }
    for (Elem e = 0; e < pool; ++e) {
      if (base.part(coord).contains(e)) continue;
      bool used = false;
      for (Elem s : stack)
        if (s == e) used = true;
      if (used) continue;
      stack.push_back(e);
      if (self(self)) {
        stack.pop_back();
        return true;
      }
      stack.pop_back();
    }
    return false;
  };
  return rec(rec);
}

template <class Fn>
bool compositions_rec(std::vector<int>& add, int coord, int remaining,
                      const std::vector<int>& capacity, Fn&& fn) {
  if (coord == static_cast<int>(add.size())) {
    if (remaining != 0) return false;
    return fn(static_cast<const std::vector<int>&>(add));
  }
  int cap = std::min(remaining, capacity[static_cast<std::size_t>(coord)]);
  for (int k = 0; k <= cap; ++k) {
    add[static_cast<std::size_t>(coord)] = k;
    if (compositions_rec(add, coord + 1, remaining - k, capacity, fn)) return true;
  }
  return false;
}

}  // namespace detail

/// Visits every q ⊇ p (including p itself) whose new entries come from
/// [0, pool) and whose parts stay within max_len, ordered by total added
/// length and then lexicographically. fn returning true stops the walk.
template <class Fn>
bool for_each_extension(const Condition& p, Elem pool, int max_len, Fn&& fn) {
  std::vector<int> capacity;
  int total_cap = 0;
  for (int i = 1; i <= p.width(); ++i) {
    int c = std::max(0, max_len - p.part(i).size());
    // Cannot add more distinct fresh entries than the pool offers.
    int fresh = 0;
    for (Elem e = 0; e < pool; ++e)
      if (!p.part(i).contains(e)) ++fresh;
    c = std::min(c, fresh);
    capacity.push_back(c);
    total_cap += c;
  }
  std::vector<InjectiveTuple> parts = p.parts();
  for (int k = 0; k <= total_cap; ++k) {
    std::vector<int> add(static_cast<std::size_t>(p.width()), 0);
    bool stop = detail::compositions_rec(add, 0, k, capacity, [&](const std::vector<int>& a) {
      return detail::extend_part_rec(p, parts, 1, a, pool, fn);
    });
    if (stop) return true;
  }
  return false;
}

/// Prefix conditions of a tuple of enumerations: coordinate i truncated to
/// its first lengths[i] values.
inline Condition prefix_condition(const std::vector<InjectiveTuple>& gs, const std::vector<int>& lengths) {
  std::vector<InjectiveTuple> parts;
  for (std::size_t i = 0; i < gs.size(); ++i) parts.push_back(gs[i].prefix(lengths[i]));
  return Condition(std::move(parts));
}

}  // namespace bstar
