#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bstar {

/// Element of a countable domain. All structures live on an initial segment
/// of the natural numbers (conceptually on all of them; concretely every
/// question we ask mentions finitely many).
using Elem = int;

struct RelationSymbol {
  std::string name;
  int arity = 0;
};

/// A finite relational signature. Symbols are addressed by index; names are
/// unique and arities positive.
class Signature {
 public:
  Signature() = default;

  explicit Signature(std::vector<RelationSymbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].arity <= 0)
        throw std::invalid_argument("relation arity must be positive: " + symbols_[i].name);
      for (std::size_t j = 0; j < i; ++j)
        if (symbols_[j].name == symbols_[i].name)
          throw std::invalid_argument("duplicate relation symbol: " + symbols_[i].name);
    }
  }

  int size() const { return static_cast<int>(symbols_.size()); }
  bool empty() const { return symbols_.empty(); }

  const RelationSymbol& symbol(int i) const { return symbols_.at(static_cast<std::size_t>(i)); }

  int arity(int i) const { return symbol(i).arity; }
  const std::string& name(int i) const { return symbol(i).name; }

  std::optional<int> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
  }

  bool operator==(const Signature& other) const {
    if (symbols_.size() != other.symbols_.size()) return false;
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name != other.symbols_[i].name || symbols_[i].arity != other.symbols_[i].arity)
        return false;
    return true;
  }

 private:
  std::vector<RelationSymbol> symbols_;
};

}  // namespace bstar
