#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bstar/formula.hpp"
#include "bstar/structure.hpp"

namespace bstar {

/// Bounds for evaluating definable relations over a structure: element pool,
/// tuple length, and unrolling budget for countable families and searches.
struct EvalBounds {
  Elem pool = 8;
  int max_len = 4;
  int budget = 8;
  Elem search = 64;  // range of bounded existential searches inside formulas
};

/// Arguments of a definable relation: a list of finite tuples over the
/// structure (one per slot; slots of arity one carry singleton tuples).
using TupleArgs = std::vector<std::vector<Elem>>;

/// A relation on tuples given by evaluation against a structure, carrying
/// its syntactic complexity as a tag. One object stands for a whole
/// per-length family: the tuple lengths of the arguments select the member.
struct DefinableRelation {
  ComplexityTag tag;
  std::string label;
  std::function<Truth(const StructureOracle&, const TupleArgs&, const EvalBounds&)> eval;

  Truth operator()(const StructureOracle& s, const TupleArgs& args, const EvalBounds& b) const {
    return eval(s, args, b);
  }
};

}  // namespace bstar
