#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bstar/biequiv.hpp"
#include "bstar/dsl.hpp"
#include "bstar/functor_registry.hpp"
#include "bstar/homomorphism.hpp"

namespace bstar {

/// Named structures, interpretations and bi-interpretations the command line
/// and the suites address. Extra structures can be loaded from declaration
/// files; the environment variable BSTAR_REGISTRY names a default file.
struct Registry {
  std::map<std::string, StructureOracle> structures;
  std::map<std::string, std::pair<Interpretation, InterpretationWitness>> interpretations;
  std::map<std::string, BiInterpretation> biinterpretations;

  const StructureOracle& structure(const std::string& name) const {
    auto it = structures.find(name);
    if (it == structures.end()) throw std::out_of_range("unknown structure: " + name);
    return it->second;
  }

  const std::pair<Interpretation, InterpretationWitness>& interpretation(
      const std::string& name) const {
    auto it = interpretations.find(name);
    if (it == interpretations.end()) throw std::out_of_range("unknown interpretation: " + name);
    return it->second;
  }

  const BiInterpretation& biinterpretation(const std::string& name) const {
    auto it = biinterpretations.find(name);
    if (it == biinterpretations.end()) throw std::out_of_range("unknown bi-interpretation: " + name);
    return it->second;
  }
};

inline Registry default_registry() {
  Registry r;
  r.structures.emplace("pureset", make_pure_set());
  r.structures.emplace("dlo", make_dense_order());
  r.structures.emplace("omega", make_omega_order());
  r.structures.emplace("zring", make_integer_ring());
  r.structures.emplace("qring", make_rational_ring());
  r.structures.emplace("pairs", make_matched_pairs());
  r.structures.emplace("classpoints", make_class_points());

  r.interpretations.emplace("elements",
                            std::make_pair(elements_interpretation(), elements_witness()));
  r.interpretations.emplace("classes", std::make_pair(class_interpretation(), class_witness()));
  r.interpretations.emplace("fractions",
                            std::make_pair(fraction_interpretation(), fraction_witness()));
  r.interpretations.emplace(
      "classpoints-in-pairs",
      std::make_pair(classpoints_in_pairs(), classpoints_in_pairs_witness()));
  r.interpretations.emplace(
      "pairs-in-classpoints",
      std::make_pair(pairs_in_classpoints(), pairs_in_classpoints_witness()));
  for (const auto& [name, s] : r.structures)
    r.interpretations.emplace("identity:" + name,
                              std::make_pair(identity_interpretation(s), elements_witness()));

  r.biinterpretations.emplace("identity", identity_biinterpretation(make_matched_pairs()));
  r.biinterpretations.emplace("pairs", pairs_biinterpretation());
  return r;
}

/// Resolves a functor name against a source structure. Composite names use
/// '*' for composition; `constant:<structure>` fixes the named target.
inline FunctorOperator resolve_functor(const Registry& reg, const std::string& name,
                                       const StructureOracle& source) {
  auto star = name.find('*');
  if (star != std::string::npos) {
    FunctorOperator inner = resolve_functor(reg, name.substr(star + 1), source);
    // The outer operator consumes the inner one's output signature; resolve
    // it against a structure with that signature when one is registered.
    for (const auto& [n, s] : reg.structures)
      if (s.signature() == inner.target_sig)
        return compose_functors(resolve_functor(reg, name.substr(0, star), s), inner);
    throw std::out_of_range("no registered structure matches the inner output of " + name);
  }
  if (name == "identity") return identity_functor(source);
  if (name == "reindex") return reindex_functor(source);
  if (name == "fracfield") return fraction_field_functor();
  if (name == "classes") return class_collapse_functor();
  if (name == "divergent") return divergent_functor(source);
  if (name.rfind("constant:", 0) == 0)
    return constant_functor(source, reg.structure(name.substr(9)));
  if (name.rfind("hom:", 0) == 0) {
    // hom:<homname>:<target> builds the functor a homomorphism induces.
    std::string rest = name.substr(4);
    auto colon = rest.find(':');
    std::string hom = colon == std::string::npos ? rest : rest.substr(0, colon);
    const StructureOracle& target =
        colon == std::string::npos ? source : reg.structure(rest.substr(colon + 1));
    GroupHomomorphismOperator H =
        hom == "classes" ? class_collapse_homomorphism() : identity_homomorphism();
    return functor_from_homomorphism(H, backforth_standardizer(source), source, target, 64);
  }
  throw std::out_of_range("unknown functor: " + name);
}

/// Loads extra declarations into the registry (interpretations get the
/// undefined witness; witnesses are code, not declarations).
inline void load_registry_file(Registry& reg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  DslEnvironment env;
  load_declarations(ss.str(), env);
  for (auto& [name, s] : env.structures) reg.structures.insert_or_assign(name, s);
  for (auto& [name, i] : env.interpretations)
    reg.interpretations.insert_or_assign(
        name, std::make_pair(i, InterpretationWitness{
                                    "undefined", [](const StructureOracle&,
                                                    const std::vector<Elem>&) -> std::optional<Elem> {
                                      return std::nullopt;
                                    }}));
}

/// Applies the BSTAR_REGISTRY environment variable, when set.
inline void load_default_registry_file(Registry& reg) {
  if (const char* path = std::getenv("BSTAR_REGISTRY")) {
    if (*path) load_registry_file(reg, path);
  }
}

}  // namespace bstar
