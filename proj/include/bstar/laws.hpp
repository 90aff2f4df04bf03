#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bstar/copies.hpp"
#include "bstar/functor.hpp"

namespace bstar {

struct CheckIssue {
  std::string check;
  std::string instance;
  std::string detail;
};

/// Outcome of a pointwise law check. Insufficiencies mark places where the
/// sampled finite data ran out; only violations and divergences fail.
struct LawReport {
  std::string subject;
  int checks = 0;
  std::vector<CheckIssue> violations;
  std::vector<CheckIssue> insufficiencies;
  std::vector<CheckIssue> divergences;

  bool passed() const { return violations.empty() && divergences.empty(); }

  void note_divergence(const std::string& check, const std::string& inst, const std::string& q) {
    divergences.push_back({check, inst, q});
  }
};

namespace detail {

inline std::function<std::optional<Elem>(Elem)> identity_map() {
  return [](Elem m) -> std::optional<Elem> { return m; };
}

}  // namespace detail

/// Identity and composition, pointwise on the sampled copies: the image of
/// every identity is the identity, and images of composites match composed
/// images. Composable triples are taken as consecutive sample entries.
inline LawReport check_functor_laws(const FunctorOperator& F, const std::vector<Copy>& samples,
                                    Elem index_bound) {
  LawReport report;
  report.subject = F.name;

  for (const auto& c : samples) {
    StructureOracle o = c.oracle();
    MorphismData idm{o, o, detail::identity_map(), detail::identity_map()};
    for (Elem i = 0; i < index_bound; ++i) {
      ++report.checks;
      try {
        auto v = apply_morphism(F, idm, i);
        if (!v)
          report.insufficiencies.push_back({"identity", c.label, "value " + std::to_string(i)});
        else if (*v != i)
          report.violations.push_back({"identity", c.label,
                                       "F(id)(" + std::to_string(i) + ") = " + std::to_string(*v)});
      } catch (const operator_divergence& d) {
        report.note_divergence("identity", c.label, d.query);
      }
    }
  }

  for (std::size_t k = 0; k + 2 < samples.size(); ++k) {
    const Copy& A = samples[k];
    const Copy& B = samples[k + 1];
    const Copy& C = samples[k + 2];
    MorphismData ab = morphism_between(A, B);
    MorphismData bc = morphism_between(B, C);
    MorphismData ac = morphism_between(A, C);
    std::string inst = A.label + "->" + B.label + "->" + C.label;
    for (Elem i = 0; i < index_bound; ++i) {
      ++report.checks;
      try {
        auto direct = apply_morphism(F, ac, i);
        auto first = apply_morphism(F, ab, i);
        if (!direct || !first) {
          report.insufficiencies.push_back({"composition", inst, "value " + std::to_string(i)});
          continue;
        }
        auto second = apply_morphism(F, bc, *first);
        if (!second) {
          report.insufficiencies.push_back({"composition", inst, "value " + std::to_string(i)});
          continue;
        }
        if (*second != *direct)
          report.violations.push_back(
              {"composition", inst,
               "F(h2 h1)(" + std::to_string(i) + ") = " + std::to_string(*direct) +
                   " but F(h2)F(h1) gives " + std::to_string(*second)});
      } catch (const operator_divergence& d) {
        report.note_divergence("composition", inst, d.query);
      }
    }
  }
  return report;
}

/// A family of isomorphisms between the outputs of two operators, one
/// component per copy, queried pointwise through the copy's oracle.
struct NaturalTransformation {
  std::string name;
  std::function<std::optional<Elem>(const StructureOracle&, Elem)> component;

  std::function<std::optional<Elem>(Elem)> at(const StructureOracle& copy_oracle) const {
    auto self = component;
    auto o = std::make_shared<StructureOracle>(copy_oracle);
    return [self, o](Elem m) { return self(*o, m); };
  }

  /// Bounded inverse of a component.
  std::function<std::optional<Elem>(Elem)> inverse_at(const StructureOracle& copy_oracle,
                                                      Elem search_bound) const {
    auto fwd = at(copy_oracle);
    return [fwd, search_bound](Elem n) -> std::optional<Elem> {
      for (Elem m = 0; m < search_bound; ++m) {
        auto v = fwd(m);
        if (v && *v == n) return m;
      }
      return std::nullopt;
    };
  }
};

inline NaturalTransformation identity_transformation() {
  return {"id", [](const StructureOracle&, Elem m) -> std::optional<Elem> { return m; }};
}

/// Commutation of the component squares: applying `eta` before G's image of
/// a morphism matches applying F's image first, pointwise below the bound.
/// Also checks injectivity of each component on the queried points.
inline LawReport check_natural_iso(const FunctorOperator& F, const FunctorOperator& G,
                                   const NaturalTransformation& eta, const std::vector<Copy>& samples,
                                   Elem index_bound) {
  LawReport report;
  report.subject = "nat-iso " + eta.name + " : " + F.name + " => " + G.name;

  for (const auto& c : samples) {
    StructureOracle o = c.oracle();
    auto comp = eta.at(o);
    std::vector<Elem> seen(static_cast<std::size_t>(index_bound), -1);
    for (Elem i = 0; i < index_bound; ++i) {
      ++report.checks;
      auto v = comp(i);
      if (!v) {
        report.insufficiencies.push_back({"component", c.label, "value " + std::to_string(i)});
        continue;
      }
      for (Elem j = 0; j < i; ++j)
        if (seen[static_cast<std::size_t>(j)] == *v)
          report.violations.push_back({"component-injective", c.label,
                                       std::to_string(j) + " and " + std::to_string(i) +
                                           " share the image " + std::to_string(*v)});
      seen[static_cast<std::size_t>(i)] = *v;
    }
  }

  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const Copy& Bt = samples[k];
    const Copy& Bh = samples[k + 1];
    std::string inst = Bt.label + "->" + Bh.label;
    MorphismData h = morphism_between(Bt, Bh);
    auto eta_t = eta.at(Bt.oracle());
    auto eta_h = eta.at(Bh.oracle());
    for (Elem i = 0; i < index_bound; ++i) {
      ++report.checks;
      try {
        auto fi = apply_morphism(F, h, i);
        auto et = eta_t(i);
        if (!fi || !et) {
          report.insufficiencies.push_back({"square", inst, "value " + std::to_string(i)});
          continue;
        }
        auto lhs = eta_h(*fi);
        auto gi = apply_morphism(G, h, *et);
        if (!lhs || !gi) {
          report.insufficiencies.push_back({"square", inst, "value " + std::to_string(i)});
          continue;
        }
        if (*lhs != *gi)
          report.violations.push_back({"square", inst,
                                       "at " + std::to_string(i) + ": eta(F(h)) = " +
                                           std::to_string(*lhs) + ", G(h)(eta) = " + std::to_string(*gi)});
      } catch (const operator_divergence& d) {
        report.note_divergence("square", inst, d.query);
      }
    }
  }
  return report;
}

/// An adjoint equivalence candidate: operators both ways plus unit and
/// counit families, each mapping a copy into the back-and-forth composite.
struct AdjointData {
  FunctorOperator F;  // copies of B to copies of A
  FunctorOperator G;  // copies of A to copies of B
  NaturalTransformation eta;      // at a B-copy: copy -> G(F(copy))
  NaturalTransformation epsilon;  // at an A-copy: copy -> F(G(copy))
};

/// Naturality of unit and counit plus both triangle identities, pointwise.
inline LawReport check_adjoint_equivalence(const AdjointData& adj, const std::vector<Copy>& samples_b,
                                           const std::vector<Copy>& samples_a, Elem index_bound) {
  LawReport report;
  report.subject = "adjoint " + adj.F.name + " -| " + adj.G.name;
  FunctorOperator GF = compose_functors(adj.G, adj.F);
  FunctorOperator FG = compose_functors(adj.F, adj.G);

  auto naturality = [&](const FunctorOperator& round, const NaturalTransformation& nt,
                        const std::vector<Copy>& samples, const std::string& which) {
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
      const Copy& X = samples[k];
      const Copy& Y = samples[k + 1];
      std::string inst = X.label + "->" + Y.label;
      MorphismData h = morphism_between(X, Y);
      auto nt_x = nt.at(X.oracle());
      auto nt_y = nt.at(Y.oracle());
      for (Elem i = 0; i < index_bound; ++i) {
        ++report.checks;
        try {
          auto hx = h.iso(i);
          auto ex = nt_x(i);
          if (!hx || !ex) {
            report.insufficiencies.push_back({which + "-naturality", inst, std::to_string(i)});
            continue;
          }
          auto lhs = nt_y(*hx);
          auto rhs = apply_morphism(round, h, *ex);
          if (!lhs || !rhs) {
            report.insufficiencies.push_back({which + "-naturality", inst, std::to_string(i)});
            continue;
          }
          if (*lhs != *rhs)
            report.violations.push_back({which + "-naturality", inst,
                                         "at " + std::to_string(i) + ": " + std::to_string(*lhs) +
                                             " vs " + std::to_string(*rhs)});
        } catch (const operator_divergence& d) {
          report.note_divergence(which + "-naturality", inst, d.query);
        }
      }
    }
  };
  naturality(GF, adj.eta, samples_b, "unit");
  naturality(FG, adj.epsilon, samples_a, "counit");

  // Triangles: the F-image of a unit component is the counit at the F-image,
  // and the G-image of a counit component is the unit at the G-image.
  for (const auto& c : samples_b) {
    StructureOracle b_oracle = c.oracle();
    StructureOracle fb = apply_structure(adj.F, b_oracle);
    StructureOracle gfb = apply_structure(GF, b_oracle);
    auto unit = adj.eta.at(b_oracle);
    auto unit_inv = adj.eta.inverse_at(b_oracle, index_bound * 4);
    MorphismData f_of_unit{b_oracle, gfb, unit, unit_inv};
    auto counit_at_fb = adj.epsilon.at(fb);
    for (Elem i = 0; i < index_bound; ++i) {
      ++report.checks;
      try {
        auto lhs = apply_morphism(adj.F, f_of_unit, i);
        auto rhs = counit_at_fb(i);
        if (!lhs || !rhs) {
          report.insufficiencies.push_back({"triangle-F", c.label, std::to_string(i)});
          continue;
        }
        if (*lhs != *rhs)
          report.violations.push_back({"triangle-F", c.label,
                                       "at " + std::to_string(i) + ": F(unit) = " + std::to_string(*lhs) +
                                           ", counit at F = " + std::to_string(*rhs)});
      } catch (const operator_divergence& d) {
        report.note_divergence("triangle-F", c.label, d.query);
      }
    }
  }
  for (const auto& c : samples_a) {
    StructureOracle a_oracle = c.oracle();
    StructureOracle ga = apply_structure(adj.G, a_oracle);
    StructureOracle fga = apply_structure(FG, a_oracle);
    auto counit = adj.epsilon.at(a_oracle);
    auto counit_inv = adj.epsilon.inverse_at(a_oracle, index_bound * 4);
    MorphismData g_of_counit{a_oracle, fga, counit, counit_inv};
    auto unit_at_ga = adj.eta.at(ga);
    for (Elem i = 0; i < index_bound; ++i) {
      ++report.checks;
      try {
        auto lhs = apply_morphism(adj.G, g_of_counit, i);
        auto rhs = unit_at_ga(i);
        if (!lhs || !rhs) {
          report.insufficiencies.push_back({"triangle-G", c.label, std::to_string(i)});
          continue;
        }
        if (*lhs != *rhs)
          report.violations.push_back({"triangle-G", c.label,
                                       "at " + std::to_string(i) + ": G(counit) = " +
                                           std::to_string(*lhs) + ", unit at G = " + std::to_string(*rhs)});
      } catch (const operator_divergence& d) {
        report.note_divergence("triangle-G", c.label, d.query);
      }
    }
  }
  return report;
}

}  // namespace bstar
