#pragma once

#include "bstar/extract.hpp"
#include "bstar/laws.hpp"

namespace bstar {

/// Bounds and samples for the extraction verification ladder.
struct ExtractionCheckConfig {
  FragmentSpec fragment;
  WitnessPool witnesses;                  // for relation searches
  std::vector<InjectiveTuple> generics;   // enumeration approximations for the canonical maps
  Elem index_bound = 8;
  int naturality_samples = 0;             // copies to sample; 0 skips the square checks
  Elem sample_support = 12;
  Elem copy_pool = 6;
  int copy_len = 3;
  Elem copy_index_bound = 6;
  std::uint64_t seed = 1;
  int max_unique_checks = 200000;
};

/// The index assigned to a domain element by the canonical class order of a
/// partition; classes are ordered by their first-discovered member.
inline int tau_index(const Extraction& ex, const StructureOracle& world, const Partition& part,
                     const DomainElement& d) {
  return part.class_of(ex, world, d);
}

/// Runs the whole ladder: equivalence axioms on the fragment, surjectivity
/// and injectivity of the canonical enumeration maps, agreement between the
/// extracted relations and direct evaluation on generic copies, and the
/// naturality squares on sampled copies.
inline LawReport verify_extraction(const Extraction& ex, const ExtractionCheckConfig& cfg) {
  LawReport report;
  report.subject = "extraction of " + ex.op().name + " over " + ex.base().name();
  const StructureOracle& world = ex.base();

  std::vector<DomainElement> fragment = enumerate_fragment(ex, world, cfg.fragment);
  if (fragment.empty())
    report.violations.push_back({"fragment", "-", "no domain elements found within bounds"});
  Partition part = partition_fragment(ex, world, fragment);
  for (const auto& a : part.anomalies) report.violations.push_back({"sim-partition", a, ""});

  // Equivalence axioms.
  for (const auto& d : fragment) {
    ++report.checks;
    if (ex.sim(world, d, d) != Membership::in)
      report.violations.push_back({"sim-reflexive", d.to_string(), ""});
  }
  for (std::size_t k = 0; k < part.classes.size(); ++k) {
    const DomainElement& rep = part.reps[k];
    for (const auto& m : part.classes[k]) {
      ++report.checks;
      if (ex.sim(world, rep, m) != Membership::in)
        report.violations.push_back({"sim-symmetric", rep.to_string() + " ~ " + m.to_string(), ""});
    }
  }
  for (std::size_t a = 0; a < part.reps.size(); ++a)
    for (std::size_t b = 0; b < part.reps.size(); ++b) {
      if (a == b) continue;
      ++report.checks;
      if (ex.sim(world, part.reps[a], part.reps[b]) == Membership::in)
        report.violations.push_back(
            {"sim-transitive", part.reps[a].to_string() + " ~ " + part.reps[b].to_string(),
             "distinct representatives are linked"});
    }

  // Onto: every class contains the canonical image of some index.
  for (std::size_t k = 0; k < part.reps.size(); ++k) {
    ++report.checks;
    bool hit = false;
    for (const auto& g : cfg.generics) {
      for (Elem i = 0; i < cfg.index_bound && !hit; ++i) {
        auto fv = ex.frak_prefix(world, g, i);
        if (fv && ex.sim(world, *fv, part.reps[k]) == Membership::in) hit = true;
      }
      if (hit) break;
    }
    if (!hit)
      report.violations.push_back({"onto", part.reps[k].to_string(),
                                   "no enumeration index lands in this class"});
  }

  // Unique: along prefix-compatible pairs, linkage is exactly index equality.
  {
    int budget = cfg.max_unique_checks;
    for (const auto& a : fragment) {
      for (const auto& b : fragment) {
        if (!(a.tuple.is_prefix_of(b.tuple))) continue;
        if (--budget < 0) break;
        ++report.checks;
        bool linked = ex.sim(world, a, b) == Membership::in;
        if (linked != (a.index == b.index))
          report.violations.push_back({"unique", a.to_string() + " vs " + b.to_string(),
                                       linked ? "linked across distinct indices"
                                              : "unlinked despite equal indices"});
      }
      if (budget < 0) break;
    }
  }

  // Iso: extracted relation facts match direct evaluation on generic copies.
  for (const auto& g : cfg.generics) {
    std::map<Elem, DomainElement> frak;
    bool complete = true;
    for (Elem i = 0; i < cfg.index_bound; ++i) {
      auto fv = ex.frak_prefix(world, g, i);
      if (!fv) {
        complete = false;
        report.insufficiencies.push_back(
            {"frak", g.to_string() + "#" + std::to_string(i), "budget insufficient: no prefix lands"});
        continue;
      }
      frak[i] = *fv;
    }
    WitnessPool pool = cfg.witnesses;
    {
      WitnessPool pre = prefix_witnesses({g});
      pool.candidates.insert(pool.candidates.end(), pre.candidates.begin(), pre.candidates.end());
    }
    for (int sym = 0; sym < ex.op().target_sig.size(); ++sym) {
      int arity = ex.op().target_sig.arity(sym);
      std::vector<Elem> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        bool usable = complete || [&] {
          for (int k = 0; k < arity; ++k)
            if (!frak.count(idx[static_cast<std::size_t>(k)])) return false;
          return true;
        }();
        if (usable) {
          ++report.checks;
          std::vector<Elem> js(idx.begin(), idx.end());
          DirectedOutcome lhs = ex.run_structure_fact(world, g, sym, js);
          std::vector<DomainElement> args;
          for (Elem j : js) args.push_back(frak.at(j));
          Membership rhs = ex.relation(world, sym, args, pool);
          std::string inst = "R" + std::to_string(sym) + " at " + g.to_string();
          if (lhs.kind == DirectedOutcome::Kind::committed) {
            bool left = lhs.output == 1;
            if (left && rhs != Membership::in)
              report.violations.push_back({"iso", inst, "fact holds but the extracted relation misses it"});
            if (!left && rhs == Membership::in)
              report.violations.push_back({"iso", inst, "extracted relation asserts a false fact"});
          } else {
            report.insufficiencies.push_back({"iso", inst, lhs.query});
          }
        }
        int k = arity - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == cfg.index_bound) {
          idx[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
  }

  // Naturality of the canonical identification on sampled copies.
  if (cfg.naturality_samples > 1) {
    auto samples = sample_copies(ex.base(), cfg.naturality_samples, cfg.sample_support, cfg.seed);
    FragmentSpec copy_spec;
    copy_spec.mode = FragmentSpec::Mode::full_tuples;
    copy_spec.pool = cfg.copy_pool;
    copy_spec.max_len = cfg.copy_len;
    copy_spec.index_bound = cfg.copy_index_bound;

    std::vector<StructureOracle> oracles;
    std::vector<Partition> parts;
    for (const auto& c : samples) {
      oracles.push_back(c.oracle());
      parts.push_back(partition_fragment(ex, oracles.back(),
                                         enumerate_fragment(ex, oracles.back(), copy_spec)));
    }
    WitnessPool hat_pool = pool_witnesses(ex.base(), cfg.copy_pool, cfg.copy_len);

    for (std::size_t s = 0; s + 1 < samples.size(); ++s) {
      const Copy& tilde = samples[s];
      const Copy& hat = samples[s + 1];
      std::string inst = tilde.label + "->" + hat.label;
      PartialInjection h = copy_morphism(tilde, hat);
      MorphismData hd = morphism_between(tilde, hat);
      for (Elem i = 0; i < cfg.copy_index_bound; ++i) {
        ++report.checks;
        auto fh = apply_morphism(ex.op(), hd, i);
        auto ft = ex.frak_hat(oracles[s], i, hat_pool);
        if (!fh || !ft) {
          report.insufficiencies.push_back({"naturality", inst, "value " + std::to_string(i)});
          continue;
        }
        auto fhat = ex.frak_hat(oracles[s + 1], *fh, hat_pool);
        if (!fhat) {
          report.insufficiencies.push_back({"naturality", inst, "value " + std::to_string(i)});
          continue;
        }

        // Square through the canonical identification: the class of the
        // transported element matches the class of the image's element.
        std::vector<Elem> mapped;
        bool total = true;
        for (Elem e : ft->tuple.entries()) {
          auto v = h.image(e);
          if (!v) {
            total = false;
            break;
          }
          mapped.push_back(*v);
        }
        if (!total) {
          report.insufficiencies.push_back({"naturality", inst, "morphism gap at " + ft->to_string()});
          continue;
        }
        DomainElement transported{InjectiveTuple(mapped), ft->index};
        if (ex.sim(oracles[s + 1], transported, *fhat) != Membership::in)
          report.violations.push_back({"naturality-transport", inst,
                                       transported.to_string() + " vs " + fhat->to_string()});

        int lhs = tau_index(ex, oracles[s + 1], parts[s + 1], transported);
        int rhs = tau_index(ex, oracles[s + 1], parts[s + 1], *fhat);
        int eta_t = tau_index(ex, oracles[s], parts[s], *ft);
        if (lhs < 0 || rhs < 0 || eta_t < 0) {
          report.insufficiencies.push_back({"naturality", inst, "class out of fragment"});
          continue;
        }
        if (lhs != rhs)
          report.violations.push_back({"naturality-square", inst,
                                       "classes " + std::to_string(lhs) + " vs " + std::to_string(rhs)});
      }
    }
  }

  return report;
}

}  // namespace bstar
