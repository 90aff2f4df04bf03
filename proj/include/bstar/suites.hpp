#pragma once

#include "bstar/definability.hpp"
#include "bstar/extract_verify.hpp"
#include "bstar/generic.hpp"
#include "bstar/holds.hpp"
#include "bstar/indisc.hpp"
#include "bstar/registry.hpp"
#include "bstar/report.hpp"

namespace bstar {

/// One run's bindings and bounds. A fixed seed makes the whole run, and its
/// report bytes, reproducible.
struct SessionConfig {
  std::string structure = "pureset";
  std::string functor = "identity";
  std::string interp = "classes";
  std::string biinterp = "identity";
  Elem pool = 5;
  int len = 5;
  int depth = 4;
  std::uint64_t seed = 0;
  int threshold = 5;     // indiscernible classes to certify
  int permutations = 120;
  std::string report_path;

  std::string bounds_text() const {
    return "pool=" + std::to_string(pool) + ",len=" + std::to_string(len) +
           ",depth=" + std::to_string(depth) + ",seed=" + std::to_string(seed);
  }
};

namespace suites {

inline CheckRecord record(const SessionConfig& cfg, std::string suite, std::string check,
                          std::string instance, bool pass, std::string witness,
                          bool negative_control = false) {
  return {std::move(suite), std::move(check),    std::move(instance),
          pass ? "pass" : "fail", std::move(witness), cfg.bounds_text(),
          negative_control};
}

/// The finitary template family: every atom with parameters below the bound
/// and both polarities, plus the junctions of adjacent atom pairs.
inline std::vector<FormulaPtr> template_family(const StructureOracle& base, int ell,
                                               Elem param_bound) {
  std::vector<FormulaPtr> atoms;
  for (int i = 1; i <= ell; ++i)
    for (int j = 1; j <= ell; ++j)
      for (Elem m = 0; m < param_bound; ++m)
        for (Elem n = 0; n < param_bound; ++n)
          for (bool pos : {true, false}) atoms.push_back(Formula::comp(ell, i, j, m, n, pos));
  for (int i = 1; i <= ell; ++i)
    for (Elem m = 0; m < param_bound; ++m)
      for (Elem n = 0; n < param_bound; ++n)
        for (bool pos : {true, false}) atoms.push_back(Formula::val(ell, i, m, n, pos));
  for (int sym = 0; sym < base.signature().size(); ++sym) {
    int arity = base.signature().arity(sym);
    if (arity > 2) continue;
    std::vector<std::vector<Elem>> tuples;
    if (arity == 1)
      for (Elem a = 0; a < param_bound; ++a) tuples.push_back({a});
    else
      for (Elem a = 0; a < param_bound; ++a)
        for (Elem b = 0; b < param_bound; ++b) tuples.push_back({a, b});
    for (const auto& t : tuples)
      for (int i = 1; i <= ell; ++i)
        for (bool pos : {true, false}) atoms.push_back(Formula::rel(ell, i, sym, t, pos));
  }
  std::vector<FormulaPtr> family = atoms;
  for (std::size_t k = 0; k + 1 < atoms.size(); k += 2) {
    family.push_back(Formula::fin_and(ell, {atoms[k], atoms[k + 1]}));
    family.push_back(Formula::fin_or(ell, {atoms[k], atoms[k + 1]}));
  }
  return family;
}

/// Rank-two-and-below sentences for the truth-lemma runs; every family is
/// decidable at an onto condition, so seeded generics settle each of them.
inline std::vector<FormulaPtr> budget_family(const StructureOracle& base, int ell, int depth) {
  std::vector<FormulaPtr> fs;
  FormulaPtr evens = Formula::count_or(
      ell, make_generator([ell](int n) { return Formula::val(ell, 1, 0, 2 * n, true); },
                          std::nullopt, "k (val 1 0 (* 2 k))"));
  fs.push_back(evens);
  fs.push_back(formal_negation(evens));
  fs.push_back(Formula::count_or(
      ell, make_generator([ell](int n) { return Formula::val(ell, 1, 1, n, true); }, std::nullopt,
                          "k (val 1 1 k)")));
  // Totality of the composition map on an initial segment: rank two.
  auto inner_or = [ell, depth](int m) {
    return Formula::count_or(
        ell, make_generator([ell, m](int n) { return Formula::comp(ell, 1, 2, m, n, true); },
                            2 * depth, "k (comp 1 2 " + std::to_string(m) + " k =)"));
  };
  fs.push_back(Formula::count_and(
      ell, make_generator([inner_or](int m) { return inner_or(m); }, 4, "m (or* k (comp 1 2 m k =))")));
  if (!base.signature().empty() && base.signature().arity(0) == 2) {
    fs.push_back(Formula::count_or(
        ell, make_generator(
                 [ell](int n) { return Formula::rel(ell, 1, 0, {0, n + 1}, true); }, std::nullopt,
                 "k (rel 1 R0 0 (+ k 1))")));
  }
  return fs;
}

// ---------------------------------------------------------------------------
// forcing-lemmas: monotonicity, consistency, decidability, definability.
// ---------------------------------------------------------------------------

inline SuiteResult run_forcing_lemmas(const Registry& reg, const SessionConfig& cfg) {
  SuiteResult result;
  const StructureOracle& base = reg.structure(cfg.structure);
  Bounds bounds{cfg.pool, cfg.len, cfg.depth};
  auto family = template_family(base, 2, 4);

  for (const auto& f : family) {
    int ext_violations = 0, neg_violations = 0, undecided = 0, instances = 0;
    std::string first_witness;
    for_each_extension(Condition::empty(2), cfg.pool, 3, [&](const Condition& p) {
      ++instances;
      ForcingVerdict v = forces(base, p, f, bounds);
      ForcingVerdict nv = forces(base, p, formal_negation(f), bounds);
      if (v.state == ForceState::forces && nv.state == ForceState::forces) {
        ++neg_violations;
        if (first_witness.empty()) first_witness = "both directions at " + p.to_string();
      }
      if (v.state == ForceState::forces) {
        for_each_extension(p, cfg.pool, 3, [&](const Condition& q) {
          if (forces(base, q, f, bounds).state != ForceState::forces) {
            ++ext_violations;
            if (first_witness.empty())
              first_witness = "lost at " + q.to_string() + " from " + p.to_string();
            return true;
          }
          return false;
        });
      }
      auto [q, dv] = decide(base, p, f, bounds);
      if (dv.state == ForceState::undecided) {
        ++undecided;
        if (first_witness.empty()) first_witness = "undecided from " + p.to_string();
      }
      return false;
    });
    std::string inst = to_string(f, &base.signature());
    result.add(record(cfg, "forcing-lemmas", "extension-monotone", inst, ext_violations == 0,
                      ext_violations ? first_witness : std::to_string(instances) + " conditions"));
    result.add(record(cfg, "forcing-lemmas", "negation-consistent", inst, neg_violations == 0,
                      neg_violations ? first_witness : ""));
    result.add(record(cfg, "forcing-lemmas", "decidable", inst, undecided == 0,
                      undecided ? first_witness : ""));
  }

  // Definability agreement on sampled restricted sentences.
  {
    std::mt19937_64 rng(cfg.seed);
    auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    auto random_restricted = [&](auto&& rec, int d) -> FormulaPtr {
      if (d == 0 || pick(3) == 0)
        return Formula::comp(2, 1 + pick(2), 1 + pick(2), pick(3), pick(3), pick(2) == 0);
      int c = pick(4);
      if (c == 0) {
        int m = pick(3);
        auto gen = make_generator([m](int n) { return Formula::comp(2, 1, 2, m, n, true); }, 4,
                                  "k<4 (comp 1 2 " + std::to_string(m) + " k =)");
        return pick(2) ? Formula::count_or(2, gen) : Formula::count_and(2, gen);
      }
      std::vector<FormulaPtr> parts;
      int n = 1 + pick(2);
      for (int i = 0; i < n; ++i) parts.push_back(rec(rec, d - 1));
      return pick(2) ? Formula::fin_and(2, std::move(parts)) : Formula::fin_or(2, std::move(parts));
    };
    int mismatches = 0;
    std::string witness;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Elem> t1, t2;
      for (int k = 0; k < pick(3); ++k) {
        Elem e = pick(cfg.pool);
        if (std::find(t1.begin(), t1.end(), e) == t1.end()) t1.push_back(e);
      }
      for (int k = 0; k < pick(3); ++k) {
        Elem e = pick(cfg.pool);
        if (std::find(t2.begin(), t2.end(), e) == t2.end()) t2.push_back(e);
      }
      Condition p({InjectiveTuple(t1), InjectiveTuple(t2)});
      FormulaPtr f = random_restricted(random_restricted, 2);
      ForcingVerdict direct = forces(base, p, f, bounds);
      Truth in_set = definability_compile(f, 2).eval(base, p, bounds);
      Truth neg_in_set = definability_compile(formal_negation(f), 2).eval(base, p, bounds);
      bool ok = true;
      if (direct.state == ForceState::forces) ok = is_true(in_set);
      if (direct.state == ForceState::forces_negation) ok = is_true(neg_in_set);
      if (direct.state == ForceState::undecided && direct.certified)
        ok = is_false(in_set) && is_false(neg_in_set);
      if (is_true(in_set) && direct.state != ForceState::forces) ok = false;
      if (is_true(neg_in_set) && direct.state != ForceState::forces_negation) ok = false;
      if (!ok && ++mismatches == 1)
        witness = "sample " + std::to_string(trial) + " at " + p.to_string();
    }
    result.add(record(cfg, "forcing-lemmas", "definability-agreement", "200 samples",
                      mismatches == 0, mismatches ? witness : "exact agreement"));
  }
  return result;
}

// ---------------------------------------------------------------------------
// truth-lemma: satisfaction along seeded generics matches prefix forcing.
// ---------------------------------------------------------------------------

inline SuiteResult run_truth_lemma(const Registry& reg, const SessionConfig& cfg, int generics = 100) {
  SuiteResult result;
  const StructureOracle& base = reg.structure(cfg.structure);
  auto family = budget_family(base, 2, cfg.depth);
  Bounds bounds{cfg.pool, cfg.len, cfg.depth};

  std::vector<int> violations(family.size(), 0);
  std::vector<std::string> witnesses(family.size());
  int deficiencies = 0;
  for (int s = 0; s < generics; ++s) {
    GenericBudget budget;
    budget.formulas = family;
    budget.pool = cfg.pool;
    budget.max_len = cfg.len;
    budget.depth = cfg.depth;
    budget.seed = cfg.seed + static_cast<std::uint64_t>(s);
    GenericResult g = build_generic(2, budget, base);
    deficiencies += static_cast<int>(g.deficiencies.size());
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
      Truth sat = holds(base, family[fi], g.enumerations, cfg.depth);
      bool forced = forces(base, g.chain, family[fi], bounds).state == ForceState::forces;
      if (is_true(sat) != forced) {
        ++violations[fi];
        if (witnesses[fi].empty())
          witnesses[fi] = "seed " + std::to_string(budget.seed) + ": holds=" +
                          std::string(to_string(sat)) + " forced=" + (forced ? "yes" : "no");
      }
    }
  }
  for (std::size_t fi = 0; fi < family.size(); ++fi)
    result.add(record(cfg, "truth-lemma", "holds-iff-prefix-forces",
                      to_string(family[fi], &base.signature()), violations[fi] == 0,
                      violations[fi] ? witnesses[fi] : std::to_string(generics) + " generics"));
  result.add(record(cfg, "truth-lemma", "budget-decided", "all seeds", deficiencies == 0,
                    deficiencies ? std::to_string(deficiencies) + " deficiencies" : ""));
  return result;
}

// ---------------------------------------------------------------------------
// extraction: the ladder for the configured operator, plus quotient shape.
// ---------------------------------------------------------------------------

inline SuiteResult run_extraction(const Registry& reg, const SessionConfig& cfg) {
  SuiteResult result;
  const StructureOracle& base = reg.structure(cfg.structure);
  FunctorOperator F = resolve_functor(reg, cfg.functor, base);
  Bounds bounds{cfg.pool, cfg.len, cfg.depth};
  Extraction ex(base, F, bounds);

  bool deep_scan = cfg.functor == "fracfield";  // witnesses live along long prefixes
  ExtractionCheckConfig vcfg;
  if (!deep_scan) {
    vcfg.fragment = {FragmentSpec::Mode::full_tuples, std::min<Elem>(cfg.pool, 8),
                     std::min(cfg.len, 4), cfg.depth, {}};
    vcfg.witnesses = pool_witnesses(base, std::max<Elem>(cfg.pool, base.universe_hint().value_or(0)),
                                    std::min(cfg.len, 3));
    InjectiveTuple seg, mixed;
    for (Elem e = 0; e < cfg.pool; ++e) seg = seg.extended(e);
    std::mt19937_64 rng(cfg.seed + 7);
    std::vector<Elem> perm(static_cast<std::size_t>(cfg.pool));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    vcfg.generics = {seg, InjectiveTuple(perm)};
    vcfg.index_bound = cfg.depth;
    vcfg.naturality_samples = 11;
    vcfg.sample_support = std::max<Elem>(12, cfg.pool);
    vcfg.copy_pool = std::min<Elem>(cfg.pool, 6);
    vcfg.copy_len = 3;
    vcfg.copy_index_bound = std::min(cfg.depth, 5);
    vcfg.seed = cfg.seed;
  } else {
    InjectiveTuple seg;
    for (Elem e = 0; e < 48; ++e) seg = seg.extended(e);
    vcfg.fragment = {FragmentSpec::Mode::generic_prefixes, cfg.pool, cfg.len, 12, {seg}};
    vcfg.witnesses = prefix_witnesses({seg});
    vcfg.generics = {seg};
    vcfg.index_bound = 12;
    vcfg.naturality_samples = 0;  // the quotient comparison below stands in
    vcfg.seed = cfg.seed;
    vcfg.max_unique_checks = 20000;
  }

  LawReport ladder = verify_extraction(ex, vcfg);
  auto emit = [&](const std::string& check) {
    int bad = 0;
    std::string witness;
    for (const auto& v : ladder.violations)
      if (v.check.rfind(check, 0) == 0) {
        ++bad;
        if (witness.empty()) witness = v.instance + " " + v.detail;
      }
    result.add(record(cfg, "extraction", check, F.name + " over " + base.name(), bad == 0, witness));
  };
  emit("sim");
  emit("onto");
  emit("unique");
  emit("iso");
  if (vcfg.naturality_samples > 1) emit("naturality");

  // The quotient fragment against the expected shape.
  if (cfg.functor == "identity") {
    auto fragment = enumerate_fragment(ex, base, vcfg.fragment);
    Partition part = partition_fragment(ex, base, fragment);
    QuotientFragment q = extract_quotient(ex, base, part, vcfg.witnesses);
    FactsTable expected;
    expected.sig = base.signature();
    expected.size = q.class_count;
    for (int sym = 0; sym < expected.sig.size(); ++sym) {
      int arity = expected.sig.arity(sym);
      std::vector<int> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        std::vector<Elem> t(idx.begin(), idx.end());
        if (is_true(base.query(sym, t))) expected.facts.insert({sym, idx});
        int k = arity - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == expected.size) {
          idx[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
    auto perm = quotient_isomorphism(facts_of(q), expected);
    result.add(record(cfg, "extraction", "quotient-isomorphic",
                      "identity over " + base.name() + " on " + std::to_string(q.class_count) +
                          " classes",
                      perm.has_value(), q.undecided.empty() ? "" : "undecided facts remain"));
  }
  if (cfg.functor.rfind("constant:", 0) == 0) {
    const StructureOracle& target = reg.structure(cfg.functor.substr(9));
    auto fragment = enumerate_fragment(ex, base, vcfg.fragment);
    Partition part = partition_fragment(ex, base, fragment);
    QuotientFragment q = extract_quotient(ex, base, part, vcfg.witnesses);
    bool sim_is_index = true;
    for (const auto& a : fragment)
      for (const auto& b : fragment)
        if ((ex.sim(base, a, b) == Membership::in) != (a.index == b.index)) sim_is_index = false;
    result.add(record(cfg, "extraction", "sim-is-index-equality", F.name, sim_is_index, ""));
    bool facts_match = true;
    std::string witness;
    for (int sym = 0; sym < q.sig.size() && facts_match; ++sym) {
      int arity = q.sig.arity(sym);
      std::vector<int> idx(static_cast<std::size_t>(arity), 0);
      for (;;) {
        std::vector<Elem> t;
        for (int v : idx) t.push_back(part.reps[static_cast<std::size_t>(v)].index);
        if (q.holds(sym, idx) != is_true(target.query(sym, t))) {
          facts_match = false;
          witness = "symbol " + q.sig.name(sym);
          break;
        }
        int k = arity - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == q.class_count) {
          idx[static_cast<std::size_t>(k)] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
    result.add(record(cfg, "extraction", "quotient-matches-target",
                      F.name + " on " + std::to_string(q.class_count) + " classes", facts_match,
                      witness));
  }
  if (deep_scan) {
    // Twelve classes against the fixed rational presentation.
    StructureOracle qring = reg.structure("qring");
    std::map<Elem, DomainElement> frak;
    bool complete = true;
    for (Elem i = 0; i < 12; ++i) {
      auto fv = ex.frak_prefix(base, vcfg.generics[0], i);
      if (!fv) complete = false;
      else frak[i] = *fv;
    }
    result.add(record(cfg, "extraction", "frak-complete", "indices 0..11", complete, ""));
    if (complete) {
      bool agree = true;
      std::string witness;
      std::vector<DomainElement> args;
      for (int sym = 0; sym < 2 && agree; ++sym)
        for (Elem i = 0; i < 12 && agree; ++i)
          for (Elem j = 0; j < 12 && agree; ++j)
            for (Elem k = 0; k < 12 && agree; ++k) {
              args = {frak[i], frak[j], frak[k]};
              Membership m = ex.relation(base, sym, args, vcfg.witnesses);
              bool expected = is_true(qring.query(sym, std::vector<Elem>{i, j, k}));
              if ((m == Membership::in) != expected) {
                agree = false;
                witness = qring.signature().name(sym) + "(" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) + ") -> " + to_string(m);
              }
            }
      result.add(record(cfg, "extraction", "quotient-matches-target", "fracfield on 12 classes",
                        agree, witness));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// laws: functor laws for the configured operator over sampled copies.
// ---------------------------------------------------------------------------

inline SuiteResult run_laws(const Registry& reg, const SessionConfig& cfg) {
  SuiteResult result;
  const StructureOracle& base = reg.structure(cfg.structure);
  FunctorOperator F = resolve_functor(reg, cfg.functor, base);
  Elem support = cfg.functor == "fracfield" ? 160 : std::max<Elem>(12, cfg.pool * 2);
  Elem scramble = cfg.functor == "fracfield" ? 10 : support;
  auto samples = sample_copies(base, 8, support, cfg.seed, scramble);
  Elem idx = cfg.functor == "fracfield" ? 8 : std::max(4, cfg.depth);
  LawReport report = check_functor_laws(F, samples, idx);
  std::string witness = report.violations.empty() && report.divergences.empty()
                            ? std::to_string(report.checks) + " checks"
                            : (report.violations.empty() ? report.divergences[0].detail
                                                         : report.violations[0].detail);
  result.add(record(cfg, "laws", "identity-and-composition", F.name + " over " + base.name(),
                    report.passed(), witness));

  // The induced functor of the configured interpretation, when it applies.
  auto it = reg.interpretations.find(cfg.interp);
  if (it != reg.interpretations.end()) {
    EvalBounds eb{std::max<Elem>(cfg.pool, 6), cfg.interp == "fractions" ? 2 : 1, cfg.depth,
                  cfg.interp == "fractions" ? 100 : 16};
    FunctorOperator FI = induced_functor(it->second.first, base, eb);
    LawReport r2 = check_functor_laws(FI, sample_copies(base, 6, support, cfg.seed + 1, scramble),
                                      std::min<Elem>(idx, 4));
    result.add(record(cfg, "laws", "identity-and-composition", FI.name + " over " + base.name(),
                      r2.passed(),
                      r2.passed() ? std::to_string(r2.checks) + " checks"
                                  : r2.violations[0].detail));
  }
  return result;
}

// ---------------------------------------------------------------------------
// biequiv: both directions of the correspondence on a named pair.
// ---------------------------------------------------------------------------

inline SuiteResult run_biequiv(const Registry& reg, const SessionConfig& cfg) {
  SuiteResult result;
  const BiInterpretation& bi = reg.biinterpretation(cfg.biinterp);
  EvalBounds eb{std::max<Elem>(cfg.pool, 6), cfg.biinterp == "pairs" ? 2 : 1, cfg.depth, 16};

  AdjointConstruction fwd = adjoint_from_biinterp(bi, eb, 4, 12, std::min(cfg.depth, 5), cfg.seed);
  result.add(record(cfg, "biequiv", "adjoint-equivalence", bi.name, fwd.report.passed(),
                    fwd.report.passed() ? std::to_string(fwd.report.checks) + " checks"
                                        : fwd.report.violations[0].check + " at " +
                                              fwd.report.violations[0].instance));

  // The class window for the comparison: the registry quotient at the same
  // bounds the adjoint pair was built with.
  InterpFragment registry_frag = interpret(bi.I, bi.presentation_b, eb);
  int window = registry_frag.class_count();

  // Hat pools along pool-covering enumerations: induced operators read whole
  // fragments, so the witnesses must be prefixes of long enough segments.
  auto segment_of = [](Elem n) {
    InjectiveTuple t;
    for (Elem e = 0; e < n; ++e) t = t.extended(e);
    return t;
  };
  InjectiveTuple seg_b = segment_of(std::max<Elem>(eb.pool + 2, 8));
  InjectiveTuple seg_a = segment_of(std::max<Elem>(eb.pool + 4, 10));
  WitnessPool chain_b = prefix_witnesses({seg_b});
  WitnessPool chain_a = prefix_witnesses({seg_a});

  Bounds bounds{std::max<Elem>(cfg.pool, 10), 4, cfg.depth};
  BiInterpretationConstruction back =
      biinterp_from_adjoint(fwd.adj, bi.presentation_b, bi.presentation_a, bounds, chain_b,
                            chain_a, window, cfg.seed + 3);
  result.add(record(cfg, "biequiv", "bi-interpretation-recovered", bi.name, back.report.passed(),
                    back.report.passed() ? std::to_string(back.report.checks) + " checks"
                                         : back.report.violations[0].check));

  // Round trip: the recovered interpretation carries a quotient fragment
  // matching the original one up to a renaming of classes.
  bool same = false;
  std::string witness;
  if (back.exF) {
    FragmentSpec fs{FragmentSpec::Mode::generic_prefixes, eb.pool, seg_b.size(), window, {seg_b}};
    auto fragment = enumerate_fragment(*back.exF, bi.presentation_b, fs);
    Partition part = partition_fragment(*back.exF, bi.presentation_b, fragment);
    QuotientFragment q = extract_quotient(*back.exF, bi.presentation_b, part, chain_b);
    same = q.class_count == window &&
           quotient_isomorphism(facts_of(q), facts_of(registry_frag, bi.I.target_sig)).has_value();
    witness = std::to_string(q.class_count) + " vs " + std::to_string(window) + " classes";
  }
  result.add(record(cfg, "biequiv", "round-trip-classes", bi.name, same, witness));
  return result;
}

// ---------------------------------------------------------------------------
// indiscernibles: class permutations extend, order gates hold.
// ---------------------------------------------------------------------------

inline SuiteResult run_indiscernibles(const Registry& reg, const SessionConfig& cfg) {
  SuiteResult result;
  const StructureOracle& base = reg.structure(cfg.structure);
  const auto& [I, w] = reg.interpretation(cfg.interp);

  EvalBounds eb{std::max<Elem>(cfg.pool, 10), 2, 8, 16};
  std::string err;
  auto witness = extract_indiscernibles(I, base, eb, cfg.threshold, &err);
  result.add(record(cfg, "indiscernibles", "threshold-reached",
                    I.name + " over " + base.name() + " k=" + std::to_string(cfg.threshold),
                    witness.has_value(), witness ? std::to_string(witness->class_count()) + " classes"
                                                 : err));
  if (witness) {
    IndiscernibilityConfig icfg;
    icfg.depth = cfg.depth;
    icfg.max_permutations = cfg.permutations;
    icfg.seed = cfg.seed;
    LawReport report = check_absolute_indiscernibility(base, *witness, icfg);
    result.add(record(cfg, "indiscernibles", "permutations-extend",
                      std::to_string(report.checks) + " permutations at depth " +
                          std::to_string(cfg.depth),
                      report.passed(),
                      report.passed() ? "" : report.violations[0].instance));
  }

  // Negative control: over the usual order the same check must fail, since
  // a class transposition cannot extend.
  {
    StructureOracle omega = reg.structure("omega");
    auto wo = extract_indiscernibles(elements_interpretation(), omega, {6, 1, 8, 16}, 5);
    bool extended_all = true;
    std::string perm_witness;
    if (wo) {
      IndiscernibilityConfig icfg;
      icfg.depth = std::min(cfg.depth, 4);
      icfg.max_permutations = 24;
      icfg.seed = cfg.seed;
      LawReport r = check_absolute_indiscernibility(omega, *wo, icfg);
      extended_all = r.passed();
      if (!extended_all) perm_witness = r.violations[0].instance;
    }
    result.add(record(cfg, "indiscernibles", "permutations-extend", "omega (expected to fail)",
                      extended_all, perm_witness, /*negative_control=*/true));
  }
  return result;
}

}  // namespace suites

/// Runs one named suite; unknown names raise std::out_of_range with the
/// offending name, which the command line maps to a usage error.
inline SuiteResult run_suite(const std::string& name, const Registry& reg,
                             const SessionConfig& cfg) {
  if (name == "forcing-lemmas") return suites::run_forcing_lemmas(reg, cfg);
  if (name == "truth-lemma") return suites::run_truth_lemma(reg, cfg);
  if (name == "extraction") return suites::run_extraction(reg, cfg);
  if (name == "laws") return suites::run_laws(reg, cfg);
  if (name == "biequiv") return suites::run_biequiv(reg, cfg);
  if (name == "indiscernibles") return suites::run_indiscernibles(reg, cfg);
  throw std::out_of_range("unknown suite: " + name);
}

}  // namespace bstar
