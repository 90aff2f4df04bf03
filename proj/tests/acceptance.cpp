// Acceptance runs: one case per criterion, each printing a pass/fail line.
#include <catch2/catch_amalgamated.hpp>
#include <chrono>
#include <iostream>

#include "bstar/suites.hpp"

using namespace bstar;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report_line(int criterion, const std::string& what, bool ok, double secs) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion-" << criterion << ": " << what << " ("
            << secs << " s)" << std::endl;
}

const Registry& registry() {
  static Registry reg = default_registry();
  return reg;
}

std::string failures_text(const SuiteResult& r) {
  std::string s;
  for (const auto& rec : r.records)
    if (rec.counts_as_failure()) s += rec.check + " @ " + rec.instance + " : " + rec.witness + "; ";
  return s;
}

// Criterion 1 and 3 share the forcing-lemma runs.
const std::map<std::string, SuiteResult>& forcing_runs() {
  static std::map<std::string, SuiteResult> runs = [] {
    std::map<std::string, SuiteResult> out;
    for (const std::string s : {"pureset", "pairs"}) {
      SessionConfig cfg;
      cfg.structure = s;
      cfg.pool = 5;
      cfg.len = 5;
      cfg.depth = 4;
      cfg.seed = 2026;
      out.emplace(s, suites::run_forcing_lemmas(registry(), cfg));
    }
    return out;
  }();
  return runs;
}

// Test-side fraction arithmetic, independent of the library's searches.
struct Frac {
  long long num, den;
};
long long int_at(int i) { return i == 0 ? 0 : (i % 2 ? (i + 1) / 2 : -(i / 2)); }

std::vector<Frac> first_fractions(int count) {
  std::vector<Frac> out;
  for (int code = 0; static_cast<int>(out.size()) < count; ++code) {
    int w = 0;
    while ((w + 1) * (w + 2) / 2 <= code) ++w;
    long long a = int_at(code - w * (w + 1) / 2);
    long long b = int_at(w - (code - w * (w + 1) / 2));
    if (b == 0) continue;
    bool dup = false;
    for (const Frac& f : out)
      if (a * f.den == f.num * b) dup = true;
    if (!dup) out.push_back({a, b});
  }
  return out;
}

}  // namespace

TEST_CASE("criterion 1: forcing lemmas hold exactly on the template family") {
  Timer t;
  bool ok = true;
  std::string detail;
  for (const auto& [name, result] : forcing_runs()) {
    for (const auto& rec : result.records) {
      if (rec.check == "definability-agreement") continue;  // criterion 3
      if (rec.counts_as_failure()) {
        ok = false;
        detail = name + ": " + rec.check + " @ " + rec.instance;
      }
    }
  }
  double secs = t.seconds();
  ok = ok && secs < 60.0;
  report_line(1, "extension monotonicity, consistency, decidability over pureset and pairs", ok,
              secs);
  INFO(detail);
  REQUIRE(ok);
}

TEST_CASE("criterion 2: satisfaction along 100 seeded generics matches prefix forcing") {
  Timer t;
  SessionConfig cfg;
  cfg.structure = "pureset";
  cfg.pool = 5;
  cfg.len = 5;
  cfg.depth = 4;
  cfg.seed = 90;
  SuiteResult r = suites::run_truth_lemma(registry(), cfg, 100);
  bool ok = r.failures() == 0 && !r.records.empty();
  double secs = t.seconds();
  ok = ok && secs < 60.0;
  report_line(2, "truth lemma over 100 budget generics, ranks up to two", ok, secs);
  INFO(failures_text(r));
  REQUIRE(ok);
}

TEST_CASE("criterion 3: the compiled forcing predicate agrees with the engine") {
  Timer t;
  bool ok = false;
  std::string witness;
  for (const auto& rec : forcing_runs().at("pureset").records)
    if (rec.check == "definability-agreement") {
      ok = rec.verdict == "pass";
      witness = rec.witness;
    }
  double secs = t.seconds();
  report_line(3, "definability agreement on 200 sampled restricted sentences", ok, secs);
  INFO(witness);
  REQUIRE(ok);
}

TEST_CASE("criterion 4: identity extraction reproduces the base fragment") {
  Timer t;
  SessionConfig cfg;
  cfg.structure = "pairs";
  cfg.functor = "identity";
  cfg.pool = 8;
  cfg.len = 4;
  cfg.depth = 8;
  cfg.seed = 4;
  SuiteResult r = suites::run_extraction(registry(), cfg);
  bool ok = r.failures() == 0;
  bool saw_iso = false, saw_nat = false;
  for (const auto& rec : r.records) {
    if (rec.check == "quotient-isomorphic" && rec.verdict == "pass") saw_iso = true;
    if (rec.check == "naturality" && rec.verdict == "pass") saw_nat = true;
  }
  double secs = t.seconds();
  ok = ok && saw_iso && saw_nat && secs < 120.0;
  report_line(4, "identity-operator extraction ladder and quotient isomorphism", ok, secs);
  INFO(failures_text(r));
  REQUIRE(ok);
}

TEST_CASE("criterion 5: constant extraction is the fixed target with index equality") {
  Timer t;
  SessionConfig cfg;
  cfg.structure = "pureset";
  cfg.functor = "constant:dlo";
  cfg.pool = 6;
  cfg.len = 3;
  cfg.depth = 8;
  cfg.seed = 5;
  SuiteResult r = suites::run_extraction(registry(), cfg);
  bool ok = r.failures() == 0;
  bool saw_sim = false, saw_target = false;
  for (const auto& rec : r.records) {
    if (rec.check == "sim-is-index-equality" && rec.verdict == "pass") saw_sim = true;
    if (rec.check == "quotient-matches-target" && rec.verdict == "pass" &&
        rec.instance.find("8 classes") != std::string::npos)
      saw_target = true;
  }
  double secs = t.seconds();
  ok = ok && saw_sim && saw_target && secs < 60.0;
  report_line(5, "constant-operator extraction on 8 classes", ok, secs);
  INFO(failures_text(r));
  REQUIRE(ok);
}

TEST_CASE("criterion 6: the fraction-field pipeline end to end") {
  Timer t;
  const StructureOracle& z = registry().structure("zring");

  // Hand-written interpretation: axioms, witness, twelve classes.
  Interpretation I = fraction_interpretation();
  EvalBounds eb{8, 2, 8, 300};
  InterpFragment frag = interpret(I, z, eb);
  bool interp_ok = frag.violations.empty() && !frag.provisional && frag.class_count() >= 12;
  auto witness_issues = check_witness(I, fraction_witness(), z, registry().structure("qring"), frag, eb);
  interp_ok = interp_ok && witness_issues.empty();

  // Induced operator laws on 50 sampled composable pairs.
  FunctorOperator FI = induced_functor(I, z, eb);
  auto samples = sample_copies(z, 52, 160, 606, 10);
  LawReport laws = check_functor_laws(FI, samples, 4);
  bool laws_ok = laws.passed() && laws.checks >= 50;

  // Extraction of the fraction-field operator against the fixed rationals.
  SessionConfig cfg;
  cfg.structure = "zring";
  cfg.functor = "fracfield";
  cfg.pool = 16;
  cfg.len = 40;
  cfg.depth = 12;
  cfg.seed = 6;
  SuiteResult r = suites::run_extraction(registry(), cfg);
  bool extraction_ok = r.failures() == 0;

  // The fixed rational presentation itself against plain pair arithmetic.
  auto fr = first_fractions(12);
  const StructureOracle& qring = registry().structure("qring");
  bool oracle_ok = true;
  for (Elem i = 0; i < 12 && oracle_ok; ++i)
    for (Elem j = 0; j < 12 && oracle_ok; ++j)
      for (Elem k = 0; k < 12 && oracle_ok; ++k) {
        bool add = (fr[i].num * fr[j].den + fr[j].num * fr[i].den) * fr[k].den ==
                   fr[k].num * fr[i].den * fr[j].den;
        bool mul = fr[i].num * fr[j].num * fr[k].den == fr[k].num * fr[i].den * fr[j].den;
        if (is_true(qring.query(0, std::vector<Elem>{i, j, k})) != add) oracle_ok = false;
        if (is_true(qring.query(1, std::vector<Elem>{i, j, k})) != mul) oracle_ok = false;
      }

  double secs = t.seconds();
  bool ok = interp_ok && laws_ok && extraction_ok && oracle_ok && secs < 120.0;
  report_line(6, "fraction-field interpretation, induced laws, extraction on 12 classes", ok, secs);
  INFO("interp=" + std::to_string(interp_ok) + " laws=" + std::to_string(laws_ok) +
       " extraction=" + std::to_string(extraction_ok) + " oracle=" + std::to_string(oracle_ok) +
       " " + failures_text(r));
  REQUIRE(ok);
}

TEST_CASE("criterion 7: bi-interpretation round trips") {
  Timer t;
  bool ok = true;
  std::string detail;
  for (const std::string name : {"identity", "pairs"}) {
    SessionConfig cfg;
    cfg.biinterp = name;
    cfg.pool = 6;
    cfg.depth = 5;
    cfg.seed = 7;
    SuiteResult r = suites::run_biequiv(registry(), cfg);
    if (r.failures() != 0) {
      ok = false;
      detail += name + ": " + failures_text(r);
    }
  }
  double secs = t.seconds();
  ok = ok && secs < 120.0;
  report_line(7, "adjoint equivalences from bi-interpretations and back", ok, secs);
  INFO(detail);
  REQUIRE(ok);
}

TEST_CASE("criterion 8: indiscernible classes") {
  Timer t;
  SessionConfig cfg;
  cfg.structure = "pairs";
  cfg.interp = "classes";
  cfg.pool = 10;
  cfg.depth = 6;
  cfg.threshold = 5;
  cfg.permutations = 120;
  cfg.seed = 8;
  SuiteResult r = suites::run_indiscernibles(registry(), cfg);
  bool ok = r.failures() == 0;
  bool positive_seen = false, negative_failed = false;
  int perms_checked = 0;
  for (const auto& rec : r.records) {
    if (rec.check == "permutations-extend" && !rec.negative_control && rec.verdict == "pass") {
      positive_seen = true;
      perms_checked = std::stoi(rec.instance);
    }
    if (rec.negative_control && rec.verdict == "fail") negative_failed = true;
  }
  double secs = t.seconds();
  ok = ok && positive_seen && perms_checked == 120 && negative_failed && secs < 60.0;
  report_line(8, "all 120 class permutations extend; the rigid order refuses one", ok, secs);
  INFO(failures_text(r));
  REQUIRE(ok);
}

TEST_CASE("criterion 9: reports are byte-identical under a fixed seed") {
  Timer t;
  const Registry& reg = registry();
  bool ok = true;
  std::string which;

  auto rerun = [&](const std::string& suite, SessionConfig cfg) {
    SuiteResult a = run_suite(suite, reg, cfg);
    SuiteResult b = run_suite(suite, reg, cfg);
    if (a.to_jsonl() != b.to_jsonl() || a.to_jsonl().empty()) {
      ok = false;
      which += suite + " ";
    }
  };

  SessionConfig small;
  small.structure = "pureset";
  small.pool = 4;
  small.len = 4;
  small.depth = 4;
  small.seed = 99;
  rerun("forcing-lemmas", small);

  SessionConfig truth = small;
  rerun("truth-lemma", truth);

  SessionConfig ext = small;
  ext.structure = "pairs";
  ext.functor = "identity";
  ext.pool = 6;
  ext.len = 3;
  ext.depth = 5;
  rerun("extraction", ext);

  SessionConfig laws = ext;
  laws.interp = "classes";
  rerun("laws", laws);

  SessionConfig bi = small;
  bi.biinterp = "identity";
  bi.pool = 6;
  bi.depth = 5;
  rerun("biequiv", bi);

  SessionConfig ind = small;
  ind.structure = "pairs";
  ind.interp = "classes";
  ind.pool = 10;
  ind.depth = 6;
  rerun("indiscernibles", ind);

  double secs = t.seconds();
  report_line(9, "all six suites rerun byte-identically", ok, secs);
  INFO(which);
  REQUIRE(ok);
}
