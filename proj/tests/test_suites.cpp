#include <catch2/catch_amalgamated.hpp>

#include "bstar/suites.hpp"

using namespace bstar;

TEST_CASE("suite runs are deterministic byte for byte") {
  Registry reg = default_registry();
  SessionConfig cfg;
  cfg.structure = "pureset";
  cfg.pool = 4;
  cfg.len = 4;
  cfg.depth = 4;
  cfg.seed = 12;
  SuiteResult a = suites::run_truth_lemma(reg, cfg, 10);
  SuiteResult b = suites::run_truth_lemma(reg, cfg, 10);
  CHECK(a.to_jsonl() == b.to_jsonl());
  CHECK(a.failures() == 0);
  CHECK_FALSE(a.records.empty());
}

TEST_CASE("unknown names are rejected") {
  Registry reg = default_registry();
  SessionConfig cfg;
  CHECK_THROWS_AS(run_suite("nosuch", reg, cfg), std::out_of_range);
  CHECK_THROWS_AS(reg.structure("nosuch"), std::out_of_range);
  CHECK_THROWS_AS(resolve_functor(reg, "nosuch", make_pure_set()), std::out_of_range);
}

TEST_CASE("laws suite covers registry operators") {
  Registry reg = default_registry();
  SessionConfig cfg;
  cfg.structure = "pairs";
  cfg.functor = "identity";
  cfg.interp = "classes";
  cfg.pool = 6;
  cfg.depth = 4;
  SuiteResult r = suites::run_laws(reg, cfg);
  CHECK(r.failures() == 0);
  CHECK(r.records.size() >= 2);
}

TEST_CASE("indiscernibles suite passes on the matched pairs and flags the order") {
  Registry reg = default_registry();
  SessionConfig cfg;
  cfg.structure = "pairs";
  cfg.interp = "classes";
  cfg.pool = 10;
  cfg.depth = 6;
  cfg.permutations = 120;
  SuiteResult r = suites::run_indiscernibles(reg, cfg);
  CHECK(r.failures() == 0);
  bool negative_failed = false;
  for (const auto& rec : r.records)
    if (rec.negative_control && rec.verdict == "fail") negative_failed = true;
  CHECK(negative_failed);
}

TEST_CASE("report lines come out in canonical sorted order") {
  SuiteResult r;
  r.add({"b-suite", "z", "1", "pass", "", "", false});
  r.add({"a-suite", "a", "2", "pass", "", "", false});
  r.add({"a-suite", "a", "1", "fail", "w", "", true});
  std::string text = r.to_jsonl();
  auto first = text.find("a-suite");
  auto second = text.find("b-suite");
  REQUIRE(first != std::string::npos);
  REQUIRE(second != std::string::npos);
  CHECK(first < second);
  CHECK(r.failures() == 0);  // the only failure is a tagged negative control
}
