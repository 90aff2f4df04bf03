// Command-line front end: forcing queries, interpretation runs, extraction,
// verification suites, bi-interpretation round trips and indiscernibles.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bstar/suites.hpp"

using namespace bstar;

namespace {

int fail_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const SuiteResult& result, const std::string& path) {
  if (path.empty())
    std::cout << result.to_jsonl();
  else
    write_report(result, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for interpretations, forcing and functors between copies"};
  app.require_subcommand(1);
  app.fallthrough();  // global bounds may follow the subcommand

  SessionConfig cfg;
  std::string registry_file;
  app.add_option("--pool", cfg.pool, "element pool bound");
  app.add_option("--len", cfg.len, "tuple length bound");
  app.add_option("--depth", cfg.depth, "unrolling depth for countable families");
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  app.add_option("--report", cfg.report_path, "write report lines to this file");
  app.add_option("--registry", registry_file, "extra declarations to load");

  auto* force_cmd = app.add_subcommand("force", "evaluate the forcing relation at a condition");
  std::string condition_text, formula_file, formula_text;
  force_cmd->add_option("--structure", cfg.structure, "base structure name");
  force_cmd->add_option("--condition", condition_text, "condition, e.g. \"(5,3);(3)\"")->required();
  force_cmd->add_option("--formula", formula_file, "file holding one formula");
  force_cmd->add_option("--formula-text", formula_text, "formula given inline");

  auto* interp_cmd = app.add_subcommand("interpret", "evaluate an interpretation's fragment");
  interp_cmd->add_option("--structure", cfg.structure, "base structure name");
  interp_cmd->add_option("--interp", cfg.interp, "interpretation name");

  auto* extract_cmd = app.add_subcommand("extract", "extract an interpretation from an operator");
  extract_cmd->add_option("--structure", cfg.structure, "base structure name");
  extract_cmd->add_option("--functor", cfg.functor, "operator name");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite_name;
  verify_cmd->add_option("--suite", suite_name, "one of forcing-lemmas, truth-lemma, extraction, laws, biequiv, indiscernibles")->required();
  verify_cmd->add_option("--structure", cfg.structure, "base structure name");
  verify_cmd->add_option("--functor", cfg.functor, "operator name");
  verify_cmd->add_option("--interp", cfg.interp, "interpretation name");
  verify_cmd->add_option("--biinterp", cfg.biinterp, "bi-interpretation name");

  auto* bi_cmd = app.add_subcommand("biinterp", "bi-interpretations and adjoint equivalences");
  std::string to_adjoint, from_adjoint;
  bi_cmd->add_option("--to-adjoint", to_adjoint, "build and check the adjoint pair of this bi-interpretation");
  bi_cmd->add_option("--from-adjoint", from_adjoint, "full round trip through the adjoint pair of this bi-interpretation");

  auto* ind_cmd = app.add_subcommand("indiscernibles", "extract classes and test indiscernibility");
  ind_cmd->add_option("--structure", cfg.structure, "base structure name");
  ind_cmd->add_option("--interp", cfg.interp, "interpretation of the relationless structure");
  ind_cmd->add_option("--k", cfg.threshold, "classes required");
  ind_cmd->add_option("--perms", cfg.permutations, "permutations to test");

  CLI11_PARSE(app, argc, argv);

  try {
    Registry reg = default_registry();
    load_default_registry_file(reg);
    if (!registry_file.empty()) load_registry_file(reg, registry_file);

    if (force_cmd->parsed()) {
      const StructureOracle& base = reg.structure(cfg.structure);
      Condition p = parse_condition(condition_text);
      if (formula_file.empty() == formula_text.empty())
        return fail_usage("force needs exactly one of --formula, --formula-text");
      std::string text = formula_file.empty() ? formula_text : read_file(formula_file);
      FormulaPtr f = parse_formula(text, p.width(), &base.signature());
      ForcingVerdict v = forces(base, p, f, Bounds{cfg.pool, cfg.len, cfg.depth});
      SuiteResult result;
      result.add({"force", "verdict", p.to_string() + " : " + to_string(f, &base.signature()),
                  to_string(v.state), v.detail,
                  cfg.bounds_text(), false});
      emit(result, cfg.report_path);
      return 0;
    }

    if (interp_cmd->parsed()) {
      const StructureOracle& base = reg.structure(cfg.structure);
      const auto& [I, w] = reg.interpretation(cfg.interp);
      EvalBounds eb{cfg.pool, cfg.len, cfg.depth, std::max<Elem>(64, cfg.pool * cfg.pool)};
      InterpFragment frag = interpret(I, base, eb);
      SuiteResult result;
      result.add({"interpret", "fragment", I.name + " over " + base.name(),
                  frag.violations.empty() ? "pass" : "fail",
                  std::to_string(frag.class_count()) + " classes" +
                      (frag.provisional ? " (provisional)" : ""),
                  cfg.bounds_text(), false});
      for (const auto& v : frag.violations)
        result.add({"interpret", "axiom", I.name, "fail", v, cfg.bounds_text(), false});
      emit(result, cfg.report_path);
      return result.failures() == 0 ? 0 : 1;
    }

    if (extract_cmd->parsed() || verify_cmd->parsed()) {
      SuiteResult result = extract_cmd->parsed() ? run_suite("extraction", reg, cfg)
                                                 : run_suite(suite_name, reg, cfg);
      emit(result, cfg.report_path);
      return result.failures() == 0 ? 0 : 1;
    }

    if (bi_cmd->parsed()) {
      if (to_adjoint.empty() == from_adjoint.empty())
        return fail_usage("biinterp needs exactly one of --to-adjoint, --from-adjoint");
      SessionConfig sub = cfg;
      sub.biinterp = to_adjoint.empty() ? from_adjoint : to_adjoint;
      const BiInterpretation& bi = reg.biinterpretation(sub.biinterp);
      SuiteResult result;
      if (!to_adjoint.empty()) {
        EvalBounds eb{std::max<Elem>(cfg.pool, 6), sub.biinterp == "pairs" ? 2 : 1, cfg.depth, 16};
        AdjointConstruction fwd =
            adjoint_from_biinterp(bi, eb, 4, 12, std::min(cfg.depth, 5), cfg.seed);
        result.add({"biinterp", "adjoint-equivalence", bi.name,
                    fwd.report.passed() ? "pass" : "fail",
                    std::to_string(fwd.report.checks) + " checks", cfg.bounds_text(), false});
      } else {
        result = suites::run_biequiv(reg, sub);
      }
      emit(result, cfg.report_path);
      return result.failures() == 0 ? 0 : 1;
    }

    if (ind_cmd->parsed()) {
      SuiteResult result = run_suite("indiscernibles", reg, cfg);
      emit(result, cfg.report_path);
      return result.failures() == 0 ? 0 : 1;
    }
  } catch (const parse_error& e) {
    return fail_usage(e.what());
  } catch (const std::out_of_range& e) {
    return fail_usage(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
