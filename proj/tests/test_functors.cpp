#include <catch2/catch_amalgamated.hpp>

#include "bstar/functor_registry.hpp"
#include "bstar/laws.hpp"

using namespace bstar;

namespace {

// Independent fraction arithmetic for checking the fraction-field operator:
// the canonical fraction enumeration replayed with plain integer math.
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
    bool duplicate = false;
    for (const Frac& f : out)
      if (a * f.den == f.num * b) duplicate = true;
    if (!duplicate) out.push_back({a, b});
  }
  return out;
}

}  // namespace

TEST_CASE("identity and constant operators satisfy the functor laws") {
  StructureOracle pairs = make_matched_pairs();
  auto samples = sample_copies(pairs, 6, 12, 17);

  LawReport id_report = check_functor_laws(identity_functor(pairs), samples, 8);
  CHECK(id_report.passed());
  CHECK(id_report.violations.empty());

  StructureOracle dlo = make_dense_order();
  LawReport c_report = check_functor_laws(constant_functor(pairs, dlo), samples, 8);
  CHECK(c_report.passed());
  CHECK(c_report.insufficiencies.empty());  // reads no oracle, nothing can run out

  LawReport r_report = check_functor_laws(reindex_functor(pairs), samples, 8);
  CHECK(r_report.passed());
}

TEST_CASE("composite operators inherit the laws") {
  StructureOracle pairs = make_matched_pairs();
  auto samples = sample_copies(pairs, 5, 12, 29);
  FunctorOperator twice = compose_functors(reindex_functor(pairs), reindex_functor(pairs));
  LawReport report = check_functor_laws(twice, samples, 8);
  CHECK(report.passed());

  // Double reindexing is the identity on values.
  Copy c = samples[1];
  StructureOracle o = c.oracle();
  MorphismData idm{o, o, [](Elem m) -> std::optional<Elem> { return m; },
                   [](Elem m) -> std::optional<Elem> { return m; }};
  for (Elem i = 0; i < 8; ++i) CHECK(apply_morphism(twice, idm, i) == i);
}

TEST_CASE("divergent operators are reported with the offending query") {
  StructureOracle pairs = make_matched_pairs();
  auto samples = sample_copies(pairs, 3, 8, 3);
  LawReport report = check_functor_laws(divergent_functor(pairs), samples, 2);
  CHECK_FALSE(report.passed());
  REQUIRE_FALSE(report.divergences.empty());
  CHECK(report.divergences[0].detail.find("iso") != std::string::npos);
}

TEST_CASE("answers depend only on the recorded use") {
  StructureOracle pairs = make_matched_pairs();
  auto samples = sample_copies(pairs, 4, 10, 7);
  FunctorOperator F = class_collapse_functor();
  MorphismData h = morphism_between(samples[1], samples[2]);
  for (Elem c = 0; c < 4; ++c) {
    Transcript t;
    auto v = apply_morphism(F, h, c, &t);
    REQUIRE(v.has_value());
    CHECK_FALSE(t.empty());
    CHECK(replay_morphism(F, t, c) == v);
  }
}

TEST_CASE("class collapse sends pair swaps to the identity") {
  StructureOracle pairs = make_matched_pairs();
  FunctorOperator F = class_collapse_functor();
  Copy canon = canonical_copy(pairs, 12);
  StructureOracle o = canon.oracle();

  SECTION("swap within one pair") {
    PartialInjection swap01;
    swap01.insert(0, 1);
    swap01.insert(1, 0);
    for (Elem e = 2; e < 12; ++e) swap01.insert(e, e);
    MorphismData m = morphism_data(o, o, swap01);
    for (Elem c = 0; c < 5; ++c) CHECK(apply_morphism(F, m, c) == c);
  }

  SECTION("swapping two pairs transposes their classes") {
    PartialInjection swap;
    swap.insert(0, 2);
    swap.insert(1, 3);
    swap.insert(2, 0);
    swap.insert(3, 1);
    for (Elem e = 4; e < 12; ++e) swap.insert(e, e);
    MorphismData m = morphism_data(o, o, swap);
    CHECK(apply_morphism(F, m, 0) == 1);
    CHECK(apply_morphism(F, m, 1) == 0);
    CHECK(apply_morphism(F, m, 2) == 2);
  }
}

TEST_CASE("fraction field operator on the canonical integer ring") {
  StructureOracle z = make_integer_ring();
  FunctorOperator F = fraction_field_functor();
  Copy canon = canonical_copy(z, 128);
  StructureOracle q = apply_structure(F, canon.oracle());

  auto fr = first_fractions(12);
  REQUIRE(fr.size() == 12);
  // Spot anchors of the canonical fraction order.
  CHECK(fr[0].num == 0);
  CHECK(fr[1].num == 1);
  CHECK(fr[1].den == 1);
  CHECK(fr[3].num * 2 == fr[3].den);  // one half

  SECTION("addition and multiplication facts match plain arithmetic") {
    for (Elem i = 0; i < 6; ++i)
      for (Elem j = 0; j < 6; ++j)
        for (Elem k = 0; k < 6; ++k) {
          bool add_expected =
              fr[i].num * fr[j].den * fr[k].den + fr[j].num * fr[i].den * fr[k].den ==
              fr[k].num * fr[i].den * fr[j].den;
          bool mul_expected = fr[i].num * fr[j].num * fr[k].den == fr[k].num * fr[i].den * fr[j].den;
          CHECK(is_true(q.query(0, std::vector<Elem>{i, j, k})) == add_expected);
          CHECK(is_true(q.query(1, std::vector<Elem>{i, j, k})) == mul_expected);
        }
  }

  SECTION("composition law on scrambled copies") {
    auto samples = sample_copies(z, 5, 160, 51, 12);
    LawReport report = check_functor_laws(F, samples, 8);
    std::string first = report.violations.empty() ? std::string() : report.violations[0].detail;
    INFO(first);
    CHECK(report.passed());
    CHECK(report.checks > 0);
    CHECK(static_cast<int>(report.insufficiencies.size()) < report.checks);
  }
}

TEST_CASE("natural isomorphism checks") {
  StructureOracle pairs = make_matched_pairs();
  FunctorOperator F = identity_functor(pairs);
  auto samples = sample_copies(pairs, 5, 12, 23);

  SECTION("the identity transformation commutes") {
    LawReport report = check_natural_iso(F, F, identity_transformation(), samples, 8);
    CHECK(report.passed());
  }

  SECTION("a corrupted component is reported with its square") {
    NaturalTransformation bad{"swapped", [](const StructureOracle&, Elem m) -> std::optional<Elem> {
                                if (m == 0) return 1;
                                if (m == 1) return 0;
                                return m;
                              }};
    LawReport report = check_natural_iso(F, F, bad, samples, 6);
    CHECK_FALSE(report.passed());
    bool square_named = false;
    for (const auto& v : report.violations)
      if (v.check == "square") square_named = true;
    CHECK(square_named);
  }
}

TEST_CASE("identity adjoint equivalence passes all four families of checks") {
  StructureOracle pairs = make_matched_pairs();
  AdjointData adj{identity_functor(pairs), identity_functor(pairs), identity_transformation(),
                  identity_transformation()};
  auto samples = sample_copies(pairs, 4, 12, 31);
  LawReport report = check_adjoint_equivalence(adj, samples, samples, 6);
  CHECK(report.passed());

  SECTION("a perturbed counit breaks a triangle identity") {
    AdjointData broken = adj;
    broken.epsilon = {"bent", [](const StructureOracle&, Elem m) -> std::optional<Elem> {
                        if (m == 0) return 2;
                        if (m == 2) return 0;
                        return m;
                      }};
    LawReport bad = check_adjoint_equivalence(broken, samples, samples, 6);
    CHECK_FALSE(bad.passed());
    bool triangle_named = false;
    for (const auto& v : bad.violations)
      if (v.check.rfind("triangle", 0) == 0) triangle_named = true;
    CHECK(triangle_named);
  }
}
