// Randomized property suite; the implementations live in property_checks.hpp
// so the acceptance binary can re-run them verbatim. Seeds are fixed.

#include "doctest.h"
#include "property_checks.hpp"
#include "uniserial/criteria.hpp"

using namespace uniserial;
namespace pc = property_checks;

namespace {

void expect_clean(const pc::Outcome& o, long min_cases) {
  CHECK(o.failures == 0);
  CHECK(o.cases >= min_cases);
  if (!o.note.empty()) MESSAGE(o.note);
}

}  // namespace

TEST_CASE("dropout of whole-mast variables") { expect_clean(pc::variable_dropout(), 100); }

TEST_CASE("monomial masthood cross-check") { expect_clean(pc::monomial_masthood(), 100); }

TEST_CASE("segment condition vs sufficient shape") {
  expect_clean(pc::segments_vs_sufficient(), 100);
}

TEST_CASE("iso reflexivity and symmetry audit") {
  expect_clean(pc::iso_reflexivity_symmetry(), 100);
}

TEST_CASE("normalization idempotence and class preservation") {
  expect_clean(pc::normalize_properties(), 100);
}

TEST_CASE("opposite involution") { expect_clean(pc::opposite_involution(), 100); }

TEST_CASE("monomial shortcut agrees with the generic route") {
  expect_clean(pc::monomial_fastpath_agreement(), 100);
}

TEST_CASE("finite type is left-right symmetric") {
  expect_clean(pc::left_right_symmetry(), 100);
}

TEST_CASE("pipeline coherence on binomial relations") {
  expect_clean(pc::binomial_pipeline_coherence(), 25);
}

TEST_CASE("double arrows break the alignment whenever both arrows survive") {
  // arrows are never in an admissible ideal, so parallel arrows always violate
  std::mt19937 rng(66006600);
  int cases = 0;
  while (cases < 100) {
    Presentation P = pc::random_monomial(rng, 4, 5);
    if (!has_double_arrows(P.quiver)) continue;
    CHECK(check_condition_n(P).verdict == Verdict::fails);
    ++cases;
  }
}

TEST_CASE("a violated necessary shape yields five classes on a 5-value grid") {
  struct Case {
    const char* fixture;
    const char* mast;
  };
  for (const Case& c : {Case{"ex36.alg", "a d g b"}, Case{"ex52.alg", "a3 a2 a1 a g g g"},
                        Case{"ex56a.alg", "a5 a4 a3 a1"}}) {
    Presentation P = fixture(c.fixture);
    Path p = parse_path(P.quiver, c.mast);
    VarietyPresentation vp = variety_polynomials(P, p);
    SlackReport rep = slack_report(P, vp);
    std::optional<VarKey> violated;
    for (const auto& cl : rep.vars) {
      if (cl.status != SlackStatus::slack || cl.evidence != "absent") continue;
      if (check_nec_shape(vp.ctx, cl.var).outcome == NecResult::Outcome::violated)
        violated = cl.var;
    }
    REQUIRE(violated.has_value());
    std::vector<PointMap> pts;
    for (int val = -2; val <= 2; ++val) {
      PointMap k;
      for (const auto& v : vp.ctx.vars) k[v] = 0;
      k[*violated] = val;
      for (const auto& poly : vp.polys) REQUIRE(poly.eval(k) == 0);
      pts.push_back(k);
    }
    IsoPartition part = iso_classes(P, vp, pts);
    CHECK(part.classes.size() >= 5);
  }
}

TEST_CASE("satisfied necessary-shape certificates re-validate") {
  for (const auto& name : pc::fixture_names()) {
    Presentation P = fixture(name);
    if (has_double_arrows(P.quiver)) continue;
    if (check_condition_n(P).verdict != Verdict::holds) continue;
    for (const Path& p : pc::masts_up_to(P, P.loewy - 1)) {
      VarietyPresentation vp = variety_polynomials(P, p);
      SlackReport rep = slack_report(P, vp);
      for (const auto& c : rep.vars) {
        if (c.status != SlackStatus::slack) continue;
        NecResult nec = check_nec_shape(vp.ctx, c.var);
        if (nec.outcome == NecResult::Outcome::satisfied)
          CHECK(verify_nec_certificate(vp.ctx, c.var, *nec.decomposition));
      }
    }
  }
}
