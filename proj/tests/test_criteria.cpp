#include "doctest.h"
#include "helpers.hpp"
#include "uniserial/criteria.hpp"

using namespace uniserial;

TEST_CASE("arrow alignment holds on ex36") {
  CHECK(check_condition_n(fixture("ex36.alg")).verdict == Verdict::holds);
}

TEST_CASE("double arrows always break the alignment") {
  Presentation P = parse_presentation(
      "vertices: 1 2\narrow b: 1 -> 2\narrow c: 1 -> 2\nloewy: 2\n");
  ConditionNReport rep = check_condition_n(P);
  CHECK(rep.verdict == Verdict::fails);
  REQUIRE_FALSE(rep.violations.empty());
}

TEST_CASE("a shortcut arrow across a chain violates the alignment") {
  Presentation P = parse_presentation(
      "vertices: 1 2 3\narrow b: 1 -> 2\narrow c: 2 -> 3\narrow d: 1 -> 3\nloewy: 3\n");
  ConditionNReport rep = check_condition_n(P);
  CHECK(rep.verdict == Verdict::fails);
  bool found = false;
  for (const auto& v : rep.violations)
    if (P.quiver.arrow(v.arrow).name == "d" && render_path(P.quiver, v.mast) == "c b")
      found = true;
  CHECK(found);
}

TEST_CASE("finite-variety alignment fails left but holds right on ex42c") {
  Presentation P = fixture("ex42c.alg");
  VarietiesFiniteReport left = check_all_varieties_finite(P);
  CHECK(left.verdict == Verdict::fails);
  bool found = false;
  for (const auto& v : left.violations)
    if (P.quiver.arrow(v.arrow).name == "b" && render_path(P.quiver, v.mast) == "b a")
      found = true;
  CHECK(found);
  CHECK(check_all_varieties_finite(opposite_presentation(P)).verdict == Verdict::holds);
}

TEST_CASE("finite-variety alignment holds on a plain chain") {
  Presentation P = parse_presentation(
      "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nloewy: 3\n");
  CHECK(check_all_varieties_finite(P).verdict == Verdict::holds);
}

TEST_CASE("loop case on ex52") {
  Presentation P = fixture("ex52.alg");
  Path p = parse_path(P.quiver, "a2 a1 a g g g");
  LoopCaseResult lc = check_loop_case(P, p, slack_report(P, p));
  CHECK(lc.applicable);
  CHECK(lc.finite == Verdict::holds);
  CHECK(lc.mu == 3);
  CHECK(lc.nu == 3);
  CHECK(lc.no_tight_halyards);

  Path q = parse_path(P.quiver, "a3 a2 a1 a g g g");
  LoopCaseResult lcq = check_loop_case(P, q, slack_report(P, q));
  CHECK(lcq.applicable);
  CHECK(lcq.finite == Verdict::fails);
}

TEST_CASE("loop case does not apply without a loop at the start") {
  Presentation P = fixture("ex36.alg");
  Path p = parse_path(P.quiver, "d g b a");
  CHECK_FALSE(check_loop_case(P, p, slack_report(P, p)).applicable);
}

TEST_CASE("necessary shape on ex56a") {
  Presentation P = fixture("ex56a.alg");
  Path p = parse_path(P.quiver, "a5 a4 a3 a1 a2 a1");
  MastContext ctx = build_mast_context(P, p);

  // slack variable of (a5, a1): target subpath is the whole mast
  VarKey xb;
  for (const auto& v : ctx.vars)
    if (v.arrow == "a5" && v.u_len == 1) xb = v;
  NecResult nec = check_nec(P, p, xb);
  CHECK(nec.outcome == NecResult::Outcome::satisfied);
  REQUIRE(nec.decomposition.has_value());
  CHECK(nec.decomposition->w_len == 2);
  CHECK(verify_nec_certificate(ctx, xb, *nec.decomposition));

  // slack variable of (a3, a1)
  VarKey xa;
  for (const auto& v : ctx.vars)
    if (v.arrow == "a3" && v.u_len == 1) xa = v;
  NecResult neca = check_nec(P, p, xa);
  CHECK(neca.outcome == NecResult::Outcome::satisfied);
  CHECK(verify_nec_certificate(ctx, xa, *neca.decomposition));

  // the shorter mast has no recurrence, so the shape fails
  Path q = parse_path(P.quiver, "a5 a4 a3 a1");
  MastContext qctx = build_mast_context(P, q);
  VarKey xq = qctx.vars.at(0);
  NecResult necq = check_nec(P, q, xq);
  CHECK(necq.outcome == NecResult::Outcome::violated);
  CHECK(necq.tried_cycles.empty());

  // tight variables are rejected up front
  VarKey xc;
  for (const auto& v : ctx.vars)
    if (v.arrow == "a5" && v.u_len == 3) xc = v;
  CHECK_THROWS_AS(check_nec(P, p, xc), Error);
}

TEST_CASE("necessary shape fails on the dual mast of the opposite of ex56a") {
  Presentation O = opposite_presentation(fixture("ex56a.alg"));
  Path pd = parse_path(O.quiver, "a1 a2 a1 a3 a4 a5");
  VarietyPresentation vp = variety_polynomials(O, pd);
  // V = V(X1 - 1) inside the plane, second variable slack
  REQUIRE(vp.polys.size() == 1);
  CHECK(vp.polys[0].str() == "X[a1,1,1] - 1");
  VarKey slack_var;
  for (const auto& v : vp.ctx.vars)
    if (v.v_len == 6) slack_var = v;
  NecResult nec = check_nec(O, pd, slack_var);
  CHECK(nec.outcome == NecResult::Outcome::violated);
}

TEST_CASE("sufficient shape on ex59 and its failure on ex36") {
  Presentation P59 = fixture("ex59.alg");
  for (const Path& m : nonzero_paths(P59, P59.loewy - 1)) {
    if (m.length() < 1) continue;
    SufResult suf = check_suf(P59, m);
    CHECK(suf.all == Verdict::holds);
  }

  Presentation P36 = fixture("ex36.alg");
  Path q = parse_path(P36.quiver, "a d g b");
  SufResult suf = check_suf(P36, q);
  CHECK(suf.all == Verdict::fails);

  // a mast with no slack variables is vacuously fine
  Presentation P23e = fixture("ex23e.alg");
  SufResult sufe = check_suf(P23e, parse_path(P23e.quiver, "a2 a1"));
  CHECK(sufe.all == Verdict::holds);
}

TEST_CASE("cycle factorization holds on every halyard of ex59") {
  // some detours carry words that already lie in the ideal; their variables
  // are forced to zero and they are not halyards, so the affine-space
  // conclusion concerns the halyard variables only
  Presentation P = fixture("ex59.alg");
  for (const Path& m : nonzero_paths(P, P.loewy - 1)) {
    if (m.length() < 1) continue;
    VarietyPresentation vp = variety_polynomials(P, m);
    SlackReport rep = slack_report(P, vp);
    CHECK(cycle_factorization_on_halyards(vp.ctx, rep));
    // the defining set only pins non-halyard variables, each to zero
    for (const auto& c : rep.vars) {
      int d = vp.ctx.detour_of(c.var);
      bool halyard_detour = !rep.detours[d].halyard.has_value() || *rep.detours[d].halyard;
      if (occurs(c.var, vp.polys)) {
        CHECK_FALSE(halyard_detour);
        CHECK(c.status == SlackStatus::tight);
        CHECK(c.values == std::vector<Rational>{Rational(0)});
      }
    }
  }
}

TEST_CASE("when every detour factors uniformly the defining set is empty") {
  for (const char* name : {"ex36.alg", "ex52.alg", "ex23a.alg", "ex59.alg"}) {
    Presentation P = fixture(name);
    if (!P.monomial) continue;
    for (const Path& m : nonzero_paths(P, P.loewy - 1)) {
      if (m.length() < 1) continue;
      MastContext ctx = build_mast_context(P, m);
      if (uniform_cycle_factorization(ctx)) CHECK(variety_polynomials(P, m).polys.empty());
    }
  }
}

TEST_CASE("monomial segment condition") {
  MonomialSegmentReport r36 = check_monomial_segments(fixture("ex36.alg"));
  CHECK_FALSE(r36.holds);
  REQUIRE(r36.witness.has_value());
  {
    Presentation P = fixture("ex36.alg");
    CHECK(render_path(P.quiver, r36.witness->path) == "a d g b");
    CHECK(r36.witness->i == 1);
    CHECK(r36.witness->j == 3);
  }
  CHECK(check_monomial_segments(fixture("ex59.alg")).holds);
  CHECK(check_monomial_segments(fixture("ex42c.alg")).holds);
  CHECK_THROWS_AS(check_monomial_segments(fixture("ex23d.alg")), Error);
}

TEST_CASE("halyard catalogue accepts the loop-exit and two-step shapes") {
  // p = a g with a loop g: the halyard (a, e) embeds in the first shape
  Presentation P = parse_presentation(
      "vertices: 1 2\narrow g: 1 -> 1\narrow a: 1 -> 2\nrelations:\ng g\n");
  Path p = parse_path(P.quiver, "a g");
  CatalogueResult cat = check_halyard_catalogue(P, p, slack_report(P, p));
  CHECK(cat.conforms == Verdict::holds);
  bool matched = false;
  for (const auto& e : cat.entries)
    if (e.matched) matched = true;
  CHECK(matched);

  // p = g a b a as in the two-step-return shape
  Presentation P2 = parse_presentation(
      "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 1\narrow g: 2 -> 3\nloewy: 5\n");
  Path p2 = parse_path(P2.quiver, "g a b a");
  CatalogueResult cat2 = check_halyard_catalogue(P2, p2, slack_report(P2, p2));
  CHECK(cat2.conforms == Verdict::holds);
  bool matched_two_step = false;
  for (const auto& e : cat2.entries)
    if (e.pattern == "two-step-return") matched_two_step = true;
  CHECK(matched_two_step);
}

TEST_CASE("halyard catalogue covers the length-5 shapes") {
  // loop at the start: ladder of exits into a short tail
  Presentation P1 = parse_presentation(
      "vertices: 0 1 2\narrow g: 0 -> 0\narrow a: 0 -> 1\narrow c: 1 -> 2\nrelations:\ng g g "
      "g\n");
  Path p1 = parse_path(P1.quiver, "c a g g g");
  CatalogueResult cat1 = check_halyard_catalogue(P1, p1, slack_report(P1, p1));
  CHECK(cat1.conforms == Verdict::holds);
  int matched_mid = 0;
  for (const auto& e : cat1.entries)
    if (!e.top && e.matched) ++matched_mid;
  CHECK(matched_mid >= 2);  // the exits from layers 1 and 2

  // no loop at the start: the two-step return with a one-step tail
  Presentation P2 = parse_presentation(
      "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 1\narrow g: 2 -> 3\narrow h: 3 -> "
      "4\nloewy: 6\n");
  Path p2 = parse_path(P2.quiver, "h g a b a");
  CatalogueResult cat2 = check_halyard_catalogue(P2, p2, slack_report(P2, p2));
  CHECK(cat2.conforms == Verdict::holds);
  bool tail1 = false;
  for (const auto& e : cat2.entries)
    if (e.pattern == "two-step-return-tail1") tail1 = true;
  CHECK(tail1);

  // no loop at the start: the three-step return
  Presentation P3 = parse_presentation(
      "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\narrow d: 2 -> "
      "4\nloewy: 6\n");
  Path p3 = parse_path(P3.quiver, "d a c b a");
  CatalogueResult cat3 = check_halyard_catalogue(P3, p3, slack_report(P3, p3));
  CHECK(cat3.conforms == Verdict::holds);
  bool three = false;
  for (const auto& e : cat3.entries)
    if (e.pattern == "three-step-return") three = true;
  CHECK(three);
}

TEST_CASE("halyard catalogue rejects the ex36 witness mast") {
  Presentation P = fixture("ex36.alg");
  Path q = parse_path(P.quiver, "a d g b");
  CatalogueResult cat = check_halyard_catalogue(P, q, slack_report(P, q));
  CHECK(cat.conforms == Verdict::fails);
  REQUIRE(cat.violating.has_value());
  CHECK(cat.violating->arrow == "a");

  Path longer = parse_path(P.quiver, "b a d g b a");
  CHECK_THROWS_AS(check_halyard_catalogue(P, longer, slack_report(P, q)), Error);
}
