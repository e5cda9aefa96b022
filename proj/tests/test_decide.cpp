#include "doctest.h"
#include "helpers.hpp"
#include "uniserial/decide.hpp"
#include "uniserial/generators.hpp"

using namespace uniserial;

TEST_CASE("per-mast verdicts on ex36") {
  Presentation P = fixture("ex36.alg");
  MastVerdict mp = decide_mast(P, parse_path(P.quiver, "d g b a"));
  CHECK(mp.status == MastVerdict::Status::finitely_many);
  REQUIRE(mp.classes.has_value());
  CHECK(*mp.classes == 1);
  CHECK(mp.exactly_one);

  MastVerdict mq = decide_mast(P, parse_path(P.quiver, "a d g b"));
  CHECK(mq.status == MastVerdict::Status::infinite);
  CHECK(mq.infinite_reason == "necessary_shape_violation");
}

TEST_CASE("decide_algebra on ex36: infinite with the short-cycle witness") {
  Presentation P = fixture("ex36.alg");
  AlgebraVerdict v = decide_algebra(P);
  CHECK(v.status == AlgebraVerdict::Status::infinite_type);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->kind == "mast");
  REQUIRE(v.witness->mast.has_value());
  CHECK(render_path(P.quiver, *v.witness->mast) == "a d g b");
  REQUIRE(v.witness->verdict.has_value());
  CHECK(v.witness->verdict->status == MastVerdict::Status::infinite);
}

TEST_CASE("the generic route agrees with the monomial shortcut on ex36") {
  Presentation P = fixture("ex36.alg");
  DecideOptions slow;
  slow.fastpath = false;
  AlgebraVerdict v = decide_algebra(P, slow);
  CHECK(v.status == AlgebraVerdict::Status::infinite_type);
  REQUIRE(v.witness->mast.has_value());
  CHECK(render_path(P.quiver, *v.witness->mast) == "a d g b");
}

TEST_CASE("ex52 mast verdicts: ladder finite, extension infinite") {
  Presentation P = fixture("ex52.alg");
  MastVerdict mp = decide_mast(P, parse_path(P.quiver, "a2 a1 a g g g"));
  CHECK(mp.status == MastVerdict::Status::finitely_many);
  CHECK(mp.route == "loop_case");
  CHECK(mp.exactly_one);
  REQUIRE(mp.classes.has_value());
  CHECK(*mp.classes == 1);

  MastVerdict mq = decide_mast(P, parse_path(P.quiver, "a3 a2 a1 a g g g"));
  CHECK(mq.status == MastVerdict::Status::infinite);
  CHECK((mq.infinite_reason == "loop_case_violation" ||
         mq.infinite_reason == "necessary_shape_violation"));
}

TEST_CASE("ex56a: the shorter mast still supports exactly one module") {
  Presentation P = fixture("ex56a.alg");
  Path p5 = parse_path(P.quiver, "a5 a4 a3 a1 a2");
  VarietyPresentation vp = variety_polynomials(P, p5);
  REQUIRE(vp.polys.size() == 1);
  CHECK(vp.polys[0].str() == "X[a5,2,1] - 1");
  SlackReport rep = slack_report(P, vp);
  for (const auto& c : rep.vars) {
    if (c.var.str() == "X[a5,2,1]") {
      CHECK(c.status == SlackStatus::tight);
      CHECK(c.values == std::vector<Rational>{Rational(1)});
    } else {
      CHECK(c.status == SlackStatus::slack);
      CHECK(c.var.u_len == 0);  // the slack halyards emerge from the top
    }
  }
  MastVerdict mv = decide_mast(P, p5);
  CHECK(mv.status == MastVerdict::Status::finitely_many);
  REQUIRE(mv.classes.has_value());
  CHECK(*mv.classes == 1);
}

TEST_CASE("decide_algebra on the remaining fixtures") {
  CHECK(decide_algebra(fixture("ex59.alg")).status == AlgebraVerdict::Status::finite_type);
  CHECK(decide_algebra(fixture("ex42c.alg")).status == AlgebraVerdict::Status::finite_type);
  CHECK(decide_algebra(fixture("ex52.alg")).status == AlgebraVerdict::Status::infinite_type);
  CHECK(decide_algebra(fixture("ex56a.alg")).status == AlgebraVerdict::Status::infinite_type);
  CHECK(decide_algebra(fixture("ex56b.alg")).status == AlgebraVerdict::Status::finite_type);
  CHECK(decide_algebra(fixture("ex23a.alg")).status == AlgebraVerdict::Status::finite_type);
  // double arrows settle these immediately
  AlgebraVerdict e = decide_algebra(fixture("ex23e.alg"));
  CHECK(e.status == AlgebraVerdict::Status::infinite_type);
  CHECK(e.witness->kind == "double_arrow");
}

TEST_CASE("ex56b: the long mast needs the probe and finds one class") {
  Presentation P = fixture("ex56b.alg");
  MastVerdict mv = decide_mast(P, parse_path(P.quiver, "a5 a4 a3 a1 a2 a1"));
  CHECK(mv.status == MastVerdict::Status::finitely_many);
  CHECK(mv.route == "grid_probe");
  REQUIRE(mv.classes.has_value());
  CHECK(*mv.classes == 1);
}

TEST_CASE("soundness chain: finite type implies the alignment passed") {
  for (const char* name : {"ex59.alg", "ex42c.alg", "ex56b.alg", "ex23a.alg"}) {
    AlgebraVerdict v = decide_algebra(fixture(name));
    REQUIRE(v.status == AlgebraVerdict::Status::finite_type);
    CHECK(v.alignment.verdict == Verdict::holds);
  }
}

TEST_CASE("infinite witnesses re-verify independently") {
  for (const char* name : {"ex36.alg", "ex52.alg", "ex56a.alg"}) {
    Presentation P = fixture(name);
    AlgebraVerdict v = decide_algebra(P);
    REQUIRE(v.status == AlgebraVerdict::Status::infinite_type);
    REQUIRE(v.witness.has_value());
    if (v.witness->kind == "mast") {
      MastVerdict again = decide_mast(P, *v.witness->mast);
      CHECK(again.status == MastVerdict::Status::infinite);
    }
  }
}

TEST_CASE("sufficient shape for all masts forces a finite verdict") {
  Presentation P = fixture("ex59.alg");
  for (const Path& m : nonzero_paths(P, P.loewy - 1)) {
    if (m.length() < 1) continue;
    CHECK(check_suf(P, m).all == Verdict::holds);
  }
  CHECK(decide_algebra(P).status == AlgebraVerdict::Status::finite_type);
}

TEST_CASE("left-right symmetry of the top-level verdict on decisive fixtures") {
  for (const char* name : {"ex36.alg", "ex42c.alg", "ex52.alg", "ex56a.alg", "ex56b.alg",
                           "ex59.alg", "ex23a.alg"}) {
    Presentation P = fixture(name);
    AlgebraVerdict v = decide_algebra(P);
    AlgebraVerdict o = decide_algebra(opposite_presentation(P));
    if (v.status == AlgebraVerdict::Status::unknown ||
        o.status == AlgebraVerdict::Status::unknown)
      continue;
    CHECK(v.status == o.status);
  }
}

TEST_CASE("loop-case verdicts on the short loop fixtures") {
  Presentation P42 = fixture("ex42c.alg");
  MastVerdict m42 = decide_mast(P42, parse_path(P42.quiver, "b a"));
  CHECK(m42.status == MastVerdict::Status::finitely_many);
  CHECK(m42.route == "loop_case");
  CHECK(m42.exactly_one);

  Presentation P23a = fixture("ex23a.alg");
  MastVerdict m23 = decide_mast(P23a, parse_path(P23a.quiver, "a b"));
  CHECK(m23.status == MastVerdict::Status::finitely_many);
  CHECK(m23.route == "loop_case");
  CHECK(m23.exactly_one);
  REQUIRE(m23.classes.has_value());
  CHECK(*m23.classes == 1);
}

TEST_CASE("an alignment violation settles the algebra with the violating pair") {
  Presentation P = parse_presentation(
      "vertices: 1 2 3\narrow b: 1 -> 2\narrow c: 2 -> 3\narrow d: 1 -> 3\nloewy: 3\n");
  AlgebraVerdict v = decide_algebra(P);
  CHECK(v.status == AlgebraVerdict::Status::infinite_type);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->kind == "arrow_alignment");
  CHECK(v.witness->arrow == "d");
  REQUIRE(v.witness->mast.has_value());
  CHECK(render_path(P.quiver, *v.witness->mast) == "c b");
}

TEST_CASE("fast paths agree with the generic route on every fixture") {
  DecideOptions slow;
  slow.fastpath = false;
  for (const char* name : {"ex23a.alg", "ex23d.alg", "ex36.alg", "ex42c.alg", "ex52.alg",
                           "ex56a.alg", "ex56b.alg", "ex59.alg"}) {
    Presentation P = fixture(name);
    AlgebraVerdict fast = decide_algebra(P);
    AlgebraVerdict generic = decide_algebra(P, slow);
    if (generic.status == AlgebraVerdict::Status::unknown) continue;
    CHECK(fast.status == generic.status);
  }
}

TEST_CASE("reports are byte-stable") {
  Presentation P = fixture("ex36.alg");
  std::string a = report_json(P, decide_algebra(P));
  std::string b = report_json(P, decide_algebra(P));
  CHECK(a == b);
  CHECK(a.find("\"status\": \"InfiniteType\"") != std::string::npos);
  CHECK(a.find("\"a d g b\"") != std::string::npos);
}

TEST_CASE("growing class counts surface as Unknown, never as a guess") {
  // the shortcut arrow breaks the alignment, so the shape criteria do not
  // apply to this mast; its fibers are singletons and every probe grid adds
  // classes, which must come out Unknown rather than Infinite
  Presentation P = parse_presentation(
      "vertices: 1 2 3\narrow b: 1 -> 2\narrow c: 2 -> 3\narrow d: 1 -> 3\nloewy: 3\n");
  MastVerdict mv = decide_mast(P, parse_path(P.quiver, "c b"));
  CHECK(mv.status == MastVerdict::Status::unknown);
  CHECK(mv.route == "grid_probe");
  bool noted = false;
  for (const auto& n : mv.notes)
    if (n.find("growing") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("the report carries the documented schema keys") {
  Presentation P = fixture("ex42c.alg");
  std::string text = report_json(P, decide_algebra(P));
  for (const char* key :
       {"\"algebra\"", "\"status\"", "\"witness\"", "\"masts\"", "\"path\"", "\"certificate\"",
        "\"variety\"", "\"vars\"", "\"polys\"", "\"slack\"", "\"diagnostics\"", "\"trace\"",
        "\"condition_n\"", "\"convention\""})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("realized varieties decide the way their geometry dictates") {
  // a single forced point: every mast supports exactly one module
  {
    RealizedVariety rv = realize_variety(parse_multilinear("X1\n"));
    CHECK(decide_algebra(rv.pres).status == AlgebraVerdict::Status::finite_type);
  }
  // an infinite curve with a faithful parametrization: infinitely many modules
  {
    RealizedVariety rv = realize_variety(parse_multilinear("X1*X2 - 1\n"));
    AlgebraVerdict v = decide_algebra(rv.pres);
    CHECK(v.status == AlgebraVerdict::Status::infinite_type);
    MastVerdict mv = decide_mast(rv.pres, rv.mast);
    CHECK(mv.status == MastVerdict::Status::infinite);
    CHECK(mv.infinite_reason == "necessary_shape_violation");
  }
}

TEST_CASE("linearity and uniqueness diagnostics on finite fixtures") {
  // observed only, never asserted
  AlgebraVerdict v = decide_algebra(fixture("ex59.alg"));
  REQUIRE(v.status == AlgebraVerdict::Status::finite_type);
  if (v.all_varieties_linear.has_value()) CHECK(*v.all_varieties_linear);
}
