#include "uniserial/decide.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "json.hpp"

namespace uniserial {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* kConvention =
    "paths are written in composition order: the rightmost arrow acts first";

struct MastInventory {
  std::vector<Path> masts;
  std::vector<Path> unknown;
};

MastInventory enumerate_masts(const Presentation& pres) {
  MastInventory inv;
  int n = (int)pres.quiver.vertices.size();
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      for (const Path& p : enumerate_paths(pres.quiver, v, w, 1, pres.loewy - 1)) {
        MastStatus st = mast_status(pres, p);
        if (st.kind == MastStatus::Kind::mast)
          inv.masts.push_back(p);
        else if (st.kind == MastStatus::Kind::unknown)
          inv.unknown.push_back(p);
      }
  auto less = [&](const Path& a, const Path& b) { return path_less(pres.quiver, a, b); };
  std::sort(inv.masts.begin(), inv.masts.end(), less);
  std::sort(inv.unknown.begin(), inv.unknown.end(), less);
  return inv;
}

struct ProbeResult {
  std::optional<long> classes;
  bool stable = false;
  bool single = false;
  std::vector<std::string> notes;
};

std::vector<Rational> probe_values(const VarietyPresentation& vp, const SlackReport& rep,
                                   long g) {
  std::set<Rational> vals;
  for (long k = -g; k <= g; ++k) vals.insert(Rational(k));
  for (const auto& c : rep.vars)
    for (const auto& v : c.values) vals.insert(v);
  if (vp.status.witness)
    for (const auto& [k, v] : *vp.status.witness) vals.insert(v);
  return {vals.begin(), vals.end()};
}

ProbeResult run_probe(const Presentation& pres, const VarietyPresentation& vp,
                      const SlackReport& rep, const DecideOptions& opts) {
  ProbeResult out;
  std::vector<long> counts;
  for (int stage = 0; stage < 3; ++stage) {
    auto pts = grid_points(vp, probe_values(vp, rep, opts.grid_base + stage), opts.grid_cap);
    if (!pts) {
      out.notes.push_back("probe grid exceeds the enumeration cap");
      return out;
    }
    if (pts->empty()) {
      out.notes.push_back("probe grid missed the variety");
      return out;
    }
    IsoPartition part = iso_classes(pres, vp, *pts);
    for (const auto& a : part.anomalies) out.notes.push_back("iso anomaly: " + a);
    counts.push_back((long)part.classes.size());
  }
  out.classes = counts[0];
  out.stable = counts[0] == counts[1] && counts[1] == counts[2];
  out.single = out.stable && counts[0] == 1;
  if (!out.stable)
    out.notes.push_back("class count keeps growing with the probe grid");
  return out;
}

MastVerdict decide_mast_impl(const Presentation& pres, const Path& p, const DecideOptions& opts,
                             Verdict alignment, bool no_double) {
  MastStatus ms = mast_status(pres, p);
  if (ms.kind != MastStatus::Kind::mast)
    throw Error(ErrorKind::precondition, "decide_mast requires a mast");
  MastVerdict mv;
  mv.mast = p;
  VarietyPresentation vp = variety_polynomials(pres, p);
  SlackReport rep = slack_report(pres, vp);
  for (const auto& poly : vp.polys)
    if (poly.degree() > 1) mv.linear = false;
  bool cor58 = cycle_factorization_on_halyards(vp.ctx, rep);
  int t = (int)recurrence_lengths(vp.ctx).size();

  auto finish_finite = [&](const std::string& route) {
    mv.status = MastVerdict::Status::finitely_many;
    mv.route = route;
    ProbeResult probe = run_probe(pres, vp, rep, opts);
    mv.classes = probe.classes;
    for (const auto& n : probe.notes) mv.notes.push_back(n);
    mv.exactly_one = cor58 || probe.single;
    return mv;
  };

  // loop case first (valid under arrow alignment)
  if (alignment == Verdict::holds) {
    LoopCaseResult lc = check_loop_case(pres, p, rep);
    if (lc.applicable) {
      if (lc.finite == Verdict::fails) {
        mv.status = MastVerdict::Status::infinite;
        mv.route = "loop_case";
        mv.infinite_reason = "loop_case_violation";
        mv.notes.push_back(lc.evidence);
        return mv;
      }
      if (lc.finite == Verdict::holds) return finish_finite("loop_case");
      mv.notes.push_back("loop case undecided: " + lc.evidence);
    }
  }

  if (no_double) {
    SufResult suf = check_suf(vp.ctx, rep);
    if (suf.all == Verdict::holds) return finish_finite("sufficient_shape");
  }

  if (alignment == Verdict::holds) {
    for (const auto& c : rep.vars) {
      if (c.status != SlackStatus::slack) continue;
      NecResult nec = check_nec_shape(vp.ctx, c.var);
      if (nec.outcome == NecResult::Outcome::violated) {
        mv.status = MastVerdict::Status::infinite;
        mv.route = "necessary_shape";
        mv.infinite_reason = "necessary_shape_violation";
        mv.witness_var = c.var;
        return mv;
      }
    }
    if (rep.free_count > t) {
      mv.status = MastVerdict::Status::infinite;
      mv.route = "dimension_bound";
      mv.infinite_reason = "dimension_bound_exceeded";
      mv.notes.push_back("free variables " + std::to_string(rep.free_count) +
                         " exceed the recurrence count " + std::to_string(t));
      return mv;
    }
  }

  for (const auto& c : rep.vars)
    if (c.status == SlackStatus::unknown)
      mv.notes.push_back("undecided slack classification for " + c.var.str());

  ProbeResult probe = run_probe(pres, vp, rep, opts);
  for (const auto& n : probe.notes) mv.notes.push_back(n);
  if (probe.stable) {
    mv.status = MastVerdict::Status::finitely_many;
    mv.route = "grid_probe";
    mv.classes = probe.classes;
    mv.exactly_one = cor58 || probe.single;
    mv.notes.push_back("class count from a stabilized probe grid; completeness not certified");
    return mv;
  }
  mv.status = MastVerdict::Status::unknown;
  mv.route = "grid_probe";
  mv.classes = probe.classes;
  return mv;
}

}  // namespace

MastVerdict decide_mast(const Presentation& pres, const Path& p, const DecideOptions& opts) {
  ConditionNReport n = check_condition_n(pres);
  return decide_mast_impl(pres, p, opts, n.verdict, !has_double_arrows(pres.quiver));
}

AlgebraVerdict decide_algebra(const Presentation& pres, const DecideOptions& opts) {
  AlgebraVerdict av;
  if (has_double_arrows(pres.quiver)) {
    av.trace.push_back("double_arrow_check: failed");
    av.status = AlgebraVerdict::Status::infinite_type;
    AlgebraWitness w;
    w.kind = "double_arrow";
    for (size_t i = 0; i < pres.quiver.arrows.size() && w.detail.empty(); ++i)
      for (size_t j = i + 1; j < pres.quiver.arrows.size() && w.detail.empty(); ++j)
        if (pres.quiver.arrows[i].source == pres.quiver.arrows[j].source &&
            pres.quiver.arrows[i].target == pres.quiver.arrows[j].target)
          w.detail = pres.quiver.arrows[i].name + ", " + pres.quiver.arrows[j].name;
    av.witness = w;
    MastInventory inv = enumerate_masts(pres);
    av.masts = inv.masts;
    av.unknown_masts = inv.unknown;
    return av;
  }
  av.trace.push_back("double_arrow_check: passed");

  MastInventory inv = enumerate_masts(pres);
  av.masts = inv.masts;
  av.unknown_masts = inv.unknown;
  av.trace.push_back("mast_enumeration: " + std::to_string(inv.masts.size()) + " masts, " +
                     std::to_string(inv.unknown.size()) + " undecided");

  av.alignment = check_condition_n(pres);
  if (av.alignment.verdict == Verdict::fails) {
    av.trace.push_back("arrow_alignment: failed");
    av.status = AlgebraVerdict::Status::infinite_type;
    AlgebraWitness w;
    w.kind = "arrow_alignment";
    w.arrow = pres.quiver.arrow(av.alignment.violations.front().arrow).name;
    w.mast = av.alignment.violations.front().mast;
    av.witness = w;
    return av;
  }
  av.trace.push_back(av.alignment.verdict == Verdict::holds ? "arrow_alignment: passed"
                                                            : "arrow_alignment: undecided");

  auto attach_mast_witness = [&](const Path& p, const std::string& fallback_kind,
                                 const std::string& detail) {
    AlgebraWitness w;
    w.detail = detail;
    MastVerdict mvw = decide_mast_impl(pres, p, opts, av.alignment.verdict,
                                       !has_double_arrows(pres.quiver));
    if (mvw.status == MastVerdict::Status::infinite) {
      w.kind = "mast";
      w.mast = p;
      w.verdict = mvw;
      av.mast_verdicts.push_back(mvw);
    } else {
      w.kind = fallback_kind;
      w.mast = p;
    }
    av.witness = w;
  };

  if (opts.fastpath && pres.monomial && av.alignment.verdict == Verdict::holds) {
    MonomialSegmentReport seg = check_monomial_segments(pres);
    if (seg.holds) {
      av.trace.push_back("monomial_segments: passed");
      av.status = AlgebraVerdict::Status::finite_type;
    } else {
      av.trace.push_back("monomial_segments: failed");
      av.status = AlgebraVerdict::Status::infinite_type;
      if (seg.witness)
        attach_mast_witness(seg.witness->path, "monomial_segments",
                            "segment condition fails at i=" + std::to_string(seg.witness->i) +
                                " j=" + std::to_string(seg.witness->j));
    }
  } else if (opts.fastpath && is_acyclic(pres.quiver) &&
             av.alignment.verdict == Verdict::holds) {
    av.trace.push_back("acyclic_shortcut: alignment decides");
    av.status = AlgebraVerdict::Status::finite_type;
  } else if (opts.fastpath && pres.loewy <= 6 && av.alignment.verdict == Verdict::holds &&
             av.unknown_masts.empty()) {
    bool all_conform = true, any_unknown = false;
    std::optional<std::pair<Path, VarKey>> violation;
    for (const Path& m : av.masts) {
      SlackReport rep = slack_report(pres, m);
      CatalogueResult cat = check_halyard_catalogue(pres, m, rep);
      if (cat.conforms == Verdict::fails) {
        all_conform = false;
        if (!violation) violation = {m, *cat.violating};
        break;
      }
      if (cat.conforms == Verdict::unknown) any_unknown = true;
    }
    if (!all_conform) {
      av.trace.push_back("halyard_catalogue: violation");
      av.status = AlgebraVerdict::Status::infinite_type;
      attach_mast_witness(violation->first, "halyard_catalogue",
                          "slack variable " + violation->second.str() +
                              " matches no catalogue shape");
    } else if (any_unknown) {
      av.trace.push_back("halyard_catalogue: undecided, falling back to per-mast analysis");
    } else {
      av.trace.push_back("halyard_catalogue: all masts conform");
      av.status = AlgebraVerdict::Status::finite_type;
    }
  }

  if (av.status == AlgebraVerdict::Status::unknown && !av.witness) {
    // per-mast aggregation
    av.trace.push_back("per_mast: deciding every mast");
    bool any_unknown = false;
    std::optional<size_t> first_infinite;
    for (const Path& m : av.masts) {
      MastVerdict mv = decide_mast_impl(pres, m, opts, av.alignment.verdict,
                                        !has_double_arrows(pres.quiver));
      if (mv.status == MastVerdict::Status::infinite && !first_infinite)
        first_infinite = av.mast_verdicts.size();
      if (mv.status == MastVerdict::Status::unknown) any_unknown = true;
      av.mast_verdicts.push_back(std::move(mv));
    }
    if (first_infinite) {
      av.status = AlgebraVerdict::Status::infinite_type;
      AlgebraWitness w;
      w.kind = "mast";
      w.mast = av.mast_verdicts[*first_infinite].mast;
      w.verdict = av.mast_verdicts[*first_infinite];
      av.witness = w;
    } else if (any_unknown || !av.unknown_masts.empty() ||
               av.alignment.verdict != Verdict::holds) {
      av.status = AlgebraVerdict::Status::unknown;
    } else {
      av.status = AlgebraVerdict::Status::finite_type;
    }
    bool single = true;
    for (const auto& mv : av.mast_verdicts)
      if (!mv.classes || *mv.classes != 1) single = false;
    if (av.status == AlgebraVerdict::Status::finite_type)
      av.single_class_per_mast = single;
  }

  if (av.masts.size() <= 64) {
    bool linear = true;
    for (const Path& m : av.masts) {
      VarietyPresentation vp = variety_polynomials(pres, m);
      for (const auto& poly : vp.polys)
        if (poly.degree() > 1) linear = false;
    }
    av.all_varieties_linear = linear;
  }
  return av;
}

namespace {

ordered_json point_json(const MastContext& ctx, const PointMap& k) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : ctx.vars) arr.push_back(to_string(k.at(v)));
  return arr;
}

ordered_json variety_fragment(const Presentation& pres, const VarietyPresentation& vp) {
  ordered_json j;
  j["path"] = render_path(pres.quiver, vp.ctx.mast);
  ordered_json vars = ordered_json::array();
  for (const auto& v : vp.ctx.vars) vars.push_back(v.str());
  j["vars"] = vars;
  ordered_json polys = ordered_json::array();
  for (const auto& p : vp.polys) polys.push_back(p.str());
  j["polys"] = polys;
  switch (vp.status.kind) {
    case VarietyStatus::Kind::nonempty: j["status"] = "Nonempty"; break;
    case VarietyStatus::Kind::empty: j["status"] = "Empty"; break;
    case VarietyStatus::Kind::unknown: j["status"] = "Unknown"; break;
  }
  j["witness"] = vp.status.witness ? point_json(vp.ctx, *vp.status.witness) : ordered_json();
  j["certificate"] = vp.status.certificate;
  if (vp.status.solutions_complete) {
    ordered_json sols = ordered_json::array();
    for (const auto& s : vp.status.solutions) sols.push_back(point_json(vp.ctx, s));
    j["solutions"] = sols;
  } else {
    j["solutions"] = ordered_json();
  }
  j["solutions_complete"] = vp.status.solutions_complete;
  return j;
}

ordered_json slack_array(const SlackReport& rep) {
  ordered_json vars = ordered_json::array();
  for (const auto& c : rep.vars) {
    ordered_json e;
    e["var"] = c.var.str();
    e["status"] = c.status == SlackStatus::slack
                      ? "Slack"
                      : (c.status == SlackStatus::tight ? "Tight" : "Unknown");
    e["evidence"] = c.evidence;
    ordered_json vals = ordered_json::array();
    for (const auto& v : c.values) vals.push_back(to_string(v));
    e["values"] = vals;
    e["values_verified"] = c.values_verified;
    vars.push_back(e);
  }
  return vars;
}

ordered_json detour_array(const VarietyPresentation& vp, const SlackReport& rep) {
  ordered_json dets = ordered_json::array();
  for (const auto& f : rep.detours) {
    const Detour& d = vp.ctx.detours[f.detour_index];
    ordered_json e;
    e["arrow"] = d.arrow_name;
    e["u_len"] = d.u_len;
    e["halyard"] = f.halyard ? ordered_json(*f.halyard) : ordered_json();
    e["circular"] = f.circular;
    dets.push_back(e);
  }
  return dets;
}

ordered_json slack_fragment(const Presentation& pres, const VarietyPresentation& vp,
                            const SlackReport& rep) {
  ordered_json j;
  j["path"] = render_path(pres.quiver, vp.ctx.mast);
  j["free_count"] = rep.free_count;
  j["vars"] = slack_array(rep);
  j["detours"] = detour_array(vp, rep);
  return j;
}

ordered_json mast_verdict_fragment(const Presentation& pres, const MastVerdict& mv) {
  ordered_json j;
  j["path"] = render_path(pres.quiver, mv.mast);
  switch (mv.status) {
    case MastVerdict::Status::finitely_many: j["status"] = "FinitelyMany"; break;
    case MastVerdict::Status::infinite: j["status"] = "Infinite"; break;
    case MastVerdict::Status::unknown: j["status"] = "Unknown"; break;
  }
  j["classes"] = mv.classes ? ordered_json(*mv.classes) : ordered_json();
  j["exactly_one"] = mv.exactly_one;
  j["route"] = mv.route;
  j["infinite_reason"] = mv.infinite_reason;
  j["witness_var"] = mv.witness_var ? ordered_json(mv.witness_var->str()) : ordered_json();
  j["notes"] = mv.notes;
  j["linear"] = mv.linear;
  return j;
}

ordered_json condition_n_fragment(const Presentation& pres, const ConditionNReport& rep) {
  ordered_json j;
  j["verdict"] = rep.verdict == Verdict::holds
                     ? "holds"
                     : (rep.verdict == Verdict::fails ? "fails" : "unknown");
  ordered_json viol = ordered_json::array();
  for (const auto& v : rep.violations) {
    ordered_json e;
    e["arrow"] = pres.quiver.arrow(v.arrow).name;
    e["mast"] = render_path(pres.quiver, v.mast);
    viol.push_back(e);
  }
  j["violations"] = viol;
  ordered_json unk = ordered_json::array();
  for (const auto& [a, p] : rep.unknown) {
    ordered_json e;
    e["arrow"] = pres.quiver.arrow(a).name;
    e["path"] = render_path(pres.quiver, p);
    unk.push_back(e);
  }
  j["unknown"] = unk;
  return j;
}

}  // namespace

std::string variety_json(const Presentation& pres, const Path& p) {
  ordered_json j = variety_fragment(pres, variety_polynomials(pres, p));
  j["convention"] = kConvention;
  return j.dump(2) + "\n";
}

std::string slack_json(const Presentation& pres, const Path& p) {
  VarietyPresentation vp = variety_polynomials(pres, p);
  ordered_json j = slack_fragment(pres, vp, slack_report(pres, vp));
  j["convention"] = kConvention;
  return j.dump(2) + "\n";
}

std::string condition_n_json(const Presentation& pres) {
  ordered_json j = condition_n_fragment(pres, check_condition_n(pres));
  j["convention"] = kConvention;
  return j.dump(2) + "\n";
}

std::string mast_verdict_json(const Presentation& pres, const MastVerdict& mv) {
  ordered_json j = mast_verdict_fragment(pres, mv);
  j["convention"] = kConvention;
  return j.dump(2) + "\n";
}

std::string report_json(const Presentation& pres, const AlgebraVerdict& av) {
  ordered_json j;
  j["convention"] = kConvention;
  ordered_json alg;
  alg["vertices"] = pres.quiver.vertices;
  ordered_json arrows = ordered_json::array();
  for (const auto& a : pres.quiver.arrows)
    arrows.push_back(a.name + ": " + pres.quiver.vertex_name(a.source) + " -> " +
                     pres.quiver.vertex_name(a.target));
  alg["arrows"] = arrows;
  alg["loewy"] = pres.loewy;
  alg["monomial"] = pres.monomial;
  alg["relations"] = pres.relations.size();
  j["algebra"] = alg;
  switch (av.status) {
    case AlgebraVerdict::Status::finite_type: j["status"] = "FiniteType"; break;
    case AlgebraVerdict::Status::infinite_type: j["status"] = "InfiniteType"; break;
    case AlgebraVerdict::Status::unknown: j["status"] = "Unknown"; break;
  }
  if (av.witness) {
    ordered_json w;
    w["kind"] = av.witness->kind;
    w["mast"] = av.witness->mast ? ordered_json(render_path(pres.quiver, *av.witness->mast))
                                 : ordered_json();
    if (!av.witness->arrow.empty()) w["arrow"] = av.witness->arrow;
    if (!av.witness->detail.empty()) w["detail"] = av.witness->detail;
    if (av.witness->verdict) w["verdict"] = mast_verdict_fragment(pres, *av.witness->verdict);
    j["witness"] = w;
  } else {
    j["witness"] = ordered_json();
  }
  j["trace"] = av.trace;
  j["condition_n"] = condition_n_fragment(pres, av.alignment);
  ordered_json masts = ordered_json::array();
  for (const Path& m : av.masts) {
    ordered_json e;
    e["path"] = render_path(pres.quiver, m);
    e["status"] = "Mast";
    const MastVerdict* found = nullptr;
    for (const auto& mv : av.mast_verdicts)
      if (mv.mast == m) found = &mv;
    e["certificate"] = found ? mast_verdict_fragment(pres, *found) : ordered_json();
    VarietyPresentation vp = variety_polynomials(pres, m);
    SlackReport rep = slack_report(pres, vp);
    e["variety"] = variety_fragment(pres, vp);
    e["slack"] = slack_array(rep);
    ordered_json diag;
    diag["free_count"] = rep.free_count;
    diag["detours"] = detour_array(vp, rep);
    bool linear = true;
    for (const auto& poly : vp.polys)
      if (poly.degree() > 1) linear = false;
    diag["linear"] = linear;
    e["diagnostics"] = diag;
    masts.push_back(e);
  }
  j["masts"] = masts;
  ordered_json unk = ordered_json::array();
  for (const Path& m : av.unknown_masts) unk.push_back(render_path(pres.quiver, m));
  j["unknown_masts"] = unk;
  ordered_json diag;
  diag["all_varieties_linear"] =
      av.all_varieties_linear ? ordered_json(*av.all_varieties_linear) : ordered_json();
  diag["single_class_per_mast"] =
      av.single_class_per_mast ? ordered_json(*av.single_class_per_mast) : ordered_json();
  j["diagnostics"] = diag;
  return j.dump(2) + "\n";
}

}  // namespace uniserial
