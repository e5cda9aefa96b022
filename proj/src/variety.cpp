#include "uniserial/variety.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace uniserial {

namespace {

const VarKey kParam = VarKey::aux("t", 0);

std::vector<Rational> ladder(int stage) {
  std::vector<Rational> v = {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2)};
  if (stage >= 1) {
    v.push_back(Rational(1, 2));
    v.push_back(Rational(-1, 2));
    v.push_back(Rational(3));
    v.push_back(Rational(-3));
  }
  if (stage >= 2) {
    v.push_back(Rational(1, 3));
    v.push_back(Rational(-1, 3));
    v.push_back(Rational(3, 2));
    v.push_back(Rational(-3, 2));
    v.push_back(Rational(4));
    v.push_back(Rational(-4));
  }
  return v;
}

PointMap witness_from_triangulation(const TriangulateResult& tri, const std::vector<VarKey>& vars) {
  PointMap w;
  for (const auto& v : vars) w[v] = 0;
  for (auto it = tri.reduced.rbegin(); it != tri.reduced.rend(); ++it) {
    const VarKey& pivot = it->coeffs.begin()->first;
    Rational val = it->constant;
    bool first = true;
    for (const auto& [v, c] : it->coeffs) {
      if (first) {
        first = false;
        continue;
      }
      val -= c * w.at(v);
    }
    w[pivot] = val;
  }
  return w;
}

bool satisfies_all(const std::vector<Polynomial>& polys, const PointMap& point) {
  for (const auto& p : polys)
    if (p.eval(point) != 0) return false;
  return true;
}

/// Backtracking search over a fixed value ladder with unit propagation
/// (single remaining degree-1 variables are solved exactly, off the ladder).
std::optional<PointMap> bounded_search(const std::vector<Polynomial>& polys,
                                       const std::vector<VarKey>& vars,
                                       const std::vector<Rational>& values) {
  long budget = 200000;
  std::function<std::optional<PointMap>(PointMap&)> go =
      [&](PointMap& partial) -> std::optional<PointMap> {
    if (--budget < 0) return std::nullopt;
    // propagation to a fixed point
    bool changed = true;
    PointMap local = partial;
    while (changed) {
      changed = false;
      for (const auto& p : polys) {
        Polynomial r = p.substitute(local);
        if (r.is_zero()) continue;
        if (r.is_constant()) return std::nullopt;  // contradiction
        auto rv = r.variables();
        if (rv.size() == 1) {
          const VarKey& v = rv[0];
          if (r.degree() == 1) {
            Rational c = r.linear_coefficient(v).constant_value();
            Rational d = r.drop_variable(v).is_zero() ? Rational(0)
                                                      : r.drop_variable(v).constant_value();
            local[v] = -d / c;
            changed = true;
          }
        }
      }
    }
    const VarKey* next = nullptr;
    for (const auto& v : vars)
      if (!local.count(v)) {
        next = &v;
        break;
      }
    if (!next) {
      if (satisfies_all(polys, local)) return local;
      return std::nullopt;
    }
    for (const auto& val : values) {
      local[*next] = val;
      bool ok = true;
      for (const auto& p : polys) {
        Polynomial r = p.substitute(local);
        if (r.is_constant() && !r.is_zero() && r.constant_value() != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (auto found = go(local)) return found;
      }
      local.erase(*next);
      if (budget < 0) return std::nullopt;
    }
    return std::nullopt;
  };
  PointMap empty;
  return go(empty);
}

}  // namespace

int MastContext::detour_index(int arrow, int u_len) const {
  for (int i = 0; i < (int)detours.size(); ++i)
    if (detours[i].arrow == arrow && detours[i].u_len == u_len) return i;
  return -1;
}

VarKey MastContext::var(int detour_index, int family_index) const {
  const Detour& d = detours.at(detour_index);
  VarKey k;
  k.kind = VarKey::Kind::detour;
  k.arrow = d.arrow_name;
  k.u_len = d.u_len;
  k.index = family_index;
  k.v_len = d.v_lens.at(family_index - 1);
  return k;
}

int MastContext::var_position(const VarKey& v) const {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || !(*it == v)) return -1;
  return (int)(it - vars.begin());
}

int MastContext::detour_of(const VarKey& v) const {
  for (int i = 0; i < (int)detours.size(); ++i)
    if (detours[i].arrow_name == v.arrow && detours[i].u_len == v.u_len) return i;
  return -1;
}

MastContext build_mast_context(const Presentation& pres, const Path& p) {
  if (p.length() < 1)
    throw Error(ErrorKind::precondition, "mast context needs a path of positive length");
  if (!is_composable(pres.quiver, p))
    throw Error(ErrorKind::composition, "path is not composable in the quiver");
  MastContext ctx;
  ctx.mast = p;
  int at = p.base;
  ctx.layer_vertex.push_back(at);
  for (int a : p.arrows) {
    at = pres.quiver.arrow(a).target;
    ctx.layer_vertex.push_back(at);
  }
  int l = p.length();
  for (int u = 0; u <= l; ++u) {
    for (int a : pres.quiver.arrows_from(ctx.layer_vertex[u])) {
      if (u < l && p.arrows[u] == a) continue;  // alpha u is the next right subpath
      Detour d;
      d.arrow = a;
      d.arrow_name = pres.quiver.arrow(a).name;
      d.u_len = u;
      int tgt = pres.quiver.arrow(a).target;
      for (int m = u + 1; m <= l; ++m)
        if (ctx.layer_vertex[m] == tgt) d.v_lens.push_back(m);
      if (!d.v_lens.empty()) ctx.detours.push_back(std::move(d));
    }
  }
  std::sort(ctx.detours.begin(), ctx.detours.end(), [](const Detour& a, const Detour& b) {
    return std::tie(a.u_len, a.arrow_name) < std::tie(b.u_len, b.arrow_name);
  });
  for (int i = 0; i < (int)ctx.detours.size(); ++i)
    for (int j = 1; j <= (int)ctx.detours[i].v_lens.size(); ++j)
      ctx.vars.push_back(ctx.var(i, j));
  std::sort(ctx.vars.begin(), ctx.vars.end());
  return ctx;
}

Evaluation substitution_eval(const Presentation& pres, const MastContext& ctx, const Path& word,
                             int start_len) {
  if (start_len < 0 || start_len > ctx.length())
    throw Error(ErrorKind::precondition, "start layer outside the mast");
  if (source(pres.quiver, word) != ctx.layer_vertex[start_len])
    throw Error(ErrorKind::composition, "word does not start at the layer's vertex");
  Evaluation state;
  state[start_len] = Polynomial(Rational(1));
  int l = ctx.length();
  for (int a : word.arrows) {
    Evaluation next;
    for (const auto& [len, coeff] : state) {
      if (len < l && ctx.mast.arrows[len] == a) {
        auto it = next.find(len + 1);
        if (it == next.end())
          next[len + 1] = coeff;
        else
          it->second += coeff;
        continue;
      }
      int di = ctx.detour_index(a, len);
      if (di < 0) continue;  // the step annihilates this branch
      const Detour& d = ctx.detours[di];
      for (int i = 1; i <= (int)d.v_lens.size(); ++i) {
        Polynomial c = coeff * Polynomial::variable(ctx.var(di, i));
        auto it = next.find(d.v_lens[i - 1]);
        if (it == next.end())
          next[d.v_lens[i - 1]] = c;
        else
          it->second += c;
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    state = std::move(next);
    if (state.empty()) break;
  }
  return state;
}

std::optional<int> cycle_factorization(const MastContext& ctx, const VarKey& v) {
  int w_len = v.v_len - v.u_len - 1;
  if (w_len < 1) return std::nullopt;
  if (ctx.layer_vertex[w_len] != ctx.layer_vertex[0]) return std::nullopt;
  // v = alpha . u . w: after the first w_len arrows, the next u_len arrows
  // must repeat u (the mast's own first u_len arrows), then alpha.
  for (int k = 0; k < v.u_len; ++k)
    if (ctx.mast.arrows[w_len + k] != ctx.mast.arrows[k]) return std::nullopt;
  int di = ctx.detour_of(v);
  if (di < 0 || ctx.mast.arrows[v.v_len - 1] != ctx.detours[di].arrow) return std::nullopt;
  return w_len;
}

std::vector<int> recurrence_lengths(const MastContext& ctx) {
  std::vector<int> out;
  for (int m = 1; m <= ctx.length(); ++m)
    if (ctx.layer_vertex[m] == ctx.layer_vertex[0]) out.push_back(m);
  return out;
}

namespace {

/// Classification of one variable by one-parameter substitution.
VarClassification classify_variable(const VarKey& v, const std::vector<Polynomial>& polys,
                                    const std::vector<VarKey>& vars) {
  VarClassification out;
  out.var = v;
  if (!occurs(v, polys)) {
    out.status = SlackStatus::slack;
    out.evidence = "absent";
    return out;
  }
  std::vector<VarKey> remaining;
  for (const auto& w : vars)
    if (!(w == v)) remaining.push_back(w);
  std::vector<Polynomial> rows, linear_rows;
  for (const auto& p : polys) {
    Polynomial r = p.substitute(v, Polynomial::variable(kParam));
    if (r.is_zero()) continue;
    rows.push_back(r);
    int deg = r.degree_where([&](const VarKey& w) { return !(w == kParam); });
    if (deg <= 1) linear_rows.push_back(r);
  }
  bool all_linear = rows.size() == linear_rows.size();
  auto cert = parametric_contradiction(linear_rows, remaining);
  if (cert) {
    out.status = SlackStatus::tight;
    out.evidence = "finite value set";
    out.values_verified = false;
    if (cert->is_constant()) return out;  // no admissible value at all
    try {
      out.values = rational_roots(*cert, kParam);
    } catch (const Error&) {
      out.status = SlackStatus::unknown;
      out.evidence = "certificate roots exceed the search budget";
      out.values.clear();
    }
    return out;
  }
  if (all_linear) {
    out.status = SlackStatus::slack;
    out.evidence = "parametric";
    return out;
  }
  out.status = SlackStatus::unknown;
  out.evidence = "residual system nonlinear in the remaining variables";
  return out;
}

/// Emptiness/witness decision without parameter machinery (used to verify
/// candidate values; must not recurse).
VarietyStatus basic_status(const std::vector<Polynomial>& polys, const std::vector<VarKey>& vars) {
  VarietyStatus st;
  for (const auto& p : polys)
    if (p.is_constant() && !p.is_zero()) {
      st.kind = VarietyStatus::Kind::empty;
      st.certificate = "constant defining polynomial " + p.str();
      return st;
    }
  bool all_linear = true;
  std::vector<Polynomial> linear;
  for (const auto& p : polys) {
    if (p.degree() <= 1)
      linear.push_back(p);
    else
      all_linear = false;
  }
  if (all_linear) {
    TriangulateResult tri = linear_triangulate(polys, vars);
    if (!tri.consistent) {
      st.kind = VarietyStatus::Kind::empty;
      st.certificate = "linear elimination derived 0 = " + to_string(tri.contradiction);
      return st;
    }
    st.kind = VarietyStatus::Kind::nonempty;
    st.witness = witness_from_triangulation(tri, vars);
    return st;
  }
  TriangulateResult tri = linear_triangulate(linear, vars);
  if (!tri.consistent) {
    st.kind = VarietyStatus::Kind::empty;
    st.certificate = "linear elimination derived 0 = " + to_string(tri.contradiction);
    return st;
  }
  for (int stage = 0; stage < 3; ++stage)
    if (auto w = bounded_search(polys, vars, ladder(stage))) {
      st.kind = VarietyStatus::Kind::nonempty;
      st.witness = *w;
      return st;
    }
  st.kind = VarietyStatus::Kind::unknown;
  st.certificate = "bounded exact search exhausted";
  return st;
}

VarietyStatus decide_status(const std::vector<Polynomial>& polys, const std::vector<VarKey>& vars) {
  VarietyStatus st = basic_status(polys, vars);
  if (st.kind == VarietyStatus::Kind::empty) return st;
  bool nonlinear = false;
  for (const auto& p : polys)
    if (p.degree() > 1) nonlinear = true;
  if (!nonlinear) {
    if (st.kind == VarietyStatus::Kind::nonempty && vars.empty()) {
      st.solutions_complete = true;
      st.solutions = {PointMap{}};
    } else if (st.kind == VarietyStatus::Kind::nonempty) {
      // finite iff no free variable; enumerate exactly when zero-dimensional
      TriangulateResult tri = linear_triangulate(polys, vars);
      if (tri.free.empty()) {
        st.solutions_complete = true;
        st.solutions = {*st.witness};
      }
    }
    return st;
  }

  // One-parameter elimination per variable; when every variable is confined
  // to a finite candidate set the full rational solution set is enumerable.
  std::vector<VarClassification> cls;
  for (const auto& v : vars) cls.push_back(classify_variable(v, polys, vars));
  bool all_finite = !vars.empty();
  long product = 1;
  for (const auto& c : cls) {
    if (c.status != SlackStatus::tight) all_finite = false;
    product *= std::max<long>(1, (long)c.values.size());
    if (product > 100000) all_finite = false;
  }
  if (all_finite) {
    std::vector<PointMap> sols;
    std::function<void(size_t, PointMap&)> go = [&](size_t i, PointMap& acc) {
      if (i == cls.size()) {
        if (satisfies_all(polys, acc)) sols.push_back(acc);
        return;
      }
      for (const auto& val : cls[i].values) {
        acc[cls[i].var] = val;
        go(i + 1, acc);
      }
      acc.erase(cls[i].var);
    };
    PointMap acc;
    go(0, acc);
    if (sols.empty()) {
      st.kind = VarietyStatus::Kind::empty;
      st.witness.reset();
      st.certificate = "every variable is confined to a finite candidate set and no candidate point satisfies the system";
      st.solutions_complete = true;
      st.solutions.clear();
      return st;
    }
    st.kind = VarietyStatus::Kind::nonempty;
    st.solutions_complete = true;
    st.solutions = sols;
    if (!st.witness) st.witness = sols.front();
    return st;
  }
  if (st.kind == VarietyStatus::Kind::nonempty) return st;
  // last resort: ride a parametric variable
  for (const auto& c : cls) {
    if (c.status != SlackStatus::slack || c.evidence != "parametric") continue;
    std::vector<VarKey> rest;
    for (const auto& v : vars)
      if (!(v == c.var)) rest.push_back(v);
    for (long k = 0; k <= 12; ++k) {
      std::vector<Polynomial> rp;
      for (const auto& p : polys) rp.push_back(p.substitute({{c.var, Rational(k)}}));
      VarietyStatus sub = basic_status(rp, rest);
      if (sub.kind == VarietyStatus::Kind::nonempty) {
        PointMap w = *sub.witness;
        w[c.var] = Rational(k);
        st.kind = VarietyStatus::Kind::nonempty;
        st.witness = w;
        st.certificate.clear();
        return st;
      }
    }
  }
  return st;
}

}  // namespace

VarietyPresentation variety_polynomials(const Presentation& pres, const Path& p) {
  VarietyPresentation vp;
  vp.ctx = build_mast_context(pres, p);
  std::vector<Polynomial> polys;
  auto emit_from = [&](const std::vector<std::pair<Rational, Path>>& terms) {
    int src = source(pres.quiver, terms[0].second);
    for (int u = 0; u <= vp.ctx.length(); ++u) {
      if (vp.ctx.layer_vertex[u] != src) continue;
      Evaluation total;
      for (const auto& [c, q] : terms) {
        Evaluation e = substitution_eval(pres, vp.ctx, q, u);
        for (const auto& [len, poly] : e) {
          auto it = total.find(len);
          if (it == total.end())
            total[len] = poly * c;
          else
            it->second += poly * c;
        }
      }
      for (const auto& [len, poly] : total)
        if (!poly.is_zero()) polys.push_back(poly.monic());
    }
  };
  for (const auto& r : pres.relations) emit_from(r.terms);
  // The nilpotency bound contributes constraints only when the path itself
  // reaches the bound: an L-step word climbs at least one layer per step, so
  // for len(p) < L every instance vanishes identically.
  if (p.length() >= pres.loewy) {
    int src = source(pres.quiver, p);
    for (int tgt = 0; tgt < (int)pres.quiver.vertices.size(); ++tgt)
      for (const Path& q : enumerate_paths(pres.quiver, src, tgt, pres.loewy, pres.loewy))
        emit_from({{Rational(1), q}});
  }
  std::sort(polys.begin(), polys.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.str() < b.str();
  });
  polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
  vp.polys = std::move(polys);
  vp.status = decide_status(vp.polys, vp.ctx.vars);
  if (vp.status.witness && !satisfies_all(vp.polys, *vp.status.witness))
    throw Error(ErrorKind::invariant, "witness fails the defining polynomials");
  return vp;
}

MastStatus mast_status(const Presentation& pres, const Path& p) {
  MastStatus st;
  if (!is_composable(pres.quiver, p))
    throw Error(ErrorKind::composition, "path is not composable in the quiver");
  if (p.length() == 0) {
    st.kind = MastStatus::Kind::mast;
    st.reason = "trivial path (simple module)";
    return st;
  }
  if (p.length() >= pres.loewy) {
    st.kind = MastStatus::Kind::not_mast;
    st.reason = "length reaches the nilpotency bound";
    return st;
  }
  if (pres.monomial) {
    if (monomial_contains(pres, p)) {
      st.kind = MastStatus::Kind::not_mast;
      st.reason = "path lies in the monomial ideal";
    } else {
      st.kind = MastStatus::Kind::mast;
      st.reason = "path avoids the monomial ideal";
      MastContext ctx = build_mast_context(pres, p);
      PointMap zero;
      for (const auto& v : ctx.vars) zero[v] = 0;
      st.witness = zero;
    }
    return st;
  }
  VarietyPresentation vp = variety_polynomials(pres, p);
  switch (vp.status.kind) {
    case VarietyStatus::Kind::nonempty:
      st.kind = MastStatus::Kind::mast;
      st.witness = vp.status.witness;
      break;
    case VarietyStatus::Kind::empty:
      st.kind = MastStatus::Kind::not_mast;
      st.reason = vp.status.certificate;
      break;
    case VarietyStatus::Kind::unknown:
      st.kind = MastStatus::Kind::unknown;
      st.reason = vp.status.certificate;
      break;
  }
  return st;
}

SlackReport slack_report(const Presentation&, const VarietyPresentation& vp) {
  if (vp.status.kind != VarietyStatus::Kind::nonempty)
    throw Error(ErrorKind::precondition, "slack report requires a mast (nonempty variety)");
  SlackReport rep;
  for (const auto& v : vp.ctx.vars) {
    VarClassification c = classify_variable(v, vp.polys, vp.ctx.vars);
    if (c.status == SlackStatus::tight && !c.values_verified) {
      if (vp.status.solutions_complete) {
        std::set<Rational> attained;
        for (const auto& s : vp.status.solutions) attained.insert(s.at(v));
        c.values.assign(attained.begin(), attained.end());
        c.values_verified = true;
      } else {
        std::vector<Rational> kept;
        bool all_checked = true;
        std::vector<VarKey> rest;
        for (const auto& w : vp.ctx.vars)
          if (!(w == v)) rest.push_back(w);
        for (const auto& val : c.values) {
          std::vector<Polynomial> rp;
          for (const auto& p : vp.polys) rp.push_back(p.substitute({{v, val}}));
          VarietyStatus sub = basic_status(rp, rest);
          if (sub.kind == VarietyStatus::Kind::nonempty)
            kept.push_back(val);
          else if (sub.kind == VarietyStatus::Kind::unknown) {
            kept.push_back(val);
            all_checked = false;
          }
        }
        c.values = kept;
        c.values_verified = all_checked;
      }
    }
    if (!occurs(v, vp.polys)) rep.free_count++;
    rep.vars.push_back(std::move(c));
  }
  for (int d = 0; d < (int)vp.ctx.detours.size(); ++d) {
    DetourFlags f;
    f.detour_index = d;
    const Detour& det = vp.ctx.detours[d];
    // circular: some v_i = alpha . c . u with c a nontrivial cycle at target(u)
    for (int vl : det.v_lens) {
      if (vl < det.u_len + 2) continue;
      if (vp.ctx.mast.arrows[vl - 1] != det.arrow) continue;
      if (vp.ctx.layer_vertex[vl - 1] == vp.ctx.layer_vertex[det.u_len]) f.circular = true;
    }
    bool any_slack = false, any_unknown = false, any_nonzero_value = false, all_zero = true;
    for (const auto& c : rep.vars) {
      if (vp.ctx.detour_of(c.var) != d) continue;
      if (c.status == SlackStatus::slack) any_slack = true;
      if (c.status == SlackStatus::unknown) any_unknown = true;
      if (c.status == SlackStatus::tight) {
        for (const auto& val : c.values)
          if (val != 0) any_nonzero_value = c.values_verified ? true : any_nonzero_value;
        for (const auto& val : c.values)
          if (val != 0) all_zero = false;
        if (!c.values_verified) all_zero = false;
      }
    }
    if (vp.status.solutions_complete) {
      bool nz = false;
      for (const auto& s : vp.status.solutions)
        for (const auto& c : rep.vars)
          if (vp.ctx.detour_of(c.var) == d && s.at(c.var) != 0) nz = true;
      f.halyard = nz || any_slack;
    } else if (any_slack || any_nonzero_value) {
      f.halyard = true;
    } else if (!any_unknown && all_zero) {
      f.halyard = false;
    }
    rep.detours.push_back(f);
  }
  return rep;
}

SlackReport slack_report(const Presentation& pres, const Path& p) {
  MastStatus st = mast_status(pres, p);
  if (st.kind != MastStatus::Kind::mast)
    throw Error(ErrorKind::precondition, "slack report requires a mast");
  return slack_report(pres, variety_polynomials(pres, p));
}

std::optional<std::vector<PointMap>> grid_points(const VarietyPresentation& vp,
                                                 const std::vector<Rational>& values, long cap) {
  double est = 1;
  for (size_t i = 0; i < vp.ctx.vars.size(); ++i) {
    est *= (double)values.size();
    if (est > (double)cap) return std::nullopt;
  }
  std::vector<PointMap> out;
  PointMap acc;
  std::function<void(size_t)> go = [&](size_t i) {
    if (i == vp.ctx.vars.size()) {
      out.push_back(acc);
      return;
    }
    const VarKey& v = vp.ctx.vars[i];
    for (const auto& val : values) {
      acc[v] = val;
      bool ok = true;
      for (const auto& p : vp.polys) {
        Polynomial r = p.substitute(acc);
        if (r.is_constant() && !r.is_zero()) {
          ok = false;
          break;
        }
      }
      if (ok) go(i + 1);
    }
    acc.erase(v);
  };
  go(0);
  return out;
}

std::vector<Rational> grid_range(long lo, long hi) {
  std::vector<Rational> out;
  for (long k = lo; k <= hi; ++k) out.push_back(Rational(k));
  return out;
}

}  // namespace uniserial
