#include "uniserial/fibers.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace uniserial {

namespace {

void require_on_variety(const VarietyPresentation& vp, const PointMap& k, const char* who) {
  for (const auto& v : vp.ctx.vars)
    if (!k.count(v))
      throw Error(ErrorKind::precondition, std::string(who) + ": point misses coordinate " + v.str());
  for (const auto& p : vp.polys)
    if (p.eval(k) != 0)
      throw Error(ErrorKind::precondition,
                  std::string(who) + ": point fails defining polynomial " + p.str());
}

Path subword(const Path& mast, int from, int to) {  // arrows [from, to)
  Path w;
  w.arrows.assign(mast.arrows.begin() + from, mast.arrows.begin() + to);
  w.base = 0;  // caller fixes
  return w;
}

FiberSystem build_fiber_system(const Presentation& pres, const VarietyPresentation& vp,
                               const PointMap& base) {
  require_on_variety(vp, base, "fiber system");
  FiberSystem fs;
  fs.ctx = vp.ctx;
  fs.base = base;
  fs.cycle_lens = recurrence_lengths(vp.ctx);
  const Path& mast = vp.ctx.mast;
  for (int d = 0; d < (int)fs.ctx.detours.size(); ++d) {
    const Detour& det = fs.ctx.detours[d];
    for (int i = 1; i <= (int)det.v_lens.size(); ++i) {
      VarKey vi = fs.ctx.var(d, i);
      std::vector<Rational> arow;
      for (int j = 0; j < (int)fs.cycle_lens.size(); ++j) {
        // word alpha . u . w_j applied from the bottom layer
        Path word = subword(mast, 0, fs.cycle_lens[j]);
        word.base = mast.base;
        for (int k = 0; k < det.u_len; ++k) word.arrows.push_back(mast.arrows[k]);
        word.arrows.push_back(det.arrow);
        Evaluation e = substitution_eval(pres, fs.ctx, word, 0);
        auto it = e.find(vi.v_len);
        arow.push_back(it == e.end() ? Rational(0) : it->second.eval(base));
      }
      fs.a[vi] = std::move(arow);
      for (int mu = 1; mu < i; ++mu) {
        VarKey vmu = fs.ctx.var(d, mu);
        std::vector<Rational> brow;
        for (int j = 0; j < (int)fs.cycle_lens.size(); ++j) {
          Path word = subword(mast, 0, fs.cycle_lens[j]);
          word.base = mast.base;
          for (int k = 0; k < vmu.v_len; ++k) word.arrows.push_back(mast.arrows[k]);
          Evaluation e = substitution_eval(pres, fs.ctx, word, 0);
          auto it = e.find(vi.v_len);
          brow.push_back(it == e.end() ? Rational(0) : it->second.eval(base));
        }
        fs.b[{vi, vmu}] = std::move(brow);
      }
    }
  }
  return fs;
}

}  // namespace

FiberSystem fiber_system(const Presentation& pres, const Path& p, const PointMap& base) {
  VarietyPresentation vp = variety_polynomials(pres, p);
  return build_fiber_system(pres, vp, base);
}

LinearSystem instantiate_fiber_rows(const FiberSystem& fs, const PointMap& query) {
  LinearSystem sys;
  int t = (int)fs.cycle_lens.size();
  for (const auto& v : fs.ctx.vars) {
    LinearRow row;
    row.constant = query.at(v) - fs.base.at(v);
    const auto& arow = fs.a.at(v);
    for (int j = 0; j < t; ++j) {
      Rational c = arow[j];
      int d = fs.ctx.detour_of(v);
      for (int mu = 1; mu < v.index; ++mu) {
        VarKey vmu = fs.ctx.var(d, mu);
        c -= query.at(vmu) * fs.b.at({v, vmu})[j];
      }
      if (c != 0) row.coeffs[VarKey::aux("Z", j + 1)] = c;
    }
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

IsoResult iso_equivalent(const Presentation& pres, const Path& p, const PointMap& k0,
                         const PointMap& k) {
  VarietyPresentation vp = variety_polynomials(pres, p);
  require_on_variety(vp, k0, "iso test");
  require_on_variety(vp, k, "iso test");
  FiberSystem fs = build_fiber_system(pres, vp, k0);
  ConsistencyResult res = solve_consistency(instantiate_fiber_rows(fs, k));
  IsoResult out;
  out.equivalent = res.consistent;
  if (res.consistent) out.witness = res.witness;
  return out;
}

IsoPartition iso_classes(const Presentation& pres, const Path& p,
                         const std::vector<PointMap>& points) {
  return iso_classes(pres, variety_polynomials(pres, p), points);
}

IsoPartition iso_classes(const Presentation& pres, const VarietyPresentation& vp,
                         const std::vector<PointMap>& points) {
  std::vector<FiberSystem> systems;
  for (const auto& k : points) systems.push_back(build_fiber_system(pres, vp, k));

  std::vector<int> parent(points.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  IsoPartition out;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (find((int)i) == find((int)j)) continue;
      bool ij = solve_consistency(instantiate_fiber_rows(systems[i], points[j])).consistent;
      bool ji = solve_consistency(instantiate_fiber_rows(systems[j], points[i])).consistent;
      if (ij != ji) {
        std::ostringstream msg;
        msg << "asymmetric outcome between points " << i << " and " << j;
        out.anomalies.push_back(msg.str());
        continue;
      }
      if (ij) parent[find((int)j)] = find((int)i);
    }
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < points.size(); ++i) groups[find((int)i)].push_back((int)i);
  for (auto& [root, members] : groups) out.classes.push_back(members);
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

PointMap normalize_point(const Presentation& pres, const Path& p, const PointMap& k) {
  VarietyPresentation vp = variety_polynomials(pres, p);
  require_on_variety(vp, k, "normalize");
  SlackReport rep = slack_report(pres, vp);

  struct Step {
    VarKey var;
    int w_len;
  };
  std::vector<Step> steps;
  for (const auto& c : rep.vars) {
    if (c.status == SlackStatus::tight) continue;
    if (c.status == SlackStatus::unknown)
      throw Error(ErrorKind::unsupported,
                  "normalization needs a decisive slack classification for " + c.var.str());
    auto w = cycle_factorization(vp.ctx, c.var);
    if (!w)
      throw Error(ErrorKind::unsupported,
                  "slack variable " + c.var.str() + " lacks the cycle factorization");
    steps.push_back({c.var, *w});
  }
  std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
    return a.w_len < b.w_len;
  });
  for (size_t i = 0; i + 1 < steps.size(); ++i)
    if (steps[i].w_len == steps[i + 1].w_len)
      throw Error(ErrorKind::invariant, "cycle lengths of slack variables are not distinct");

  PointMap cur = k;
  for (const Step& step : steps) {
    Rational l = cur.at(step.var);
    if (l == 0) continue;
    FiberSystem fs = build_fiber_system(pres, vp, cur);
    int j = -1;
    for (int idx = 0; idx < (int)fs.cycle_lens.size(); ++idx)
      if (fs.cycle_lens[idx] == step.w_len) j = idx;
    if (j < 0) throw Error(ErrorKind::invariant, "factorization cycle is not a recurrence");
    Rational c = -l;
    // solve the triangular coordinate update k'_i = k_i + c(a_ij - sum k'_mu b)
    PointMap nxt;
    for (int d = 0; d < (int)fs.ctx.detours.size(); ++d) {
      for (int i = 1; i <= (int)fs.ctx.detours[d].v_lens.size(); ++i) {
        VarKey vi = fs.ctx.var(d, i);
        Rational val = cur.at(vi) + c * fs.a.at(vi)[j];
        for (int mu = 1; mu < i; ++mu) {
          VarKey vmu = fs.ctx.var(d, mu);
          val -= c * nxt.at(vmu) * fs.b.at({vi, vmu})[j];
        }
        nxt[vi] = val;
      }
    }
    cur = nxt;
    if (cur.at(step.var) != 0)
      throw Error(ErrorKind::invariant, "normalization step failed to clear " + step.var.str());
  }
  return cur;
}

LayeredGraph layered_graph(const Presentation& pres, const Path& p, const PointMap& k) {
  VarietyPresentation vp = variety_polynomials(pres, p);
  require_on_variety(vp, k, "graph");
  LayeredGraph g;
  g.layer_vertex = vp.ctx.layer_vertex;
  g.spine_arrows = p.arrows;
  for (int d = 0; d < (int)vp.ctx.detours.size(); ++d) {
    const Detour& det = vp.ctx.detours[d];
    int shortest = -1;
    for (int i = 1; i <= (int)det.v_lens.size(); ++i)
      if (k.at(vp.ctx.var(d, i)) != 0) {
        shortest = det.v_lens[i - 1];
        break;
      }
    if (shortest < 0) continue;
    g.edges.push_back({det.u_len, shortest, det.arrow_name});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.to, a.arrow) < std::tie(b.from, b.to, b.arrow);
  });
  return g;
}

std::string emit_dot(const Quiver& q, const LayeredGraph& g) {
  std::ostringstream out;
  out << "// paths are written in composition order: the rightmost arrow acts first\n";
  out << "digraph uniserial_module {\n";
  out << "  rankdir=TB;\n";
  auto node = [&](int layer) {
    return "L" + std::to_string(layer) + "_" + q.vertex_name(g.layer_vertex[layer]);
  };
  for (size_t i = 0; i < g.layer_vertex.size(); ++i)
    out << "  " << node((int)i) << " [label=\"" << q.vertex_name(g.layer_vertex[i]) << "\"];\n";
  for (size_t i = 0; i < g.spine_arrows.size(); ++i)
    out << "  " << node((int)i) << " -> " << node((int)i + 1) << " [label=\""
        << q.arrow(g.spine_arrows[i]).name << "\"];\n";
  for (const auto& e : g.edges)
    out << "  " << node(e.from) << " -> " << node(e.to) << " [label=\"" << e.arrow
        << "\", constraint=false, style=dashed];\n";
  out << "}\n";
  return out.str();
}

}  // namespace uniserial
