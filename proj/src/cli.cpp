#include "uniserial/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "uniserial/decide.hpp"
#include "uniserial/generators.hpp"

namespace uniserial {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* kUsage = R"(usage: uniserial <command> <file> [options]

Paths on the command line are written in composition order: the leftmost
arrow acts last, the rightmost acts first (so "g b a" means g after b after a).

commands:
  validate <file>                      parse and summarize a presentation
  masts <file>                         list the masts (length 1..loewy-1)
  variety <file> --path P              defining polynomials and status
  slack <file> --path P                slack/tight classification
  check-n <file>                       arrow alignment (condition N) report
  decide <file> [--no-fastpath]        finite/infinite uniserial type
  decide-mast <file> --path P          verdict for one mast
  iso <file> --path P --points A;B     are two points isomorphic modules
  classes <file> --path P --grid LO..HI  iso classes over a grid
  normalize <file> --path P --point A  canonical representative point
  graph <file> --path P --point A [--dot]  layered graph (JSON or DOT)
  gen-variety <file>                   presentation realizing a polynomial system
  gen-tiled <file>                     presentation of a tiled-order quotient

options:
  --path P      space-separated arrow names, composition order
  --points A;B  two points, coordinates comma-separated rationals
  --point A     one point
  --grid LO..HI integer grid bounds, e.g. -2..2
  --dot         emit DOT instead of JSON (graph)
  --no-fastpath disable the monomial/acyclic/catalogue shortcuts (decide)
)";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string command;
  std::string file;
  std::string path;
  std::string points;
  std::string point;
  std::string grid = "-2..2";
  bool dot = false;
  bool text = false;
  bool fastpath = true;
};

Options parse_args(const std::vector<std::string>& args) {
  Options o;
  size_t i = 0;
  if (i < args.size()) o.command = args[i++];
  auto need_value = [&](const std::string& flag) {
    if (i >= args.size()) throw Error(ErrorKind::io, "missing value for " + flag);
    return args[i++];
  };
  while (i < args.size()) {
    const std::string& a = args[i];
    if (a == "--path") {
      ++i;
      o.path = need_value("--path");
    } else if (a == "--points") {
      ++i;
      o.points = need_value("--points");
    } else if (a == "--point") {
      ++i;
      o.point = need_value("--point");
    } else if (a == "--grid") {
      ++i;
      o.grid = need_value("--grid");
    } else if (a == "--dot") {
      ++i;
      o.dot = true;
    } else if (a == "--text") {
      ++i;
      o.text = true;
    } else if (a == "--no-fastpath") {
      ++i;
      o.fastpath = false;
    } else if (a.rfind("--", 0) == 0) {
      throw Error(ErrorKind::io, "unknown flag '" + a + "'");
    } else if (o.file.empty()) {
      o.file = a;
      ++i;
    } else {
      throw Error(ErrorKind::io, "unexpected argument '" + a + "'");
    }
  }
  return o;
}

PointMap load_point(const MastContext& ctx, const std::string& text) {
  std::vector<Rational> coords;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    std::string trimmed;
    for (char c : cur)
      if (!isspace((unsigned char)c)) trimmed += c;
    coords.push_back(parse_rational(trimmed));
  }
  if (coords.size() != ctx.vars.size())
    throw Error(ErrorKind::io, "point has " + std::to_string(coords.size()) +
                                   " coordinates but the mast has " +
                                   std::to_string(ctx.vars.size()) + " variables");
  PointMap k;
  for (size_t i = 0; i < coords.size(); ++i) k[ctx.vars[i]] = coords[i];
  return k;
}

std::vector<Rational> load_grid(const std::string& bounds) {
  auto dots = bounds.find("..");
  if (dots == std::string::npos)
    throw Error(ErrorKind::io, "grid must look like lo..hi, got '" + bounds + "'");
  long lo, hi;
  try {
    lo = std::stol(bounds.substr(0, dots));
    hi = std::stol(bounds.substr(dots + 2));
  } catch (...) {
    throw Error(ErrorKind::io, "grid must look like lo..hi, got '" + bounds + "'");
  }
  if (lo > hi) throw Error(ErrorKind::io, "empty grid");
  return grid_range(lo, hi);
}

ordered_json point_array(const MastContext& ctx, const PointMap& k) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : ctx.vars) arr.push_back(to_string(k.at(v)));
  return arr;
}

int dispatch(const Options& o, std::ostream& out) {
  if (o.command == "gen-variety") {
    MultilinearSystem sys = parse_multilinear(read_file(o.file));
    RealizedVariety rv = realize_variety(sys);
    ordered_json j;
    j["presentation"] = serialize(rv.pres);
    j["mast"] = render_path(rv.pres.quiver, rv.mast);
    ordered_json vars = ordered_json::array();
    for (const auto& v : rv.var_of_input) vars.push_back(v.str());
    j["variables"] = vars;
    if (o.text)
      out << serialize(rv.pres) << "# mast: " << render_path(rv.pres.quiver, rv.mast) << "\n";
    else
      out << j.dump(2) << "\n";
    return 0;
  }
  if (o.command == "gen-tiled") {
    ExponentMatrix mat = parse_exponent_matrix(read_file(o.file));
    Presentation pres = tiled_order_presentation(mat);
    if (o.text)
      out << serialize(pres);
    else {
      ordered_json j;
      j["presentation"] = serialize(pres);
      out << j.dump(2) << "\n";
    }
    return 0;
  }

  Presentation pres = parse_presentation(read_file(o.file));
  auto need_path = [&]() {
    if (o.path.empty()) throw Error(ErrorKind::io, o.command + " needs --path");
    return parse_path(pres.quiver, o.path);
  };

  if (o.command == "validate") {
    ordered_json j;
    j["ok"] = true;
    j["vertices"] = pres.quiver.vertices.size();
    j["arrows"] = pres.quiver.arrows.size();
    j["relations"] = pres.relations.size();
    j["loewy"] = pres.loewy;
    j["monomial"] = pres.monomial;
    j["warnings"] = pres.warnings;
    out << j.dump(2) << "\n";
    return 0;
  }
  if (o.command == "masts") {
    ordered_json arr = ordered_json::array();
    bool any_unknown = false;
    int n = (int)pres.quiver.vertices.size();
    std::vector<Path> all;
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        for (const Path& p : enumerate_paths(pres.quiver, v, w, 1, pres.loewy - 1))
          all.push_back(p);
    std::sort(all.begin(), all.end(),
              [&](const Path& a, const Path& b) { return path_less(pres.quiver, a, b); });
    for (const Path& p : all) {
      MastStatus st = mast_status(pres, p);
      if (st.kind == MastStatus::Kind::not_mast) continue;
      ordered_json e;
      e["path"] = render_path(pres.quiver, p);
      e["status"] = st.kind == MastStatus::Kind::mast ? "Mast" : "Unknown";
      if (st.kind == MastStatus::Kind::unknown) any_unknown = true;
      arr.push_back(e);
    }
    ordered_json j;
    j["masts"] = arr;
    out << j.dump(2) << "\n";
    return any_unknown ? 2 : 0;
  }
  if (o.command == "variety") {
    Path p = need_path();
    out << variety_json(pres, p);
    VarietyPresentation vp = variety_polynomials(pres, p);
    return vp.status.kind == VarietyStatus::Kind::unknown ? 2 : 0;
  }
  if (o.command == "slack") {
    Path p = need_path();
    out << slack_json(pres, p);
    return 0;
  }
  if (o.command == "check-n") {
    out << condition_n_json(pres);
    ConditionNReport rep = check_condition_n(pres);
    return rep.verdict == Verdict::unknown ? 2 : 0;
  }
  if (o.command == "decide") {
    DecideOptions opts;
    opts.fastpath = o.fastpath;
    AlgebraVerdict v = decide_algebra(pres, opts);
    out << report_json(pres, v);
    return v.status == AlgebraVerdict::Status::unknown ? 2 : 0;
  }
  if (o.command == "decide-mast") {
    Path p = need_path();
    MastVerdict v = decide_mast(pres, p);
    out << mast_verdict_json(pres, v);
    return v.status == MastVerdict::Status::unknown ? 2 : 0;
  }
  if (o.command == "iso") {
    Path p = need_path();
    MastContext ctx = build_mast_context(pres, p);
    auto semi = o.points.find(';');
    if (o.points.empty() || semi == std::string::npos)
      throw Error(ErrorKind::io, "iso needs --points \"A;B\"");
    PointMap a = load_point(ctx, o.points.substr(0, semi));
    PointMap b = load_point(ctx, o.points.substr(semi + 1));
    IsoResult r = iso_equivalent(pres, p, a, b);
    ordered_json j;
    j["path"] = render_path(pres.quiver, p);
    j["result"] = r.equivalent ? "Equivalent" : "Distinct";
    if (r.equivalent) {
      ordered_json w;
      for (const auto& [k, v] : r.witness) w[k.str()] = to_string(v);
      j["witness"] = w;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  if (o.command == "classes") {
    Path p = need_path();
    VarietyPresentation vp = variety_polynomials(pres, p);
    auto pts = grid_points(vp, load_grid(o.grid));
    if (!pts) throw Error(ErrorKind::io, "grid too large to enumerate");
    IsoPartition part = iso_classes(pres, vp, *pts);
    ordered_json j;
    j["path"] = render_path(pres.quiver, p);
    j["grid"] = o.grid;
    j["points"] = pts->size();
    j["classes"] = part.classes.size();
    ordered_json cls = ordered_json::array();
    for (const auto& c : part.classes) {
      ordered_json members = ordered_json::array();
      for (int idx : c) members.push_back(point_array(vp.ctx, (*pts)[idx]));
      cls.push_back(members);
    }
    j["members"] = cls;
    j["anomalies"] = part.anomalies;
    out << j.dump(2) << "\n";
    return part.anomalies.empty() ? 0 : 2;
  }
  if (o.command == "normalize") {
    Path p = need_path();
    MastContext ctx = build_mast_context(pres, p);
    if (o.point.empty()) throw Error(ErrorKind::io, "normalize needs --point");
    PointMap k = load_point(ctx, o.point);
    PointMap nk = normalize_point(pres, p, k);
    ordered_json j;
    j["path"] = render_path(pres.quiver, p);
    j["input"] = point_array(ctx, k);
    j["normalized"] = point_array(ctx, nk);
    out << j.dump(2) << "\n";
    return 0;
  }
  if (o.command == "graph") {
    Path p = need_path();
    MastContext ctx = build_mast_context(pres, p);
    if (o.point.empty()) throw Error(ErrorKind::io, "graph needs --point");
    PointMap k = load_point(ctx, o.point);
    LayeredGraph g = layered_graph(pres, p, k);
    if (o.dot) {
      out << emit_dot(pres.quiver, g);
      return 0;
    }
    ordered_json j;
    j["path"] = render_path(pres.quiver, p);
    ordered_json layers = ordered_json::array();
    for (int v : g.layer_vertex) layers.push_back(pres.quiver.vertex_name(v));
    j["layers"] = layers;
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges) {
      ordered_json je;
      je["from"] = e.from;
      je["to"] = e.to;
      je["arrow"] = e.arrow;
      edges.push_back(je);
    }
    j["detour_edges"] = edges;
    out << j.dump(2) << "\n";
    return 0;
  }
  throw Error(ErrorKind::io, "unknown command '" + o.command + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "help") {
    err << kUsage;
    return args.empty() ? 1 : 0;
  }
  try {
    Options o = parse_args(args);
    if (o.file.empty() && o.command != "help") throw Error(ErrorKind::io, "missing input file");
    return dispatch(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace uniserial
