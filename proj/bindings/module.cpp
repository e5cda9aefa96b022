#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uniserial/cli.hpp"
#include "uniserial/decide.hpp"
#include "uniserial/fibers.hpp"
#include "uniserial/generators.hpp"

namespace py = pybind11;
using namespace uniserial;

namespace {

PointMap point_from(const MastContext& ctx, const std::vector<std::string>& coords) {
  if (coords.size() != ctx.vars.size())
    throw Error(ErrorKind::precondition, "point arity does not match the variable count");
  PointMap k;
  for (size_t i = 0; i < coords.size(); ++i) k[ctx.vars[i]] = parse_rational(coords[i]);
  return k;
}

std::vector<std::string> point_to(const MastContext& ctx, const PointMap& k) {
  std::vector<std::string> out;
  for (const auto& v : ctx.vars) out.push_back(to_string(k.at(v)));
  return out;
}

}  // namespace

PYBIND11_MODULE(uniserial, m) {
  m.doc() =
      "Uniserial modules over quiver presentations: varieties, slack/tight "
      "classification, isomorphism classes and finite-type decisions. Paths "
      "are written in composition order (the rightmost arrow acts first).";

  py::register_exception<Error>(m, "UniserialError");

  py::class_<Presentation>(m, "Presentation")
      .def_property_readonly("monomial", [](const Presentation& p) { return p.monomial; })
      .def_property_readonly("loewy", [](const Presentation& p) { return p.loewy; })
      .def_property_readonly("warnings", [](const Presentation& p) { return p.warnings; })
      .def("serialize", [](const Presentation& p) { return serialize(p); })
      .def("opposite", [](const Presentation& p) { return opposite_presentation(p); })
      .def("vertices", [](const Presentation& p) { return p.quiver.vertices; })
      .def("arrows", [](const Presentation& p) {
        std::vector<std::string> out;
        for (const auto& a : p.quiver.arrows)
          out.push_back(a.name + ": " + p.quiver.vertex_name(a.source) + " -> " +
                        p.quiver.vertex_name(a.target));
        return out;
      });

  m.def("parse", &parse_presentation, py::arg("text"),
        "Parse a presentation from its text form.");

  m.def("masts", [](const Presentation& p) {
    std::vector<std::string> out;
    int n = (int)p.quiver.vertices.size();
    std::vector<Path> all;
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        for (const Path& q : enumerate_paths(p.quiver, v, w, 1, p.loewy - 1))
          if (mast_status(p, q).kind == MastStatus::Kind::mast) all.push_back(q);
    std::sort(all.begin(), all.end(),
              [&](const Path& a, const Path& b) { return path_less(p.quiver, a, b); });
    for (const Path& q : all) out.push_back(render_path(p.quiver, q));
    return out;
  });

  m.def("variety", [](const Presentation& p, const std::string& path) {
    return variety_json(p, parse_path(p.quiver, path));
  });
  m.def("slack", [](const Presentation& p, const std::string& path) {
    return slack_json(p, parse_path(p.quiver, path));
  });
  m.def("check_n", [](const Presentation& p) { return condition_n_json(p); });
  m.def(
      "decide",
      [](const Presentation& p, bool fastpath) {
        DecideOptions opts;
        opts.fastpath = fastpath;
        return report_json(p, decide_algebra(p, opts));
      },
      py::arg("presentation"), py::arg("fastpath") = true);
  m.def("decide_mast", [](const Presentation& p, const std::string& path) {
    return mast_verdict_json(p, decide_mast(p, parse_path(p.quiver, path)));
  });
  m.def("iso_equivalent", [](const Presentation& p, const std::string& path,
                             const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
    Path q = parse_path(p.quiver, path);
    MastContext ctx = build_mast_context(p, q);
    return iso_equivalent(p, q, point_from(ctx, a), point_from(ctx, b)).equivalent;
  });
  m.def("normalize", [](const Presentation& p, const std::string& path,
                        const std::vector<std::string>& coords) {
    Path q = parse_path(p.quiver, path);
    MastContext ctx = build_mast_context(p, q);
    return point_to(ctx, normalize_point(p, q, point_from(ctx, coords)));
  });
  m.def(
      "classes",
      [](const Presentation& p, const std::string& path, long lo, long hi) {
        Path q = parse_path(p.quiver, path);
        VarietyPresentation vp = variety_polynomials(p, q);
        auto pts = grid_points(vp, grid_range(lo, hi));
        if (!pts) throw Error(ErrorKind::precondition, "grid too large");
        return (long)iso_classes(p, vp, *pts).classes.size();
      },
      py::arg("presentation"), py::arg("path"), py::arg("lo") = -2, py::arg("hi") = 2);
  m.def("graph_dot", [](const Presentation& p, const std::string& path,
                        const std::vector<std::string>& coords) {
    Path q = parse_path(p.quiver, path);
    MastContext ctx = build_mast_context(p, q);
    return emit_dot(p.quiver, layered_graph(p, q, point_from(ctx, coords)));
  });
  m.def("realize_variety", [](const std::string& polys) {
    RealizedVariety rv = realize_variety(parse_multilinear(polys));
    return py::make_tuple(serialize(rv.pres), render_path(rv.pres.quiver, rv.mast));
  });
  m.def("tiled_order", [](const std::string& matrix) {
    return serialize(tiled_order_presentation(parse_exponent_matrix(matrix)));
  });
}
