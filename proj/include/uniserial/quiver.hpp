#pragma once

#include <string>
#include <vector>

#include "uniserial/rational.hpp"

namespace uniserial {

/// A finite directed multigraph. Vertices and arrows are referred to by
/// index; both lists are kept sorted by name so that every enumeration in
/// the library is reproducible.
struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;  // sorted, unique
  std::vector<Arrow> arrows;          // sorted by name, names unique

  int vertex_id(const std::string& name) const;  // -1 if absent
  int arrow_id(const std::string& name) const;   // -1 if absent
  const std::string& vertex_name(int v) const { return vertices.at(v); }
  const Arrow& arrow(int a) const { return arrows.at(a); }

  /// Arrows leaving v, in name order.
  std::vector<int> arrows_from(int v) const;
  bool has_vertex(int v) const { return v >= 0 && v < (int)vertices.size(); }
};

/// A path, stored in application order: arrows[0] is applied first. The
/// conventional rendering reverses this (rightmost factor acts first), and
/// every serializer states that convention in its output header.
struct Path {
  int base = 0;             // start vertex; the only data for length 0
  std::vector<int> arrows;  // application order

  int length() const { return (int)arrows.size(); }
  bool trivial() const { return arrows.empty(); }
  bool operator==(const Path& o) const = default;
};

int source(const Quiver& q, const Path& p);
int target(const Quiver& q, const Path& p);
bool is_composable(const Quiver& q, const Path& p);

/// "q after p"; requires source(q) = target(p).
Path compose(const Quiver& qv, const Path& q, const Path& p);

/// The length+1 right subpaths of p, by increasing length, starting with the
/// trivial path at source(p).
std::vector<Path> right_subpaths(const Quiver& q, const Path& p);

bool is_right_subpath(const Quiver& q, const Path& u, const Path& p);
bool is_left_subpath(const Quiver& q, const Path& u, const Path& p);
bool is_subpath(const Quiver& q, const Path& u, const Path& p);

/// True iff two distinct arrows share both endpoints.
bool has_double_arrows(const Quiver& q);

/// All paths from `from` to `to` with minlen <= length <= maxlen, ordered by
/// (length, arrow-name sequence). Duplicate-free.
std::vector<Path> enumerate_paths(const Quiver& q, int from, int to, int minlen, int maxlen);

/// All paths e -> e of length <= maxlen, including the trivial one.
std::vector<Path> cycles_at(const Quiver& q, int e, int maxlen);

/// Rendering in composition order (rightmost arrow applied first), tokens
/// separated by spaces; a trivial path renders as "e(<vertex>)".
std::string render_path(const Quiver& q, const Path& p);

/// Parses a space-separated arrow-name sequence written in composition order
/// (leftmost token applied last). Requires at least one token.
Path parse_path(const Quiver& q, const std::string& text);

/// Canonical path order: (length, application-order name sequence).
bool path_less(const Quiver& q, const Path& a, const Path& b);

bool is_acyclic(const Quiver& q);

}  // namespace uniserial
