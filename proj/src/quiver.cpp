#include "uniserial/quiver.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace uniserial {

int Quiver::vertex_id(const std::string& name) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), name);
  if (it != vertices.end() && *it == name) return (int)(it - vertices.begin());
  return -1;
}

int Quiver::arrow_id(const std::string& name) const {
  auto it = std::lower_bound(arrows.begin(), arrows.end(), name,
                             [](const Arrow& a, const std::string& n) { return a.name < n; });
  if (it != arrows.end() && it->name == name) return (int)(it - arrows.begin());
  return -1;
}

std::vector<int> Quiver::arrows_from(int v) const {
  std::vector<int> out;
  for (int i = 0; i < (int)arrows.size(); ++i)
    if (arrows[i].source == v) out.push_back(i);
  return out;
}

int source(const Quiver&, const Path& p) { return p.base; }

int target(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return p.base;
  return q.arrow(p.arrows.back()).target;
}

bool is_composable(const Quiver& q, const Path& p) {
  if (!q.has_vertex(p.base)) return false;
  int at = p.base;
  for (int a : p.arrows) {
    if (a < 0 || a >= (int)q.arrows.size()) return false;
    if (q.arrow(a).source != at) return false;
    at = q.arrow(a).target;
  }
  return true;
}

Path compose(const Quiver& qv, const Path& q, const Path& p) {
  if (source(qv, q) != target(qv, p))
    throw Error(ErrorKind::composition,
                "cannot compose: path starts at '" + qv.vertex_name(source(qv, q)) +
                    "' but the other ends at '" + qv.vertex_name(target(qv, p)) + "'");
  Path r = p;
  r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
  return r;
}

std::vector<Path> right_subpaths(const Quiver&, const Path& p) {
  std::vector<Path> out;
  out.reserve(p.length() + 1);
  for (int len = 0; len <= p.length(); ++len) {
    Path u;
    u.base = p.base;
    u.arrows.assign(p.arrows.begin(), p.arrows.begin() + len);
    out.push_back(std::move(u));
  }
  return out;
}

bool is_right_subpath(const Quiver& q, const Path& u, const Path& p) {
  if (u.length() > p.length()) return false;
  if (source(q, u) != source(q, p)) return false;
  return std::equal(u.arrows.begin(), u.arrows.end(), p.arrows.begin());
}

bool is_left_subpath(const Quiver& q, const Path& u, const Path& p) {
  if (u.length() > p.length()) return false;
  if (u.trivial()) return target(q, u) == target(q, p) && u.base == target(q, p);
  return std::equal(u.arrows.rbegin(), u.arrows.rend(), p.arrows.rbegin());
}

bool is_subpath(const Quiver& q, const Path& u, const Path& p) {
  if (u.length() > p.length()) return false;
  if (u.trivial()) {
    // a trivial subpath is a vertex visited by p
    int at = p.base;
    if (at == u.base) return true;
    for (int a : p.arrows) {
      at = q.arrow(a).target;
      if (at == u.base) return true;
    }
    return false;
  }
  for (int off = 0; off + u.length() <= p.length(); ++off)
    if (std::equal(u.arrows.begin(), u.arrows.end(), p.arrows.begin() + off)) return true;
  return false;
}

bool has_double_arrows(const Quiver& q) {
  for (size_t i = 0; i < q.arrows.size(); ++i)
    for (size_t j = i + 1; j < q.arrows.size(); ++j)
      if (q.arrows[i].source == q.arrows[j].source && q.arrows[i].target == q.arrows[j].target)
        return true;
  return false;
}

std::vector<Path> enumerate_paths(const Quiver& q, int from, int to, int minlen, int maxlen) {
  std::vector<Path> out;
  if (minlen < 0) minlen = 0;
  if (maxlen < minlen) return out;
  Path cur;
  cur.base = from;
  std::function<void(int)> dfs = [&](int at) {
    if (cur.length() >= minlen && at == to) out.push_back(cur);
    if (cur.length() == maxlen) return;
    for (int a : q.arrows_from(at)) {
      cur.arrows.push_back(a);
      dfs(q.arrow(a).target);
      cur.arrows.pop_back();
    }
  };
  dfs(from);
  std::stable_sort(out.begin(), out.end(),
                   [&](const Path& a, const Path& b) { return path_less(q, a, b); });
  return out;
}

std::vector<Path> cycles_at(const Quiver& q, int e, int maxlen) {
  if (maxlen < 0) throw Error(ErrorKind::precondition, "cycles_at: negative bound");
  return enumerate_paths(q, e, e, 0, maxlen);
}

std::string render_path(const Quiver& q, const Path& p) {
  if (p.trivial()) return "e(" + q.vertex_name(p.base) + ")";
  std::string s;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!s.empty()) s += ' ';
    s += q.arrow(*it).name;
  }
  return s;
}

Path parse_path(const Quiver& q, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  if (tokens.empty()) throw Error(ErrorKind::syntax, "empty path");
  Path p;
  // leftmost token is applied last
  std::reverse(tokens.begin(), tokens.end());
  for (const auto& t : tokens) {
    int a = q.arrow_id(t);
    if (a < 0) throw Error(ErrorKind::syntax, "unknown arrow '" + t + "'");
    p.arrows.push_back(a);
  }
  p.base = q.arrow(p.arrows.front()).source;
  if (!is_composable(q, p))
    throw Error(ErrorKind::composition, "path '" + text + "' is not composable");
  return p;
}

bool path_less(const Quiver& q, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (int i = 0; i < a.length(); ++i) {
    const std::string& x = q.arrow(a.arrows[i]).name;
    const std::string& y = q.arrow(b.arrows[i]).name;
    if (x != y) return x < y;
  }
  return q.vertex_name(a.base) < q.vertex_name(b.base);
}

bool is_acyclic(const Quiver& q) {
  int n = (int)q.vertices.size();
  std::vector<int> color(n, 0);
  std::function<bool(int)> dfs = [&](int v) {
    color[v] = 1;
    for (int a : q.arrows_from(v)) {
      int w = q.arrow(a).target;
      if (color[w] == 1) return false;
      if (color[w] == 0 && !dfs(w)) return false;
    }
    color[v] = 2;
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (color[v] == 0 && !dfs(v)) return false;
  return true;
}

}  // namespace uniserial
