#include "uniserial/generators.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "uniserial/variety.hpp"

namespace uniserial {

namespace {

VarKey input_var(int j) { return VarKey::aux("X", j); }

}  // namespace

MultilinearSystem make_multilinear(int var_count, std::vector<Polynomial> polys) {
  if (var_count < 1) throw Error(ErrorKind::precondition, "need at least one variable");
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms())
      for (const auto& [v, e] : m) {
        if (v.kind != VarKey::Kind::aux || v.arrow != "X" || v.index < 1 || v.index > var_count)
          throw Error(ErrorKind::precondition, "unexpected variable " + v.str());
        if (e > 1)
          throw Error(ErrorKind::precondition,
                      "variable " + v.str() + " occurs to a power > 1 (not multilinear)");
      }
  MultilinearSystem sys;
  sys.var_count = var_count;
  sys.polys = std::move(polys);
  return sys;
}

MultilinearSystem parse_multilinear(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::vector<Polynomial> polys;
  int declared = 0, max_seen = 0;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream probe(raw);
    std::string first;
    if (!(probe >> first)) continue;
    if (first == "vars:") {
      if (!(probe >> declared) || declared < 1)
        throw Error(ErrorKind::syntax, "line " + std::to_string(lineno) + ": bad vars: count");
      continue;
    }
    // tokenize a polynomial: terms split on +/-, factors on '*'
    Polynomial poly;
    std::string s = raw;
    int sign = +1;
    std::string term;
    auto flush = [&](int next_sign) {
      std::string body;
      for (char c : term)
        if (!isspace((unsigned char)c)) body += c;
      if (!body.empty()) {
        Polynomial factor{Rational(sign)};
        size_t pos = 0;
        while (pos < body.size()) {
          size_t star = body.find('*', pos);
          std::string tok = body.substr(pos, star == std::string::npos ? std::string::npos
                                                                       : star - pos);
          if (tok.empty())
            throw Error(ErrorKind::syntax, "line " + std::to_string(lineno) + ": empty factor");
          if (tok[0] == 'X') {
            int idx;
            try {
              idx = std::stoi(tok.substr(1));
            } catch (...) {
              throw Error(ErrorKind::syntax,
                          "line " + std::to_string(lineno) + ": bad variable '" + tok + "'");
            }
            max_seen = std::max(max_seen, idx);
            factor = factor * Polynomial::variable(input_var(idx));
          } else {
            factor = factor * Polynomial(parse_rational(tok));
          }
          if (star == std::string::npos) break;
          pos = star + 1;
        }
        poly += factor;
      } else if (sign == -1) {
        throw Error(ErrorKind::syntax, "line " + std::to_string(lineno) + ": dangling sign");
      }
      term.clear();
      sign = next_sign;
    };
    bool any = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '+' || s[i] == '-') {
        bool at_start = term.find_first_not_of(" \t") == std::string::npos;
        if (at_start && !any && s[i] == '-') {
          sign = -1;
          any = true;
          continue;
        }
        flush(s[i] == '-' ? -1 : +1);
        any = true;
      } else {
        term += s[i];
        if (!isspace((unsigned char)s[i])) any = true;
      }
    }
    flush(+1);
    polys.push_back(poly);
  }
  int m = std::max(declared, max_seen);
  if (m < 1)
    throw Error(ErrorKind::syntax, "no variables: add a 'vars: m' header or a polynomial");
  return make_multilinear(m, std::move(polys));
}

RealizedVariety realize_variety(const MultilinearSystem& sys) {
  int m = sys.var_count;
  std::ostringstream text;
  text << "vertices:";
  for (int v = 0; v <= 2 * m; ++v) text << " v" << v;
  text << "\n";
  // gamma_i: 2i -> 2i+1 (i = 0..m-1), loops b_j at 2j-1, a_j: 2j-1 -> 2j
  for (int i = 0; i + 1 <= m; ++i)
    text << "arrow g" << i << ": v" << 2 * i << " -> v" << 2 * i + 1 << "\n";
  for (int j = 1; j <= m; ++j) {
    text << "arrow b" << j << ": v" << 2 * j - 1 << " -> v" << 2 * j - 1 << "\n";
    text << "arrow a" << j << ": v" << 2 * j - 1 << " -> v" << 2 * j << "\n";
  }
  text << "loewy: " << 3 * m + 1 << "\n";
  text << "relations:\n";
  for (int j = 1; j <= m; ++j) text << "b" << j << " b" << j << "\n";
  // r_i = sum_A c_i(A) (s_m g_{m-1} ... s_1 g_0), s_j = a_j if j in A else a_j b_j
  for (const auto& f : sys.polys) {
    std::string line;
    bool first = true;
    for (const auto& [mono, coeff] : f.terms()) {
      std::set<int> A;
      for (const auto& [v, e] : mono) A.insert(v.index);
      // word in application order: g0, [b1], a1, g1, [b2], a2, ...
      std::vector<std::string> applied;
      for (int j = 1; j <= m; ++j) {
        applied.push_back("g" + std::to_string(j - 1));
        if (!A.count(j)) applied.push_back("b" + std::to_string(j));
        applied.push_back("a" + std::to_string(j));
      }
      std::string rendered;
      for (auto it = applied.rbegin(); it != applied.rend(); ++it)
        rendered += (rendered.empty() ? "" : " ") + *it;
      Rational abs = coeff < 0 ? Rational(-coeff) : coeff;
      std::string piece;
      if (abs != 1) piece = to_string(abs) + "*";
      piece += rendered;
      if (first) {
        line = (coeff < 0 ? "-" : "") + piece;
        first = false;
      } else {
        line += (coeff < 0 ? " - " : " + ") + piece;
      }
    }
    if (!first) text << line << "\n";
  }
  RealizedVariety out;
  out.pres = parse_presentation(text.str());
  // designated mast p = p_m g_{m-1} ... p_1 g_0 in application order
  std::vector<std::string> applied;
  for (int j = 1; j <= m; ++j) {
    applied.push_back("g" + std::to_string(j - 1));
    applied.push_back("b" + std::to_string(j));
    applied.push_back("a" + std::to_string(j));
  }
  std::string rendered;
  for (auto it = applied.rbegin(); it != applied.rend(); ++it)
    rendered += (rendered.empty() ? "" : " ") + *it;
  out.mast = parse_path(out.pres.quiver, rendered);
  MastContext ctx = build_mast_context(out.pres, out.mast);
  for (int j = 1; j <= m; ++j) {
    std::string an = "a" + std::to_string(j);
    bool found = false;
    for (const auto& v : ctx.vars)
      if (v.arrow == an) {
        out.var_of_input.push_back(v);
        found = true;
      }
    if (!found) throw Error(ErrorKind::invariant, "missing detour variable for X" + std::to_string(j));
  }
  return out;
}

ExponentMatrix make_exponent_matrix(std::vector<std::vector<int>> lambda) {
  int n = (int)lambda.size();
  if (n < 1) throw Error(ErrorKind::precondition, "empty exponent matrix");
  for (const auto& row : lambda)
    if ((int)row.size() != n) throw Error(ErrorKind::precondition, "matrix is not square");
  for (int i = 0; i < n; ++i) {
    if (lambda[i][i] != 0) throw Error(ErrorKind::precondition, "diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (lambda[i][j] < 0) throw Error(ErrorKind::precondition, "negative entry");
      if (i != j && lambda[i][j] + lambda[j][i] < 1)
        throw Error(ErrorKind::precondition,
                    "value-zero cycle: lambda[i][j] + lambda[j][i] must be >= 1 off the diagonal");
      for (int k = 0; k < n; ++k)
        if (lambda[i][j] + lambda[j][k] < lambda[i][k])
          throw Error(ErrorKind::precondition, "order condition fails");
    }
  }
  return {n, std::move(lambda)};
}

ExponentMatrix parse_exponent_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<int> row;
    int x;
    while (ls >> x) row.push_back(x);
    if (!row.empty()) rows.push_back(row);
  }
  return make_exponent_matrix(std::move(rows));
}

Presentation tiled_order_presentation(const ExponentMatrix& mat) {
  int n = mat.n;
  const auto& l = mat.lambda;
  std::ostringstream text;
  text << "vertices:";
  for (int i = 1; i <= n; ++i) text << " " << i;
  text << "\n";
  std::map<std::pair<int, int>, int> value;  // arrow endpoints -> value
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      bool irreducible = true;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j && l[i][j] >= l[i][k] + l[k][j]) irreducible = false;
      if (!irreducible) continue;
      text << "arrow a" << i + 1 << "_" << j + 1 << ": " << i + 1 << " -> " << j + 1 << "\n";
      value[{i, j}] = l[i][j];
    }
  // a path is nonzero exactly when its value meets the matrix entry; find the
  // nilpotency bound by leveled search over nonzero paths
  Presentation skeleton = parse_presentation(text.str() + "loewy: 2\n");
  const Quiver& q = skeleton.quiver;
  auto arrow_value = [&](int a) {
    int s = std::stoi(q.vertex_name(q.arrow(a).source)) - 1;
    int t = std::stoi(q.vertex_name(q.arrow(a).target)) - 1;
    return value.at({s, t});
  };
  auto path_value = [&](const Path& p) {
    int v = 0;
    for (int a : p.arrows) v += arrow_value(a);
    return v;
  };
  auto path_lambda = [&](const Path& p) {
    int s = std::stoi(q.vertex_name(source(q, p))) - 1;
    int t = std::stoi(q.vertex_name(target(q, p))) - 1;
    return l[s][t];
  };
  int longest = 0;
  {
    std::vector<Path> level;
    for (int v = 0; v < n; ++v) level.push_back(Path{v, {}});
    while (!level.empty() && longest < n * 64) {
      std::vector<Path> next;
      for (const Path& p : level)
        for (int a : q.arrows_from(target(q, p))) {
          Path e = p;
          e.arrows.push_back(a);
          if (path_value(e) == path_lambda(e)) next.push_back(e);
        }
      if (next.empty()) break;
      ++longest;
      level = std::move(next);
    }
  }
  int L = std::max(2, longest + 1);

  std::ostringstream rels;
  std::vector<Path> zero_gens;
  bool any_rel = false;
  {
    std::vector<Path> all;
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (const Path& p : enumerate_paths(q, s, t, 2, L - 1)) all.push_back(p);
    std::sort(all.begin(), all.end(),
              [&](const Path& a, const Path& b) { return path_less(q, a, b); });
    std::map<std::pair<int, int>, Path> representative;
    for (const Path& p : all) {
      bool contains_zero = false;
      for (const Path& g : zero_gens)
        if (is_subpath(q, g, p)) contains_zero = true;
      if (contains_zero) continue;
      if (path_value(p) > path_lambda(p)) {
        rels << render_path(q, p) << "\n";
        any_rel = true;
        zero_gens.push_back(p);
        continue;
      }
      // value attained: identify with the canonical parallel representative
      auto key = std::make_pair(source(q, p), target(q, p));
      auto it = representative.find(key);
      if (it == representative.end()) {
        representative[key] = p;
      } else {
        rels << render_path(q, p) << " - " << render_path(q, it->second) << "\n";
        any_rel = true;
      }
    }
  }
  std::string full = text.str() + "loewy: " + std::to_string(L) + "\n";
  if (any_rel) full += "relations:\n" + rels.str();
  return parse_presentation(full);
}

}  // namespace uniserial
