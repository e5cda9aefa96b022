#include "uniserial/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace uniserial {

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  throw Error(ErrorKind::syntax, "line " + std::to_string(line) + ": " + msg);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

// Longest walk in the quiver avoiding every generator as a contiguous arrow
// sequence; -1 when walks of unbounded length exist. States are the proper
// prefixes of the generators (suffix-tracking automaton).
int longest_generator_avoiding_walk(const Quiver& q, const std::vector<Path>& gens) {
  std::vector<std::vector<int>> prefixes;  // arrow sequences
  prefixes.push_back({});
  for (const Path& g : gens)
    for (int len = 1; len < g.length(); ++len)
      prefixes.emplace_back(g.arrows.begin(), g.arrows.begin() + len);
  std::sort(prefixes.begin(), prefixes.end());
  prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());

  auto is_full_gen = [&](const std::vector<int>& seq) {
    for (const Path& g : gens)
      if (seq == g.arrows) return true;
    return false;
  };
  auto state_of = [&](const std::vector<int>& seq) -> int {
    // longest suffix of seq that is a listed prefix
    for (int start = 0; start <= (int)seq.size(); ++start) {
      std::vector<int> suf(seq.begin() + start, seq.end());
      auto it = std::lower_bound(prefixes.begin(), prefixes.end(), suf);
      if (it != prefixes.end() && *it == suf) return (int)(it - prefixes.begin());
    }
    return 0;  // empty prefix always listed
  };

  int P = (int)prefixes.size();
  int V = (int)q.vertices.size();
  auto node = [&](int v, int s) { return v * P + s; };
  int N = V * P;
  // memoized longest path with cycle detection
  std::vector<int> best(N, -2);  // -2 unvisited, -3 in progress
  std::function<int(int)> dfs = [&](int n) -> int {
    if (best[n] == -3) throw Error(ErrorKind::invariant, "unbounded");
    if (best[n] >= 0) return best[n];
    best[n] = -3;
    int v = n / P, s = n % P;
    int out = 0;
    for (int a : q.arrows_from(v)) {
      std::vector<int> seq = prefixes[s];
      seq.push_back(a);
      bool dead = false;
      for (int start = 0; start < (int)seq.size() && !dead; ++start)
        if (is_full_gen(std::vector<int>(seq.begin() + start, seq.end()))) dead = true;
      if (dead) continue;
      out = std::max(out, 1 + dfs(node(q.arrow(a).target, state_of(seq))));
    }
    best[n] = out;
    return out;
  };
  int longest = 0;
  try {
    for (int v = 0; v < V; ++v) longest = std::max(longest, dfs(node(v, 0)));
  } catch (const Error&) {
    return -1;
  }
  return longest;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      auto last = raw.find_last_not_of(" \t\r");
      lines.push_back({n, raw.substr(first, last - first + 1)});
    }
  }

  Presentation p;
  bool have_vertices = false, have_loewy = false, in_relations = false;
  std::vector<Line> relation_lines;

  std::vector<std::string> vertex_names;
  struct RawArrow {
    std::string name, src, tgt;
    int line;
  };
  std::vector<RawArrow> raw_arrows;

  for (const Line& ln : lines) {
    if (in_relations) {
      relation_lines.push_back(ln);
      continue;
    }
    if (ln.text.rfind("vertices:", 0) == 0) {
      if (have_vertices) syntax_error(ln.number, "duplicate vertices: line");
      vertex_names = split_ws(ln.text.substr(9));
      if (vertex_names.empty()) syntax_error(ln.number, "empty vertex set");
      for (const auto& v : vertex_names)
        if (!valid_name(v)) syntax_error(ln.number, "bad vertex name '" + v + "'");
      have_vertices = true;
    } else if (ln.text.rfind("arrow ", 0) == 0) {
      if (!have_vertices) syntax_error(ln.number, "arrow before vertices:");
      std::string rest = ln.text.substr(6);
      auto colon = rest.find(':');
      if (colon == std::string::npos) syntax_error(ln.number, "expected 'arrow <name>: <src> -> <tgt>'");
      std::string name = rest.substr(0, colon);
      while (!name.empty() && name.back() == ' ') name.pop_back();
      auto ends = split_ws(rest.substr(colon + 1));
      if (ends.size() != 3 || ends[1] != "->")
        syntax_error(ln.number, "expected 'arrow <name>: <src> -> <tgt>'");
      if (!valid_name(name)) syntax_error(ln.number, "bad arrow name '" + name + "'");
      raw_arrows.push_back({name, ends[0], ends[2], ln.number});
    } else if (ln.text.rfind("loewy:", 0) == 0) {
      if (have_loewy) syntax_error(ln.number, "duplicate loewy: line");
      auto toks = split_ws(ln.text.substr(6));
      if (toks.size() != 1) syntax_error(ln.number, "expected 'loewy: <L>'");
      try {
        p.loewy = std::stoi(toks[0]);
      } catch (...) {
        syntax_error(ln.number, "bad loewy bound '" + toks[0] + "'");
      }
      if (p.loewy < 2) syntax_error(ln.number, "loewy bound must be >= 2");
      have_loewy = true;
    } else if (ln.text == "relations:") {
      in_relations = true;
    } else {
      syntax_error(ln.number, "unrecognized line '" + ln.text + "'");
    }
  }
  if (!have_vertices) throw Error(ErrorKind::syntax, "missing vertices: line");

  // build the quiver (sorted, checked)
  {
    std::vector<std::string> sorted = vertex_names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::syntax, "duplicate vertex name");
    p.quiver.vertices = sorted;
    std::sort(raw_arrows.begin(), raw_arrows.end(),
              [](const RawArrow& a, const RawArrow& b) { return a.name < b.name; });
    for (size_t i = 0; i + 1 < raw_arrows.size(); ++i)
      if (raw_arrows[i].name == raw_arrows[i + 1].name)
        syntax_error(raw_arrows[i + 1].line, "duplicate arrow name '" + raw_arrows[i].name + "'");
    for (const auto& ra : raw_arrows) {
      int s = p.quiver.vertex_id(ra.src), t = p.quiver.vertex_id(ra.tgt);
      if (s < 0) syntax_error(ra.line, "unknown vertex '" + ra.src + "'");
      if (t < 0) syntax_error(ra.line, "unknown vertex '" + ra.tgt + "'");
      p.quiver.arrows.push_back({ra.name, s, t});
    }
  }

  // relations
  for (const Line& ln : relation_lines) {
    // split into signed terms; '*' binds a coefficient to the first arrow
    std::string s = ln.text;
    for (char& c : s)
      if (c == '\t') c = ' ';
    std::vector<std::pair<int, std::string>> terms;  // sign, body
    {
      int sign = +1;
      std::string cur;
      auto flush = [&](int next_sign) {
        auto toks = split_ws(cur);
        if (!toks.empty())
          terms.push_back({sign, cur});
        else if (!terms.empty() || !cur.empty())
          syntax_error(ln.number, "empty relation term");
        cur.clear();
        sign = next_sign;
      };
      for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '+' || s[i] == '-') {
          bool at_term_start = split_ws(cur).empty();
          if (at_term_start && s[i] == '-' && terms.empty() && cur.empty() && i == 0) {
            sign = -1;  // leading minus
            continue;
          }
          if (at_term_start) syntax_error(ln.number, "misplaced sign");
          flush(s[i] == '-' ? -1 : +1);
        } else {
          cur += s[i];
        }
      }
      flush(+1);
    }
    if (terms.empty()) syntax_error(ln.number, "empty relation");

    Relation rel;
    for (auto& [sign, body] : terms) {
      Rational coeff = 1;
      std::string rest = body;
      auto star = body.find('*');
      if (star != std::string::npos) {
        coeff = parse_rational(split_ws(body.substr(0, star)).empty()
                                   ? ""
                                   : split_ws(body.substr(0, star))[0]);
        rest = body.substr(star + 1);
      }
      coeff *= sign;
      if (coeff == 0) syntax_error(ln.number, "zero coefficient");
      auto toks = split_ws(rest);
      if (toks.empty()) syntax_error(ln.number, "empty path in relation");
      std::string joined;
      for (const auto& t : toks) joined += (joined.empty() ? "" : " ") + t;
      Path path;
      try {
        path = parse_path(p.quiver, joined);
      } catch (const Error& e) {
        syntax_error(ln.number, e.what());
      }
      if (path.length() < 2)
        syntax_error(ln.number, "relation term of length " + std::to_string(path.length()) +
                                    " (admissible relations need length >= 2)");
      rel.terms.push_back({coeff, path});
    }
    // parallelism
    int s0 = source(p.quiver, rel.terms[0].second), t0 = target(p.quiver, rel.terms[0].second);
    for (auto& [c, q] : rel.terms)
      if (source(p.quiver, q) != s0 || target(p.quiver, q) != t0)
        syntax_error(ln.number, "non-parallel relation terms");
    // merge duplicate paths
    Relation merged;
    for (auto& [c, q] : rel.terms) {
      bool found = false;
      for (auto& [mc, mq] : merged.terms)
        if (mq == q) {
          mc += c;
          found = true;
        }
      if (!found) merged.terms.push_back({c, q});
    }
    std::erase_if(merged.terms, [](auto& t) { return t.first == 0; });
    if (merged.terms.empty()) {
      p.warnings.push_back("line " + std::to_string(ln.number) + ": relation cancels to zero, dropped");
      continue;
    }
    p.relations.push_back(std::move(merged));
  }

  // monomial flag from the raw relation list
  p.monomial = true;
  for (const auto& r : p.relations)
    if (r.terms.size() != 1) p.monomial = false;

  if (!have_loewy) {
    if (!p.monomial)
      throw Error(ErrorKind::syntax,
                  "non-monomial input requires an explicit 'loewy:' bound");
    std::vector<Path> gens;
    for (const auto& r : p.relations) gens.push_back(r.terms[0].second);
    int longest = longest_generator_avoiding_walk(p.quiver, gens);
    if (longest < 0)
      throw Error(ErrorKind::syntax,
                  "quotient is infinite-dimensional: a cycle avoids every generator; "
                  "declare 'loewy:' only if you meant a truncation");
    p.loewy = std::max(2, longest + 1);
  }

  // drop redundant terms of length >= loewy
  std::vector<Relation> kept;
  for (auto& r : p.relations) {
    Relation nr;
    for (auto& [c, q] : r.terms) {
      if (q.length() >= p.loewy)
        p.warnings.push_back("relation term '" + render_path(p.quiver, q) +
                             "' has length >= the nilpotency bound, dropped");
      else
        nr.terms.push_back({c, q});
    }
    if (!nr.terms.empty()) kept.push_back(std::move(nr));
  }
  p.relations = std::move(kept);
  p.monomial = true;
  for (const auto& r : p.relations)
    if (r.terms.size() != 1) p.monomial = false;

  return p;
}

std::string serialize(const Presentation& p) {
  std::ostringstream out;
  out << "# paths are written in composition order: the rightmost arrow acts first\n";
  out << "vertices:";
  for (const auto& v : p.quiver.vertices) out << ' ' << v;
  out << '\n';
  for (const auto& a : p.quiver.arrows)
    out << "arrow " << a.name << ": " << p.quiver.vertex_name(a.source) << " -> "
        << p.quiver.vertex_name(a.target) << '\n';
  out << "loewy: " << p.loewy << '\n';
  if (!p.relations.empty()) {
    out << "relations:\n";
    for (const auto& r : p.relations) {
      bool first = true;
      for (const auto& [c, q] : r.terms) {
        Rational abs = c < 0 ? Rational(-c) : c;
        if (first) {
          if (c < 0) out << "-";
        } else {
          out << (c < 0 ? " - " : " + ");
        }
        if (abs != 1) out << to_string(abs) << '*';
        out << render_path(p.quiver, q);
        first = false;
      }
      out << '\n';
    }
  }
  return out.str();
}

bool is_monomial(const Presentation& p) { return p.monomial; }

bool monomial_contains(const Presentation& p, const Path& q) {
  if (!p.monomial)
    throw Error(ErrorKind::unsupported,
                "ideal membership is only decided for monomial presentations");
  if (q.length() >= p.loewy) return true;
  for (const auto& r : p.relations)
    if (is_subpath(p.quiver, r.terms[0].second, q)) return true;
  return false;
}

std::vector<Path> nonzero_paths(const Presentation& p, int maxlen) {
  if (!p.monomial)
    throw Error(ErrorKind::unsupported,
                "nonzero_paths requires a monomial presentation (general masthood is a "
                "variety question)");
  int cap = std::min(maxlen, p.loewy - 1);
  std::vector<Path> out;
  for (int v = 0; v < (int)p.quiver.vertices.size(); ++v)
    for (int w = 0; w < (int)p.quiver.vertices.size(); ++w)
      for (const Path& q : enumerate_paths(p.quiver, v, w, 0, cap))
        if (!monomial_contains(p, q)) out.push_back(q);
  std::stable_sort(out.begin(), out.end(),
                   [&](const Path& a, const Path& b) { return path_less(p.quiver, a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Presentation opposite_presentation(const Presentation& p) {
  Presentation o;
  o.loewy = p.loewy;
  o.quiver.vertices = p.quiver.vertices;
  for (const auto& a : p.quiver.arrows) o.quiver.arrows.push_back({a.name, a.target, a.source});
  for (const auto& r : p.relations) {
    Relation nr;
    for (const auto& [c, q] : r.terms) {
      Path rq;
      rq.arrows.assign(q.arrows.rbegin(), q.arrows.rend());
      rq.base = p.quiver.arrow(q.arrows.back()).target;  // old target becomes start
      nr.terms.push_back({c, rq});
    }
    o.relations.push_back(std::move(nr));
  }
  o.monomial = p.monomial;
  return o;
}

bool structurally_equal(const Presentation& a, const Presentation& b) {
  if (a.quiver.vertices != b.quiver.vertices) return false;
  if (a.quiver.arrows.size() != b.quiver.arrows.size()) return false;
  for (size_t i = 0; i < a.quiver.arrows.size(); ++i) {
    const Arrow &x = a.quiver.arrows[i], &y = b.quiver.arrows[i];
    if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
  }
  if (a.loewy != b.loewy || a.relations.size() != b.relations.size()) return false;
  for (size_t i = 0; i < a.relations.size(); ++i) {
    const auto &r = a.relations[i], &s = b.relations[i];
    if (r.terms.size() != s.terms.size()) return false;
    for (size_t j = 0; j < r.terms.size(); ++j)
      if (r.terms[j].first != s.terms[j].first || !(r.terms[j].second == s.terms[j].second))
        return false;
  }
  return true;
}

}  // namespace uniserial
