#include "uniserial/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace uniserial {

std::string VarKey::str() const {
  if (kind == Kind::aux) {
    if (arrow == "t") return "t";
    return arrow + "[" + std::to_string(index) + "]";
  }
  return "X[" + arrow + "," + std::to_string(u_len) + "," + std::to_string(index) + "]";
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  // scan variables from the highest down; larger exponent there wins
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  while (ia != a.rend() && ib != b.rend()) {
    if (!(ia->first == ib->first)) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ia == a.rend() && ib != b.rend();
}

std::string monomial_str(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += '*';
    s += v.str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

Polynomial Polynomial::variable(const VarKey& v) {
  Polynomial p;
  Monomial m;
  m[v] = 1;
  p.terms_[m] = 1;
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw Error(ErrorKind::evaluation, "polynomial is not constant");
  return terms_.begin()->second;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

void Polynomial::set(const Monomial& m, const Rational& c) {
  if (c == 0)
    terms_.erase(m);
  else
    terms_[m] = c;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        Rational c = c1 * c2;
        if (c != 0) r.terms_[m] = c;
      } else {
        it->second += c1 * c2;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

Rational Polynomial::eval(const std::map<VarKey, Rational>& point) const {
  Rational out = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [v, e] : m) {
      auto it = point.find(v);
      if (it == point.end())
        throw Error(ErrorKind::evaluation, "evaluation point misses variable " + v.str());
      for (int k = 0; k < e; ++k) term *= it->second;
    }
    out += term;
  }
  return out;
}

Polynomial Polynomial::substitute(const std::map<VarKey, Rational>& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    Monomial rest;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end())
        rest[v] = e;
      else
        for (int k = 0; k < e; ++k) coeff *= it->second;
    }
    if (coeff == 0) continue;
    auto it = out.terms_.find(rest);
    if (it == out.terms_.end())
      out.terms_[rest] = coeff;
    else {
      it->second += coeff;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Polynomial Polynomial::substitute(const VarKey& v, const Polynomial& by) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    int e = 0;
    auto it = rest.find(v);
    if (it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    Polynomial term;
    term.terms_[rest] = c;
    for (int k = 0; k < e; ++k) term = term * by;
    out += term;
  }
  return out;
}

std::vector<VarKey> Polynomial::variables() const {
  std::set<VarKey> seen;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) seen.insert(v);
  return {seen.begin(), seen.end()};
}

bool Polynomial::mentions(const VarKey& v) const {
  for (const auto& [m, c] : terms_)
    if (m.count(v)) return true;
  return false;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::linear_coefficient(const VarKey& v) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(v);
    if (it == m.end()) continue;
    if (it->second != 1)
      throw Error(ErrorKind::unsupported, "degree in " + v.str() + " exceeds 1");
    Monomial rest = m;
    rest.erase(v);
    out.terms_[rest] = c;
  }
  return out;
}

Polynomial Polynomial::drop_variable(const VarKey& v) const {
  Polynomial out;
  for (const auto& [m, c] : terms_)
    if (!m.count(v)) out.terms_[m] = c;
  return out;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Monomial lead;
  bool first = true;
  for (const auto& [m, c] : terms_)
    if (first || monomial_less(lead, m)) {
      lead = m;
      first = false;
    }
  Rational lc = terms_.at(lead);
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = c / lc;
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Monomial, Rational>*> ordered;
  for (const auto& t : terms_) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return monomial_less(b->first, a->first); });
  std::ostringstream out;
  bool first = true;
  for (auto* t : ordered) {
    Rational c = t->second;
    bool neg = c < 0;
    Rational abs = neg ? Rational(-c) : c;
    if (first)
      out << (neg ? "-" : "");
    else
      out << (neg ? " - " : " + ");
    first = false;
    if (t->first.empty())
      out << to_string(abs);
    else if (abs == 1)
      out << monomial_str(t->first);
    else
      out << to_string(abs) << '*' << monomial_str(t->first);
  }
  return out.str();
}

bool occurs(const VarKey& v, const std::vector<Polynomial>& polys) {
  for (const auto& p : polys)
    if (p.mentions(v)) return true;
  return false;
}

TriangulateResult linear_triangulate(const std::vector<Polynomial>& polys,
                                     const std::vector<VarKey>& vars) {
  for (const auto& p : polys)
    if (p.degree() > 1)
      throw Error(ErrorKind::unsupported, "linear_triangulate: nonlinear input " + p.str());

  // rows as dense vectors over the ambient variable list
  size_t n = vars.size();
  std::vector<std::vector<Rational>> rows;  // n coeffs + rhs
  for (const auto& p : polys) {
    std::vector<Rational> row(n + 1, Rational(0));
    for (const auto& [m, c] : p.terms()) {
      if (m.empty()) {
        row[n] -= c;  // constants move to the rhs
        continue;
      }
      const VarKey& v = m.begin()->first;
      auto it = std::lower_bound(vars.begin(), vars.end(), v);
      if (it == vars.end() || !(*it == v))
        throw Error(ErrorKind::evaluation, "variable " + v.str() + " outside ambient set");
      row[it - vars.begin()] += c;
    }
    rows.push_back(std::move(row));
  }

  TriangulateResult res;
  size_t rank = 0;
  std::vector<int> pivot_of_col(n, -1);
  for (size_t col = 0; col < n && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Rational d = rows[rank][col];
    for (auto& x : rows[rank]) x /= d;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (size_t k = 0; k <= n; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivot_of_col[col] = (int)rank;
    ++rank;
  }
  for (size_t r = rank; r < rows.size(); ++r)
    if (rows[r][n] != 0) {
      res.consistent = false;
      res.contradiction = rows[r][n];
      return res;
    }

  for (size_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] < 0) {
      res.free.push_back(vars[col]);
      continue;
    }
    const auto& row = rows[pivot_of_col[col]];
    bool unique = true;
    LinearRow lr;
    lr.constant = row[n];
    for (size_t k = 0; k < n; ++k)
      if (row[k] != 0) {
        lr.coeffs[vars[k]] = row[k];
        if (k != col) unique = false;
      }
    res.reduced.push_back(lr);
    if (unique) res.forced[vars[col]] = row[n];
  }
  return res;
}

ConsistencyResult solve_consistency(const LinearSystem& sys) {
  std::set<VarKey> seen;
  for (const auto& r : sys.rows)
    for (const auto& [v, c] : r.coeffs)
      if (c != 0) seen.insert(v);
  std::vector<VarKey> vars(seen.begin(), seen.end());
  std::vector<Polynomial> polys;
  for (const auto& r : sys.rows) {
    Polynomial p(-r.constant);
    for (const auto& [v, c] : r.coeffs)
      if (c != 0) p += Polynomial::variable(v) * c;
    polys.push_back(p);
  }
  TriangulateResult tri = linear_triangulate(polys, vars);
  ConsistencyResult out;
  if (!tri.consistent) {
    out.consistent = false;
    out.contradiction = tri.contradiction;
    return out;
  }
  out.consistent = true;
  // witness: free unknowns zero, pivots from the reduced rows
  std::map<VarKey, Rational> w;
  for (const auto& v : vars) w[v] = 0;
  for (const auto& v : tri.free) w[v] = 0;
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
  out.witness = w;
  return out;
}

std::optional<Polynomial> parametric_contradiction(const std::vector<Polynomial>& rows_in,
                                                   const std::vector<VarKey>& vars) {
  std::vector<Polynomial> rows = rows_in;
  std::vector<bool> used(rows.size(), false);
  for (const VarKey& v : vars) {
    int pivot = -1;
    for (size_t r = 0; r < rows.size(); ++r)
      if (!used[r] && rows[r].mentions(v)) {
        pivot = (int)r;
        break;
      }
    if (pivot < 0) continue;
    used[pivot] = true;
    Polynomial pc = rows[pivot].linear_coefficient(v);
    for (size_t r = 0; r < rows.size(); ++r) {
      if ((int)r == pivot || !rows[r].mentions(v)) continue;
      Polynomial rc = rows[r].linear_coefficient(v);
      rows[r] = rows[r] * pc - rows[pivot] * rc;
    }
  }
  for (size_t r = 0; r < rows.size(); ++r) {
    if (used[r] || rows[r].is_zero()) continue;
    bool mentions_main = false;
    for (const VarKey& v : vars)
      if (rows[r].mentions(v)) mentions_main = true;
    if (!mentions_main) return rows[r];
  }
  return std::nullopt;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  long steps = 0;
  for (Integer d = 1; d * d <= n; ++d) {
    if (++steps > 2000000)
      throw Error(ErrorKind::unsupported, "divisor enumeration exceeds the search budget");
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& poly, const VarKey& v) {
  // dense integer coefficients a_0..a_d in v
  int d = 0;
  for (const auto& [m, c] : poly.terms()) {
    int e = 0;
    for (const auto& [var, exp] : m) {
      if (var == v)
        e = exp;
      else
        throw Error(ErrorKind::unsupported, "rational_roots: multivariate input");
    }
    d = std::max(d, e);
  }
  std::vector<Rational> coeffs(d + 1, Rational(0));
  for (const auto& [m, c] : poly.terms()) {
    int e = m.empty() ? 0 : m.begin()->second;
    coeffs[e] = c;
  }
  Integer lcm = 1;
  for (const auto& c : coeffs) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  std::vector<Integer> a(d + 1);
  for (int i = 0; i <= d; ++i) a[i] = numerator(Rational(coeffs[i] * lcm));

  std::vector<Rational> roots;
  int low = 0;
  while (low <= d && a[low] == 0) ++low;
  if (low > d) throw Error(ErrorKind::evaluation, "rational_roots: zero polynomial");
  if (low > 0) roots.push_back(0);
  if (low == d) {
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  auto eval_at = [&](const Rational& x) {
    Rational acc = 0;
    for (int i = d; i >= low; --i) acc = acc * x + Rational(a[i]);
    return acc;
  };
  for (const Integer& p : positive_divisors(a[low]))
    for (const Integer& q : positive_divisors(a[d])) {
      Rational cand(p, q);
      if (eval_at(cand) == 0) roots.push_back(cand);
      if (eval_at(-cand) == 0) roots.push_back(-cand);
    }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace uniserial
