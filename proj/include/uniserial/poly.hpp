#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uniserial/rational.hpp"

namespace uniserial {

/// Variable identity. Detour variables carry (arrow, len(u), index i) plus
/// the length of the target subpath v_i, which drives the canonical order
/// (shorter target subpath first, then shorter u, then arrow name).
/// Auxiliary unknowns (the Z_j of fiber systems, the probe parameter t)
/// share the key space under a reserved tag.
struct VarKey {
  enum class Kind : int { detour = 0, aux = 1 };
  Kind kind = Kind::detour;
  std::string arrow;  // detour arrow name; for aux, a tag such as "Z" or "t"
  int u_len = 0;
  int index = 1;
  int v_len = 0;

  static VarKey aux(const std::string& tag, int index) {
    VarKey k;
    k.kind = Kind::aux;
    k.arrow = tag;
    k.index = index;
    return k;
  }

  auto ordering() const { return std::tie(kind, v_len, u_len, arrow, index); }
  bool operator<(const VarKey& o) const { return ordering() < o.ordering(); }
  bool operator==(const VarKey& o) const { return ordering() == o.ordering(); }
  std::string str() const;  // canonical text: X[arrow,u_len,i] / Z[j] / t
};

/// Exponent vector, positive exponents only.
using Monomial = std::map<VarKey, int>;

int total_degree(const Monomial& m);
/// Graded order; ties broken on the highest variable with differing exponent.
bool monomial_less(const Monomial& a, const Monomial& b);
std::string monomial_str(const Monomial& m);

/// Sparse polynomial over the rationals. No zero coefficients are stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  static Polynomial variable(const VarKey& v);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  int degree() const;
  /// Total degree counting only variables for which `count` returns true.
  template <class Pred>
  int degree_where(Pred count) const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int t = 0;
      for (const auto& [v, e] : m)
        if (count(v)) t += e;
      d = std::max(d, t);
    }
    return d;
  }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  /// Exact evaluation; every occurring variable must be covered.
  Rational eval(const std::map<VarKey, Rational>& point) const;
  /// Substitutes values for a subset of the variables.
  Polynomial substitute(const std::map<VarKey, Rational>& values) const;
  /// Replaces one variable by a polynomial.
  Polynomial substitute(const VarKey& v, const Polynomial& by) const;

  std::vector<VarKey> variables() const;
  bool mentions(const VarKey& v) const;
  Rational coefficient(const Monomial& m) const;
  /// Coefficient of v in a polynomial of degree <= 1 in v.
  Polynomial linear_coefficient(const VarKey& v) const;
  /// The terms not involving v at all.
  Polynomial drop_variable(const VarKey& v) const;

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  void set(const Monomial& m, const Rational& c);

  /// Leading coefficient normalized to +1 (defining sets are emitted this way).
  Polynomial monic() const;
  std::string str() const;

 private:
  std::map<Monomial, Rational> terms_;
};

/// True iff v occurs with positive exponent in some polynomial of the list.
bool occurs(const VarKey& v, const std::vector<Polynomial>& polys);

/// One linear equation sum(coeff * var) = constant.
struct LinearRow {
  std::map<VarKey, Rational> coeffs;
  Rational constant;
};

struct LinearSystem {
  std::vector<LinearRow> rows;
};

struct TriangulateResult {
  bool consistent = true;
  /// When inconsistent: a derived row 0 = c with c != 0.
  Rational contradiction;
  /// Variables forced to a unique value.
  std::map<VarKey, Rational> forced;
  /// Non-pivot variables (free), in canonical order.
  std::vector<VarKey> free;
  /// Reduced rows (pivot variable first), for parametrized enumeration.
  std::vector<LinearRow> reduced;
};

/// Exact Gaussian elimination of total-degree-<=1 polynomials (= 0 each) in
/// the given ambient variable list. Throws on nonlinear input.
TriangulateResult linear_triangulate(const std::vector<Polynomial>& polys,
                                     const std::vector<VarKey>& vars);

struct ConsistencyResult {
  bool consistent = false;
  std::map<VarKey, Rational> witness;  // satisfies every row exactly
  Rational contradiction;              // when inconsistent
};

/// Exact decision with witness (free unknowns set to zero).
ConsistencyResult solve_consistency(const LinearSystem& sys);

/// Fraction-free elimination of rows that are linear in `vars` with
/// coefficients that may involve other variables (one rational parameter in
/// practice). Returns a certificate polynomial (a combination of the input
/// rows, free of `vars`) when the system is inconsistent over the fraction
/// field, or nothing when it is consistent.
std::optional<Polynomial> parametric_contradiction(const std::vector<Polynomial>& rows,
                                                   const std::vector<VarKey>& vars);

/// All rational roots of a nonzero univariate polynomial in `v`.
std::vector<Rational> rational_roots(const Polynomial& poly, const VarKey& v);

}  // namespace uniserial
