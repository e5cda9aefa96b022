#pragma once

#include <string>
#include <vector>

#include "uniserial/poly.hpp"
#include "uniserial/presentation.hpp"

namespace uniserial {

/// Polynomials f_1..f_M over plain variables X1..Xm in which every variable
/// occurs to a power <= 1 per monomial. Multilinearity is enforced here.
struct MultilinearSystem {
  int var_count = 0;
  std::vector<Polynomial> polys;  // over aux keys ("X", j)
};

MultilinearSystem make_multilinear(int var_count, std::vector<Polynomial> polys);

/// Parses:  optional `vars: m` line, then one polynomial per line, e.g.
/// `X1*X2 - 1`. The header is required when the list of polynomials is empty.
MultilinearSystem parse_multilinear(const std::string& text);

struct RealizedVariety {
  Presentation pres;
  Path mast;
  /// X_j of the input corresponds to this detour variable on the mast.
  std::vector<VarKey> var_of_input;
};

/// The ladder-of-loops construction: a presentation whose variety over the
/// designated mast is cut out by exactly the input system (variable for
/// variable), with a bijective parametrization.
RealizedVariety realize_variety(const MultilinearSystem& sys);

/// n x n nonnegative integers, zero diagonal, triangle condition
/// l[i][j] + l[j][k] >= l[i][k], and l[i][j] + l[j][i] >= 1 off the diagonal
/// (so no cycle has value zero).
struct ExponentMatrix {
  int n = 0;
  std::vector<std::vector<int>> lambda;
};

ExponentMatrix make_exponent_matrix(std::vector<std::vector<int>> lambda);
ExponentMatrix parse_exponent_matrix(const std::string& text);

/// The residue algebra of a tiled order: arrows are the irreducible values,
/// relations kill value-increasing paths and identify equal-value parallels.
Presentation tiled_order_presentation(const ExponentMatrix& lambda);

}  // namespace uniserial
